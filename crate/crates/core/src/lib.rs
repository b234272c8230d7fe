//! Travelling fronts of a diffusing substance produced on a line above a threshold.
//!
//! The model is `u_t = D Lap u - k u + a H(u - u_c) delta(y)`: production at
//! rate `a` switches on along the line `y = 0` wherever the concentration
//! exceeds `u_c`. After rescaling everything depends on one number,
//! `alpha = (u_c/a) sqrt(kD)`, and the front speed is `2 cot(2 pi alpha)`.
//!
//! * [`numerics`]: K0, adaptive quadrature, root finding.
//! * [`model`]: parameters, rescaling, regimes.
//! * [`front`]: speed laws and exact profiles.
//! * [`simulator`]: a finite-difference check of the speed law.
//! * [`export`]: CSV and SVG output.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod acceptance;
pub mod error;
pub mod export;
pub mod front;
pub mod model;
pub mod numerics;
pub mod simulator;

pub use error::{Error, Result};
pub use front::{velocity_dimensionless, velocity_physical, FrontSolution};
pub use model::{to_dimensionless, DimensionlessParams, PhysicalParams, Regime};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/model.md")]
    mod model {}
    #[doc = include_str!("../../../book/src/numerics.md")]
    mod numerics {}
    #[doc = include_str!("../../../book/src/travelling-front.md")]
    mod travelling_front {}
    #[doc = include_str!("../../../book/src/limits.md")]
    mod limits {}
    #[doc = include_str!("../../../book/src/simulator.md")]
    mod simulator {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/acceptance.md")]
    mod acceptance {}
}
