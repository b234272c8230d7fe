//! Numerical kernels: the Macdonald function K0, adaptive quadrature with
//! logarithmic endpoint singularities, and bracketing root finding.
//!
//! Everything here is a pure function of its arguments.

mod bessel;
mod quadrature;
mod roots;

pub use bessel::{bessel_k0, bessel_k0_scaled, EULER_GAMMA};
pub(crate) use bessel::{k0_scaled_unchecked, k0_unchecked};
pub use quadrature::{
    integrate_finite, integrate_semi_infinite, Estimate, QuadraturePolicy, SingularEndpoints,
};
pub use roots::{find_root, scan_sign_changes, RootBracket};
