//! Closed-form and quadrature-defined solutions of the line-production model.
//!
//! * [`FrontSolution`]: the travelling front, its speed law and profile.
//! * [`stationary_profile`]: the `x`-invariant state `exp(-|y|)/2` left behind the front.
//! * [`zero_k`]: the degradation-free limit, whose speed does not depend on `D`.
//! * [`homoclinic`]: the stationary bump produced on a finite interval.
//! * [`classical`]: the 1D piecewise-linear bistable front, for comparison.
//! * [`leading_edge_decay`]: a fit of the `exp(-gamma x)/sqrt(x)` leading edge.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{existence_domain, to_dimensionless, PhysicalParams, Regime};
use crate::numerics::{integrate_semi_infinite, k0_scaled_unchecked, QuadraturePolicy};

mod asymptotics;
pub mod classical;
pub mod homoclinic;
mod travelling;
pub mod zero_k;

pub use asymptotics::{leading_edge_decay, leading_edge_samples, DecayFit};
pub use classical::{classical_matching_residual, classical_velocity, ClassicalFront};
pub use homoclinic::{homoclinic_find, HomoclinicSolution};
pub use travelling::{
    front_profile_physical, front_profile_physical_with, rescaled_front, FrontSolution, ProfileValue,
};
pub use zero_k::{front_profile_zero_k, velocity_zero_k};

/// Dimensionless front speed `v = 2 cot(2 pi alpha)` for `0 < alpha < 1/2`.
///
/// Evaluated as `2 tan(2 pi (1/4 - alpha))`, which is exactly zero at
/// `alpha = 1/4`. Thresholds `alpha >= 1/2` admit no front and return
/// [`Error::NoSolution`] rather than a value from another branch of `cot`.
///
/// ```
/// use linefront::front::velocity_dimensionless;
///
/// assert_eq!(velocity_dimensionless(0.25).unwrap(), 0.0);
/// assert!((velocity_dimensionless(0.125).unwrap() - 2.0).abs() < 1e-14);
/// assert!(velocity_dimensionless(0.6).is_err());
/// ```
pub fn velocity_dimensionless(alpha: f64) -> Result<f64> {
    if existence_domain(alpha)? == Regime::NoSolution {
        return Err(Error::NoSolution { alpha });
    }
    Ok(2.0 * (2.0 * PI * (0.25 - alpha)).tan())
}

/// Front speed in physical units, `2 sqrt(kD) cot(2 pi u_c sqrt(kD) / a)`.
pub fn velocity_physical(p: &PhysicalParams) -> Result<f64> {
    let alpha = to_dimensionless(p)?.alpha;
    Ok((p.degradation * p.diffusion).sqrt() * velocity_dimensionless(alpha)?)
}

/// `integral_0^inf exp(-v s/2) K0(s sqrt(1 + v^2/4)) ds - 2 pi alpha`.
///
/// Zero exactly when `v` is the speed of the front with threshold `alpha`;
/// this is the quadrature route to the speed, independent of the closed form.
pub fn velocity_implicit_residual(alpha: f64, v: f64, policy: &QuadraturePolicy) -> Result<f64> {
    if !(alpha > 0.0 && alpha.is_finite()) || !v.is_finite() {
        return Err(Error::Domain {
            what: "implicit velocity residual",
            detail: format!("alpha = {alpha}, v = {v}"),
        });
    }
    let c = 0.5 * v;
    let b = c.hypot(1.0);
    let rate = b + c;
    let integral = integrate_semi_infinite(
        |s: f64| k0_scaled_unchecked(b * s) * (-rate * s).exp(),
        0.0,
        rate,
        true,
        policy,
    )?;
    Ok(integral.value - 2.0 * PI * alpha)
}

/// The `x`-invariant stationary state `exp(-|y|)/2`.
pub fn stationary_profile(y: f64) -> f64 {
    0.5 * (-y.abs()).exp()
}

/// Decaying fundamental solution of `Lap u + v u_x - u`:
/// `K0(b sqrt(x^2 + y^2)) exp(-v x/2) / (2 pi)`.
pub fn fundamental_solution(x: f64, y: f64, v: f64) -> Result<f64> {
    let r = x.hypot(y);
    if r == 0.0 {
        return Err(Error::Domain {
            what: "fundamental solution",
            detail: "logarithmic singularity at the origin".into(),
        });
    }
    if !r.is_finite() || !v.is_finite() {
        return Err(Error::Domain {
            what: "fundamental solution",
            detail: format!("non-finite input x = {x}, y = {y}, v = {v}"),
        });
    }
    let c = 0.5 * v;
    let z = c.hypot(1.0) * r;
    Ok(k0_scaled_unchecked(z) * (-(z + c * x)).exp() / (2.0 * PI))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn velocity_examples() {
        assert!((velocity_dimensionless(0.3 / (2.0 * PI)).unwrap() - 2.0 / 0.3f64.tan()).abs() < 1e-12);
        assert!(matches!(velocity_dimensionless(0.5), Err(Error::NoSolution { .. })));
        assert!(matches!(velocity_dimensionless(0.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn physical_velocity_needs_degradation() {
        let p = PhysicalParams::new(1.0, 0.0, 1.0, 1.0).unwrap();
        assert_eq!(velocity_physical(&p), Err(Error::ZeroDegradation));
    }

    #[test]
    fn residual_examples() {
        let policy = QuadraturePolicy::default();
        assert!(velocity_implicit_residual(0.25, 0.0, &policy).unwrap().abs() < 1e-9);
        assert!(velocity_implicit_residual(0.125, 2.0, &policy).unwrap().abs() < 1e-9);
        let r = velocity_implicit_residual(0.125, 0.0, &policy).unwrap();
        assert!((r - PI / 4.0).abs() < 1e-9);
    }

    #[test]
    fn stationary_examples() {
        assert_eq!(stationary_profile(0.0), 0.5);
        assert_eq!(stationary_profile(1.0), stationary_profile(-1.0));
        assert!((stationary_profile(1.0) - 0.183_939_720_585_721_2).abs() < 1e-15);
    }

    #[test]
    fn fundamental_solution_examples() {
        assert!(fundamental_solution(0.0, 0.0, 1.0).is_err());
        let at_unit = fundamental_solution(1.0, 0.0, 0.0).unwrap();
        assert!((at_unit - 0.421_024_438_240_708_3 / (2.0 * PI)).abs() < 1e-15);
        assert_eq!(
            fundamental_solution(0.3, 0.7, 1.5).unwrap(),
            fundamental_solution(0.3, -0.7, 1.5).unwrap()
        );
    }
}
