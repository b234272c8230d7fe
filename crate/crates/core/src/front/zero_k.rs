//! The degradation-free case `k = 0`.
//!
//! Without degradation there is no nontrivial stationary state: the front
//! connects `u = 0` ahead of it with unbounded growth behind it. The
//! rescaling uses `u -> a u / D`, `t -> t / D`, giving the threshold
//! `alpha = D u_c / a`, and the kernel constant `1 + v^2/4` becomes `v^2/4`.
//! The resulting speed `a / (pi u_c)` does not involve `D`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::PhysicalParams;
use crate::numerics::{integrate_semi_infinite, k0_scaled_unchecked, QuadraturePolicy};

use super::travelling::{check_point, shifted_kernel_integral};

fn require_zero_k(p: &PhysicalParams) -> Result<()> {
    p.validate()?;
    if p.is_zero_degradation() {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!(
            "the zero-degradation routines need k = 0, got k = {}",
            p.degradation
        )))
    }
}

/// Threshold of the degradation-free rescaling, `D u_c / a`.
pub fn zero_k_alpha(p: &PhysicalParams) -> Result<f64> {
    require_zero_k(p)?;
    Ok(p.diffusion * p.threshold / p.production)
}

/// Front speed without degradation, `v0 = a / (pi u_c)`.
///
/// ```
/// use linefront::{front::velocity_zero_k, model::PhysicalParams};
///
/// let p = PhysicalParams::new(7.0, 0.0, std::f64::consts::PI, 1.0).unwrap();
/// assert!((velocity_zero_k(&p).unwrap() - 1.0).abs() < 1e-15);
/// ```
pub fn velocity_zero_k(p: &PhysicalParams) -> Result<f64> {
    require_zero_k(p)?;
    Ok(p.production / (PI * p.threshold))
}

/// `integral_0^inf exp(-v s/2) K0(|v| s/2) ds - 2 pi alpha`.
///
/// For `v <= 0` the integrand does not decay and the integral diverges,
/// reported as [`Error::TailDivergence`]. For `v > 0` the root is `v = 1/(pi alpha)`.
pub fn zero_k_implicit_residual(alpha: f64, v: f64, policy: &QuadraturePolicy) -> Result<f64> {
    if !(alpha > 0.0 && alpha.is_finite()) || !v.is_finite() {
        return Err(Error::Domain {
            what: "zero-degradation residual",
            detail: format!("alpha = {alpha}, v = {v}"),
        });
    }
    let c = 0.5 * v;
    let b = c.abs();
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

/// Degradation-free front profile in physical units:
///
/// ```text
/// u(x, y) = a/(2 pi D) * integral_0^inf K0(C sqrt((x + s)^2 + y^2)) exp(-C (x + s)) ds,
/// ```
///
/// `C = v0 / (2D)`. Finite for every finite `x`, but it grows without bound
/// like `sqrt(-x)` as `x -> -inf`; far behind the front the quadrature
/// eventually fails and that failure is returned, not hidden.
pub fn front_profile_zero_k(p: &PhysicalParams, x: f64, y: f64) -> Result<f64> {
    front_profile_zero_k_with(p, x, y, &QuadraturePolicy::default())
}

pub fn front_profile_zero_k_with(
    p: &PhysicalParams,
    x: f64,
    y: f64,
    policy: &QuadraturePolicy,
) -> Result<f64> {
    check_point(x, y)?;
    let v = velocity_zero_k(p)?;
    let c = v / (2.0 * p.diffusion);
    let integral = shifted_kernel_integral(c, c, x, y, policy)?;
    Ok(p.production / (2.0 * PI * p.diffusion) * integral.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> PhysicalParams {
        PhysicalParams::new(1.0, 0.0, 2.0 * PI, 0.3).unwrap()
    }

    #[test]
    fn speed_is_independent_of_diffusion() {
        let v = velocity_zero_k(&params()).unwrap();
        assert!((v - 20.0 / 3.0).abs() < 1e-13);
        for d in [0.5, 4.0, 100.0] {
            assert_eq!(velocity_zero_k(&params().with_diffusion(d)).unwrap(), v);
        }
    }

    #[test]
    fn rejects_positive_degradation() {
        let p = params().with_degradation(1.0);
        assert!(velocity_zero_k(&p).is_err());
        assert!(front_profile_zero_k(&p, 0.0, 0.0).is_err());
    }

    #[test]
    fn threshold_at_origin() {
        let p = params();
        let u = front_profile_zero_k(&p, 0.0, 0.0).unwrap();
        assert!((u - p.threshold).abs() < 1e-9 * p.threshold);
    }

    #[test]
    fn residual_root_and_divergence() {
        let policy = QuadraturePolicy::default();
        let alpha = 0.2;
        let r = zero_k_implicit_residual(alpha, 1.0 / (PI * alpha), &policy).unwrap();
        assert!(r.abs() < 1e-9);
        for v in [0.0, -1.0] {
            assert!(matches!(
                zero_k_implicit_residual(alpha, v, &policy),
                Err(Error::TailDivergence { .. })
            ));
        }
    }

    #[test]
    fn grows_behind_the_front() {
        let p = params();
        let near = front_profile_zero_k(&p, -5.0, 0.0).unwrap();
        let far = front_profile_zero_k(&p, -10.0, 0.0).unwrap();
        assert!(far > near && near > p.threshold);
        let a = front_profile_zero_k(&p, -1.0, 0.4).unwrap();
        let b = front_profile_zero_k(&p, -1.0, -0.4).unwrap();
        assert_eq!(a, b);
    }
}
