//! Travelling fronts of the 1D piecewise-linear bistable equation
//!
//! ```text
//! u_t = D u_xx - k u + a H(u - u_c),
//! ```
//!
//! the classical counterpart of the line-production model. In the comoving
//! frame the profile is exponential on either side of the switching point:
//! `u_c exp(lambda_- x)` ahead and `a/k + (u_c - a/k) exp(lambda_+ x)` behind,
//! with `lambda_+-` the roots of `D l^2 + v l - k = 0`. The speed follows
//! from continuity of `u_x` at `x = 0`.

use crate::error::{Error, Result};
use crate::model::PhysicalParams;
use crate::numerics::{find_root, RootBracket};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalFront {
    /// Physical speed; positive when the excited state invades.
    pub velocity: f64,
    /// Growth rate behind the front, `> 0` (zero when `k = 0`).
    pub lambda_plus: f64,
    /// Decay rate ahead of the front, `< 0`.
    pub lambda_minus: f64,
}

/// Roots `(lambda_+, lambda_-)` of `D l^2 + v l - k = 0`, computed without cancellation.
pub fn characteristic_roots(diffusion: f64, degradation: f64, v: f64) -> (f64, f64) {
    let s = (v * v + 4.0 * diffusion * degradation).sqrt();
    if v >= 0.0 {
        let minus = -(v + s) / (2.0 * diffusion);
        (2.0 * degradation / (v + s), minus)
    } else {
        let plus = (s - v) / (2.0 * diffusion);
        (plus, -2.0 * degradation / (s - v))
    }
}

fn check_bistable(p: &PhysicalParams) -> Result<()> {
    p.validate()?;
    if p.is_zero_degradation() {
        return Ok(());
    }
    let excited = p.production / p.degradation;
    if excited > p.threshold {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "classical front",
            detail: format!(
                "excited state a/k = {excited} does not exceed the threshold u_c = {}",
                p.threshold
            ),
        })
    }
}

/// `u_c lambda_- - (u_c - a/k) lambda_+`, the jump of `u_x` across the switching point.
///
/// Strictly decreasing in `v`; its root is the front speed. Needs `k > 0`.
pub fn classical_matching_residual(p: &PhysicalParams, v: f64) -> Result<f64> {
    check_bistable(p)?;
    if p.is_zero_degradation() {
        return Err(Error::ZeroDegradation);
    }
    if !v.is_finite() {
        return Err(Error::Domain {
            what: "classical matching residual",
            detail: format!("v = {v}"),
        });
    }
    let (plus, minus) = characteristic_roots(p.diffusion, p.degradation, v);
    let excited = p.production / p.degradation;
    Ok(p.threshold * minus + (excited - p.threshold) * plus)
}

/// Speed and decay rates of the classical front.
///
/// For `k = 0` the speed is `sqrt(aD/u_c)`, the `k -> 0` limit of the
/// bistable family.
///
/// ```
/// use linefront::{front::classical_velocity, model::PhysicalParams};
///
/// let p = PhysicalParams::new(1.0, 0.0, 4.0, 1.0).unwrap();
/// assert_eq!(classical_velocity(&p).unwrap().velocity, 2.0);
/// ```
pub fn classical_velocity(p: &PhysicalParams) -> Result<ClassicalFront> {
    check_bistable(p)?;
    let velocity = if p.is_zero_degradation() {
        (p.production * p.diffusion / p.threshold).sqrt()
    } else {
        solve_matching(p)?
    };
    let (lambda_plus, lambda_minus) = characteristic_roots(p.diffusion, p.degradation, velocity);
    Ok(ClassicalFront {
        velocity,
        lambda_plus,
        lambda_minus,
    })
}

fn solve_matching(p: &PhysicalParams) -> Result<f64> {
    let residual = |v: f64| classical_matching_residual(p, v).unwrap_or(f64::NAN);
    let at_zero = residual(0.0);
    if at_zero == 0.0 {
        return Ok(0.0);
    }
    // the residual decreases in v: search upward from 0 if positive, downward if negative
    let direction = at_zero.signum();
    let mut step = (p.diffusion * p.degradation).sqrt().max(f64::MIN_POSITIVE);
    let mut inner = 0.0;
    let mut f_inner = at_zero;
    for _ in 0..2100 {
        let outer = direction * step;
        let f_outer = residual(outer);
        if !f_outer.is_finite() {
            break;
        }
        if f_outer.signum() != direction || f_outer == 0.0 {
            let (lo, hi, f_lo, f_hi) = if direction > 0.0 {
                (inner, outer, f_inner, f_outer)
            } else {
                (outer, inner, f_outer, f_inner)
            };
            let bracket = RootBracket::from_values(lo, hi, f_lo, f_hi)?;
            return find_root(residual, bracket, 0.0);
        }
        inner = outer;
        f_inner = f_outer;
        step *= 2.0;
    }
    Err(Error::NoBracket {
        lo: inner.min(0.0),
        hi: inner.max(0.0),
        samples: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(k: f64, uc: f64) -> PhysicalParams {
        PhysicalParams::new(1.0, k, 1.0, uc).unwrap()
    }

    #[test]
    fn roots_solve_the_quadratic() {
        for v in [-3.0, -0.1, 0.0, 0.5, 40.0] {
            let (plus, minus) = characteristic_roots(2.0, 0.7, v);
            assert!(plus > 0.0 && minus < 0.0);
            for l in [plus, minus] {
                assert!((2.0 * l * l + v * l - 0.7).abs() < 1e-12 * (1.0 + v * v));
            }
        }
    }

    #[test]
    fn symmetric_threshold_is_stationary() {
        let front = classical_velocity(&p(1.0, 0.5)).unwrap();
        assert_eq!(front.velocity, 0.0);
        assert_eq!(front.lambda_plus, -front.lambda_minus);
    }

    #[test]
    fn low_threshold_invades_high_threshold_retreats() {
        assert!(classical_velocity(&p(1.0, 0.3)).unwrap().velocity > 0.0);
        assert!(classical_velocity(&p(1.0, 0.7)).unwrap().velocity < 0.0);
    }

    #[test]
    fn monostable_limit_rejected() {
        assert!(classical_velocity(&p(1.0, 1.0)).is_err());
        assert!(classical_velocity(&p(2.0, 0.6)).is_err());
    }

    #[test]
    fn zero_k_value() {
        let front = classical_velocity(&p(0.0, 0.25)).unwrap();
        assert_eq!(front.velocity, 2.0);
        assert!(classical_matching_residual(&p(0.0, 0.25), 1.0).is_err());
    }
}
