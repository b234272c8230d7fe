use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{to_dimensionless, PhysicalParams, Profile};
use crate::numerics::{
    integrate_finite, integrate_semi_infinite, k0_scaled_unchecked, Estimate, QuadraturePolicy,
    SingularEndpoints,
};

use super::{stationary_profile, velocity_dimensionless};

/// The exact travelling front for one value of the threshold `alpha`.
///
/// In the comoving frame the profile is
///
/// ```text
/// u(x, y) = 1/(2 pi) * integral_x^inf K0(b sqrt(s^2 + y^2)) exp(-c s) ds
/// ```
///
/// with `c = v/2`, `b = sqrt(1 + c^2)` and `v = 2 cot(2 pi alpha)`. The shift
/// is fixed so that production is active exactly on `x <= 0`, i.e.
/// `u(0, 0) = alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrontSolution {
    alpha: f64,
    velocity: f64,
    b: f64,
    c: f64,
    policy: QuadraturePolicy,
}

impl FrontSolution {
    pub fn new(alpha: f64) -> Result<Self> {
        Self::with_policy(alpha, QuadraturePolicy::default())
    }

    pub fn with_policy(alpha: f64, policy: QuadraturePolicy) -> Result<Self> {
        policy.validate()?;
        let velocity = velocity_dimensionless(alpha)?;
        let c = 0.5 * velocity;
        let b = c.hypot(1.0);
        Ok(Self {
            alpha,
            velocity,
            b,
            c,
            policy,
        })
    }

    /// The front for physical parameters, in dimensionless units.
    pub fn for_params(p: &PhysicalParams) -> Result<Self> {
        Self::new(to_dimensionless(p)?.alpha)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn velocity(&self) -> f64 {
        self.velocity
    }

    /// `sqrt(1 + v^2/4)`
    pub fn b(&self) -> f64 {
        self.b
    }

    /// `v/2`
    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn policy(&self) -> &QuadraturePolicy {
        &self.policy
    }

    /// Exponential rate of the integrand envelope ahead of the front, `b + c`.
    pub fn leading_decay_rate(&self) -> f64 {
        self.b + self.c
    }

    /// Rate at which `u` approaches the stationary profile behind the front, `b - c`.
    pub fn trailing_decay_rate(&self) -> f64 {
        self.b - self.c
    }

    /// `u(x, y)` from the integral over `[x, inf)`.
    pub fn profile(&self, x: f64, y: f64) -> Result<f64> {
        Ok(self.profile_estimate(x, y)?.value)
    }

    pub fn profile_estimate(&self, x: f64, y: f64) -> Result<Estimate> {
        check_point(x, y)?;
        Ok(kernel_tail(self.b, self.c, y, x, &self.policy)?.scale(0.5 / PI))
    }

    /// `u(x, y)` in whichever of two equivalent forms keeps full relative
    /// precision.
    ///
    /// Far behind the front `u` differs from the stationary profile by less
    /// than one ulp, so the difference is carried separately as the integral
    /// over `(-inf, x]`. The two integrals add up to the stationary profile.
    pub fn profile_precise(&self, x: f64, y: f64) -> Result<ProfileValue> {
        check_point(x, y)?;
        let ahead = self.profile(x, y)?;
        let stationary = stationary_profile(y);
        if ahead <= 0.5 * stationary {
            return Ok(ProfileValue::Ahead(ahead));
        }
        // mirror s -> -s: integral_{-x}^inf K0(b r) exp(+c s) ds
        let behind = kernel_tail(self.b, -self.c, y, -x, &self.policy)?.value * (0.5 / PI);
        Ok(ProfileValue::Behind {
            stationary,
            deficit: behind,
        })
    }

    /// `u` along a row of increasing `xs` at fixed `y`.
    ///
    /// Integrates the last tail once and accumulates the segments between
    /// neighbouring points, which is much cheaper than independent tails.
    pub fn profile_row(&self, xs: &[f64], y: f64) -> Result<Vec<f64>> {
        let Some(&last) = xs.last() else {
            return Ok(Vec::new());
        };
        if xs.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Domain {
                what: "profile row",
                detail: "sample points must be strictly increasing".into(),
            });
        }
        let mut out = vec![0.0; xs.len()];
        let mut acc = kernel_tail(self.b, self.c, y, last, &self.policy)?.value;
        out[xs.len() - 1] = acc * (0.5 / PI);
        let integrand = kernel_integrand(self.b, self.c, y);
        for i in (0..xs.len() - 1).rev() {
            acc += kernel_segment(&integrand, xs[i], xs[i + 1], y, &self.policy)?.value;
            out[i] = acc * (0.5 / PI);
        }
        Ok(out)
    }
}

impl Profile for FrontSolution {
    fn at(&self, x: f64, y: f64) -> Result<f64> {
        self.profile(x, y)
    }
}

/// A profile value that keeps its precision in the trailing region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProfileValue {
    /// `u` itself, the integral ahead of `x`.
    Ahead(f64),
    /// `u = stationary - deficit`, with `deficit` the integral behind `x`.
    Behind { stationary: f64, deficit: f64 },
}

impl ProfileValue {
    pub fn value(&self) -> f64 {
        match *self {
            ProfileValue::Ahead(u) => u,
            ProfileValue::Behind { stationary, deficit } => stationary - deficit,
        }
    }

    /// `self - other`, formed so that differences far below the magnitude of
    /// the stationary profile survive.
    pub fn excess_over(&self, other: &ProfileValue) -> f64 {
        match (*self, *other) {
            (ProfileValue::Ahead(a), ProfileValue::Ahead(b)) => a - b,
            (
                ProfileValue::Behind {
                    stationary: s1,
                    deficit: d1,
                },
                ProfileValue::Behind {
                    stationary: s2,
                    deficit: d2,
                },
            ) => (s1 - s2) - (d1 - d2),
            (a, b) => a.value() - b.value(),
        }
    }
}

/// The travelling profile evaluated directly in physical units:
///
/// ```text
/// u(x, y) = a/(2 pi D) * integral_0^inf K0(B sqrt((x + s)^2 + y^2)) exp(-C (x + s)) ds
/// ```
///
/// with `B = sqrt(4kD + v^2) / (2D)`, `C = v / (2D)` and `v` the physical speed.
pub fn front_profile_physical(p: &PhysicalParams, x: f64, y: f64) -> Result<f64> {
    front_profile_physical_with(p, x, y, &QuadraturePolicy::default())
}

pub fn front_profile_physical_with(
    p: &PhysicalParams,
    x: f64,
    y: f64,
    policy: &QuadraturePolicy,
) -> Result<f64> {
    check_point(x, y)?;
    let v = super::velocity_physical(p)?;
    let d = p.diffusion;
    let big_b = (4.0 * p.degradation * d + v * v).sqrt() / (2.0 * d);
    let big_c = v / (2.0 * d);
    let integral = shifted_kernel_integral(big_b, big_c, x, y, policy)?;
    Ok(p.production / (2.0 * PI * d) * integral.value)
}

/// Physical-unit view of the dimensionless front.
pub fn rescaled_front(p: &PhysicalParams) -> Result<crate::model::Rescaled<FrontSolution>> {
    crate::model::rescale_solution(FrontSolution::for_params(p)?, p)
}

/// `integral_0^inf K0(b sqrt((x + s)^2 + y^2)) exp(-c (x + s)) ds`, with the
/// logarithmic point `s = -x` (when `y = 0`) split out.
pub(crate) fn shifted_kernel_integral(
    b: f64,
    c: f64,
    x: f64,
    y: f64,
    policy: &QuadraturePolicy,
) -> Result<Estimate> {
    let integrand = |s: f64| {
        let eta = x + s;
        let z = b * eta.hypot(y);
        k0_scaled_unchecked(z) * (-(z + c * eta)).exp()
    };
    let rate = b + c;
    let on_line = y == 0.0;
    if x < 0.0 {
        let kink = -x;
        let near = integrate_finite(
            integrand,
            0.0,
            kink,
            if on_line { SingularEndpoints::HI } else { SingularEndpoints::NONE },
            policy,
        )?;
        let far = integrate_semi_infinite(|s| integrand(kink + s), 0.0, rate, on_line, policy)?;
        Ok(near + far)
    } else {
        integrate_semi_infinite(integrand, 0.0, rate, on_line && x == 0.0, policy)
    }
}

fn kernel_integrand(b: f64, c: f64, y: f64) -> impl Fn(f64) -> f64 {
    move |s: f64| {
        let z = b * s.hypot(y);
        k0_scaled_unchecked(z) * (-(z + c * s)).exp()
    }
}

/// `integral_from^inf K0(b sqrt(s^2 + y^2)) exp(-c s) ds` for `b > |c|`.
pub(crate) fn kernel_tail(b: f64, c: f64, y: f64, from: f64, policy: &QuadraturePolicy) -> Result<Estimate> {
    let integrand = kernel_integrand(b, c, y);
    let on_line = y == 0.0;
    let rate = b + c;
    if from < 0.0 {
        let near = kernel_segment(&integrand, from, 0.0, y, policy)?;
        let far = integrate_semi_infinite(&integrand, 0.0, rate, on_line, policy)?;
        Ok(near + far)
    } else {
        integrate_semi_infinite(&integrand, from, rate, on_line && from == 0.0, policy)
    }
}

fn kernel_segment<F: Fn(f64) -> f64>(
    integrand: &F,
    lo: f64,
    hi: f64,
    y: f64,
    policy: &QuadraturePolicy,
) -> Result<Estimate> {
    if y != 0.0 || lo > 0.0 || hi < 0.0 {
        return integrate_finite(integrand, lo, hi, SingularEndpoints::NONE, policy);
    }
    if lo < 0.0 && hi > 0.0 {
        let left = integrate_finite(integrand, lo, 0.0, SingularEndpoints::HI, policy)?;
        let right = integrate_finite(integrand, 0.0, hi, SingularEndpoints::LO, policy)?;
        return Ok(left + right);
    }
    let flags = SingularEndpoints {
        lo: lo == 0.0,
        hi: hi == 0.0,
    };
    integrate_finite(integrand, lo, hi, flags, policy)
}

pub(crate) fn check_point(x: f64, y: f64) -> Result<()> {
    if x.is_finite() && y.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "profile",
            detail: format!("non-finite point ({x}, {y})"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_at_origin() {
        let sol = FrontSolution::new(0.125).unwrap();
        assert!((sol.velocity() - 2.0).abs() < 1e-14);
        assert!((sol.profile(0.0, 0.0).unwrap() - 0.125).abs() < 1e-9);
    }

    #[test]
    fn b_squared_minus_c_squared_is_one() {
        for alpha in [0.01, 0.1, 0.25, 0.4, 0.49] {
            let s = FrontSolution::new(alpha).unwrap();
            assert!((s.b() * s.b() - s.c() * s.c() - 1.0).abs() <= 1e-12 * s.b() * s.b());
        }
    }

    #[test]
    fn row_matches_pointwise() {
        let sol = FrontSolution::new(0.2).unwrap();
        let xs: Vec<f64> = (0..21).map(|i| -5.0 + 0.5 * i as f64).collect();
        for y in [0.0, 0.7] {
            let row = sol.profile_row(&xs, y).unwrap();
            for (x, u) in xs.iter().zip(&row) {
                let direct = sol.profile(*x, y).unwrap();
                assert!((u - direct).abs() <= 1e-9 * direct, "x={x} y={y}: {u} vs {direct}");
            }
        }
    }

    #[test]
    fn row_rejects_unsorted() {
        let sol = FrontSolution::new(0.2).unwrap();
        assert!(sol.profile_row(&[1.0, 0.0], 0.0).is_err());
        assert!(sol.profile_row(&[], 0.0).unwrap().is_empty());
    }

    #[test]
    fn precise_value_agrees_with_direct() {
        let sol = FrontSolution::new(0.3).unwrap();
        for &(x, y) in &[(-3.0, 0.0), (-1.0, 0.5), (0.5, 0.2), (4.0, 1.0)] {
            let direct = sol.profile(x, y).unwrap();
            let precise = sol.profile_precise(x, y).unwrap().value();
            assert!((direct - precise).abs() <= 1e-9 * direct.max(1e-300));
        }
    }

    #[test]
    fn non_finite_point_rejected() {
        let sol = FrontSolution::new(0.2).unwrap();
        assert!(sol.profile(f64::NAN, 0.0).is_err());
    }
}
