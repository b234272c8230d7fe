//! Stationary bump with production on a finite interval `[-zeta, zeta]`.
//!
//! With `v = 0` and the active set `[-zeta, zeta]`, the concentration is
//!
//! ```text
//! u(x, y) = 1/(2 pi) * integral_{-zeta}^{zeta} K0(sqrt((x - s)^2 + y^2)) ds
//! ```
//!
//! and self-consistency asks `u(+-zeta, 0) = alpha`. Such a bump exists for
//! every `alpha < 1/4`, i.e. whenever the travelling front advances.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::Profile;
use crate::numerics::{
    find_root, integrate_finite, k0_unchecked, scan_sign_changes, QuadraturePolicy, SingularEndpoints,
};

use super::travelling::check_point;

/// Largest half-width examined when looking for the threshold crossing.
pub const ZETA_SCAN_MAX: f64 = 20.0;
const ZETA_SCAN_POINTS: usize = 400;
const ROOT_TOL: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq)]
pub struct HomoclinicSolution {
    /// Half-width of the production interval (the smallest admissible root).
    pub zeta: f64,
    pub alpha: f64,
    /// Every root of the threshold equation found on the scan range, ascending.
    pub roots: Vec<f64>,
    /// `u(0, 0)`; exceeds `alpha` for a consistent solution.
    pub center_value: f64,
    policy: QuadraturePolicy,
}

impl HomoclinicSolution {
    pub fn has_multiple_roots(&self) -> bool {
        self.roots.len() > 1
    }

    pub fn profile(&self, x: f64, y: f64) -> Result<f64> {
        bump_profile(self.zeta, x, y, &self.policy)
    }

    /// `u(zeta, 0) - alpha`
    pub fn threshold_residual(&self) -> Result<f64> {
        Ok(self.profile(self.zeta, 0.0)? - self.alpha)
    }
}

impl Profile for HomoclinicSolution {
    fn at(&self, x: f64, y: f64) -> Result<f64> {
        self.profile(x, y)
    }
}

/// `u` of the bump with half-width `zeta`.
pub fn bump_profile(zeta: f64, x: f64, y: f64, policy: &QuadraturePolicy) -> Result<f64> {
    check_point(x, y)?;
    if !(zeta > 0.0 && zeta.is_finite()) {
        return Err(Error::Domain {
            what: "homoclinic half-width",
            detail: format!("zeta = {zeta}"),
        });
    }
    let integrand = |s: f64| k0_unchecked((x - s).hypot(y));
    let (lo, hi) = (-zeta, zeta);
    let integral = if y == 0.0 && x > lo && x < hi {
        integrate_finite(integrand, lo, x, SingularEndpoints::HI, policy)?
            + integrate_finite(integrand, x, hi, SingularEndpoints::LO, policy)?
    } else {
        let flags = SingularEndpoints {
            lo: y == 0.0 && x == lo,
            hi: y == 0.0 && x == hi,
        };
        integrate_finite(integrand, lo, hi, flags, policy)?
    };
    Ok(integral.value / (2.0 * PI))
}

/// Solves `u_zeta(zeta, 0) = alpha` for the half-width of the bump.
///
/// The residual is sampled on `(0, ZETA_SCAN_MAX]`, each sign change is
/// refined, and the smallest root is returned with all roots listed.
pub fn homoclinic_find(alpha: f64) -> Result<HomoclinicSolution> {
    homoclinic_find_with(alpha, &QuadraturePolicy::default())
}

pub fn homoclinic_find_with(alpha: f64, policy: &QuadraturePolicy) -> Result<HomoclinicSolution> {
    if alpha >= 0.5 {
        return Err(Error::NoSolution { alpha });
    }
    if !(alpha > 0.0 && alpha < 0.25) {
        return Err(Error::Domain {
            what: "homoclinic solution",
            detail: format!("alpha = {alpha}, expected 0 < alpha < 1/4"),
        });
    }
    let residual = |zeta: f64| {
        bump_profile(zeta, zeta, 0.0, policy)
            .map(|u| u - alpha)
            .unwrap_or(f64::NAN)
    };

    // quadratic spacing, denser toward small widths
    let scan_lo = ZETA_SCAN_MAX / (ZETA_SCAN_POINTS * ZETA_SCAN_POINTS) as f64;
    let brackets = scan_sign_changes(
        |t: f64| residual(ZETA_SCAN_MAX * t * t),
        (scan_lo / ZETA_SCAN_MAX).sqrt(),
        1.0,
        ZETA_SCAN_POINTS,
    );
    if brackets.is_empty() {
        return Err(Error::NoBracket {
            lo: scan_lo,
            hi: ZETA_SCAN_MAX,
            samples: ZETA_SCAN_POINTS + 1,
        });
    }
    let mut roots = Vec::with_capacity(brackets.len());
    for bracket in brackets {
        let t = find_root(|t: f64| residual(ZETA_SCAN_MAX * t * t), bracket, ROOT_TOL)?;
        roots.push(ZETA_SCAN_MAX * t * t);
    }
    let zeta = roots[0];
    let center_value = bump_profile(zeta, 0.0, 0.0, policy)?;
    if center_value <= alpha {
        return Err(Error::Domain {
            what: "homoclinic solution",
            detail: format!("u(0,0) = {center_value} does not exceed alpha = {alpha} at zeta = {zeta}"),
        });
    }
    Ok(HomoclinicSolution {
        zeta,
        alpha,
        roots,
        center_value,
        policy: *policy,
    })
}
