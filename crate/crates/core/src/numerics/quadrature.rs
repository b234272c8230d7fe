//! Globally adaptive Gauss-Kronrod (7/15) quadrature.
//!
//! The integrands in this crate are positive, have at most logarithmic
//! endpoint singularities, and decay exponentially on half-lines with a rate
//! the caller knows in closed form. That shapes the two entry points:
//!
//! * [`integrate_finite`] seeds a geometrically graded mesh toward endpoints
//!   flagged as singular, then bisects the panel with the largest error until
//!   the global tolerance is met.
//! * [`integrate_semi_infinite`] truncates `[lo, inf)` after a fixed number of
//!   e-folds of the decay envelope, bounds the discarded tail by that envelope
//!   and adds the bound to the error estimate.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerances and limits for the adaptive integrators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadraturePolicy {
    /// Absolute error target.
    pub abs_tol: f64,
    /// Relative error target; must be positive.
    pub rel_tol: f64,
    /// Upper bound on the number of panels held at once.
    pub max_subdivisions: usize,
    /// Number of e-folds of the decay envelope integrated before a
    /// semi-infinite tail is cut off.
    pub tail_cutoff_decades: f64,
}

impl Default for QuadraturePolicy {
    fn default() -> Self {
        Self {
            abs_tol: 0.0,
            rel_tol: 1e-10,
            max_subdivisions: 2000,
            tail_cutoff_decades: 40.0,
        }
    }
}

impl QuadraturePolicy {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.abs_tol >= 0.0
            && self.rel_tol > 0.0
            && self.rel_tol.is_finite()
            && self.max_subdivisions >= 1
            && self.tail_cutoff_decades >= 10.0
            && self.tail_cutoff_decades.is_finite();
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!("invalid quadrature policy {self:?}")))
        }
    }

    fn tolerance(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Which endpoints of a finite interval carry an integrable singularity.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SingularEndpoints {
    pub lo: bool,
    pub hi: bool,
}

impl SingularEndpoints {
    pub const NONE: Self = Self { lo: false, hi: false };
    pub const LO: Self = Self { lo: true, hi: false };
    pub const HI: Self = Self { lo: false, hi: true };
    pub const BOTH: Self = Self { lo: true, hi: true };
}

/// An integral value with its (conservative) absolute error estimate.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub err_est: f64,
}

impl Add for Estimate {
    type Output = Estimate;

    fn add(self, rhs: Estimate) -> Estimate {
        Estimate {
            value: self.value + rhs.value,
            err_est: self.err_est + rhs.err_est,
        }
    }
}

impl Estimate {
    pub fn scale(self, factor: f64) -> Estimate {
        Estimate {
            value: self.value * factor,
            err_est: self.err_est * factor.abs(),
        }
    }
}

// Graded seed mesh toward a singular endpoint: offsets L * 10^-j.
const GRADING_LEVELS: i32 = 8;
const GRADING_RATIO: f64 = 0.1;
// Equal panels laid over a truncated semi-infinite range.
const TAIL_PANELS: usize = 8;

/// `integral_lo^hi f(x) dx` with adaptive refinement.
///
/// Endpoints flagged in `singular` may carry an integrable (at most
/// logarithmic) singularity; `f` is never evaluated exactly at `lo` or `hi`.
///
/// ```
/// use linefront::numerics::{integrate_finite, QuadraturePolicy, SingularEndpoints};
///
/// let est = integrate_finite(|x: f64| -x.ln(), 0.0, 1.0, SingularEndpoints::LO,
///                            &QuadraturePolicy::default()).unwrap();
/// assert!((est.value - 1.0).abs() < 1e-10);
/// ```
pub fn integrate_finite<F>(
    f: F,
    lo: f64,
    hi: f64,
    singular: SingularEndpoints,
    policy: &QuadraturePolicy,
) -> Result<Estimate>
where
    F: Fn(f64) -> f64,
{
    policy.validate()?;
    check_interval(lo, hi)?;
    let breaks = seed_mesh(lo, hi, singular, 1);
    adaptive(&f, &breaks, policy)
}

/// `integral_lo^inf f(x) dx` for `f` decaying at least like `exp(-decay_rate x)`.
///
/// The range is cut at `lo + tail_cutoff_decades / decay_rate`. Beyond the cut
/// `|f|` is bounded by `|f(cut)| exp(-decay_rate (x - cut))`, whose integral is
/// added to the returned error estimate. A non-positive rate is reported as
/// [`Error::TailDivergence`].
pub fn integrate_semi_infinite<F>(
    f: F,
    lo: f64,
    decay_rate: f64,
    singular_lo: bool,
    policy: &QuadraturePolicy,
) -> Result<Estimate>
where
    F: Fn(f64) -> f64,
{
    policy.validate()?;
    if !(decay_rate > 0.0) || !decay_rate.is_finite() {
        return Err(Error::TailDivergence { rate: decay_rate });
    }
    if !lo.is_finite() {
        return Err(Error::Domain {
            what: "semi-infinite quadrature",
            detail: format!("lower limit {lo} is not finite"),
        });
    }
    let cut = lo + policy.tail_cutoff_decades / decay_rate;
    let singular = SingularEndpoints {
        lo: singular_lo,
        hi: false,
    };
    let breaks = seed_mesh(lo, cut, singular, TAIL_PANELS);
    let body = adaptive(&f, &breaks, policy)?;
    let f_cut = f(cut);
    if !f_cut.is_finite() {
        return Err(Error::NonFinite(format!("integrand at tail cut x = {cut}")));
    }
    let tail_bound = f_cut.abs() / decay_rate;
    Ok(Estimate {
        value: body.value,
        err_est: body.err_est + tail_bound,
    })
}

fn check_interval(lo: f64, hi: f64) -> Result<()> {
    if lo.is_finite() && hi.is_finite() && lo < hi {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "finite quadrature",
            detail: format!("need finite lo < hi, got [{lo}, {hi}]"),
        })
    }
}

fn seed_mesh(lo: f64, hi: f64, singular: SingularEndpoints, panels: usize) -> Vec<f64> {
    let len = hi - lo;
    let mut pts = Vec::with_capacity(panels + 2 * GRADING_LEVELS as usize + 1);
    for j in 0..=panels {
        pts.push(lo + len * j as f64 / panels as f64);
    }
    // grade inside the first / last panel only
    let edge = len / panels as f64;
    for j in 1..=GRADING_LEVELS {
        let offset = edge * GRADING_RATIO.powi(j);
        if singular.lo {
            pts.push(lo + offset);
        }
        if singular.hi {
            pts.push(hi - offset);
        }
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts.retain(|&p| p >= lo && p <= hi);
    pts
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn adaptive<F>(f: &F, breaks: &[f64], policy: &QuadraturePolicy) -> Result<Estimate>
where
    F: Fn(f64) -> f64,
{
    let mut heap = BinaryHeap::with_capacity(policy.max_subdivisions + 1);
    let mut value = 0.0;
    let mut err = 0.0;
    for w in breaks.windows(2) {
        let p = gauss_kronrod_15(f, w[0], w[1])?;
        value += p.value;
        err += p.err;
        heap.push(p);
    }
    // panels too narrow to split further
    let mut frozen = Vec::new();

    while err > policy.tolerance(value) {
        if heap.len() + frozen.len() >= policy.max_subdivisions {
            return Err(Error::NonConvergence {
                value: total(&heap, &frozen).0,
                err_est: err,
            });
        }
        let Some(worst) = heap.pop() else {
            return Err(Error::NonConvergence { value, err_est: err });
        };
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            frozen.push(worst);
            continue;
        }
        let left = gauss_kronrod_15(f, worst.a, mid)?;
        let right = gauss_kronrod_15(f, mid, worst.b)?;
        value += left.value + right.value - worst.value;
        err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
    }

    // re-sum to shed the drift of the running totals
    let (value, err_est) = total(&heap, &frozen);
    Ok(Estimate { value, err_est })
}

fn total(heap: &BinaryHeap<Panel>, frozen: &[Panel]) -> (f64, f64) {
    let mut panels: Vec<Panel> = heap.iter().chain(frozen.iter()).copied().collect();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    panels
        .iter()
        .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.err))
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

fn gauss_kronrod_15<F>(f: &F, a: f64, b: f64) -> Result<Panel>
where
    F: Fn(f64) -> f64,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);
    let mut res_gauss = f_center * WG[3];
    let mut res_kronrod = f_center * WGK[7];
    let mut res_abs = res_kronrod.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];

    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = 0.5 * res_kronrod;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let value = res_kronrod * half;
    if !value.is_finite() {
        return Err(Error::NonFinite(format!("integrand on [{a}, {b}]")));
    }
    let err = rescale_error((res_kronrod - res_gauss) * half, res_abs * half.abs(), res_asc * half.abs());
    Ok(Panel { a, b, value, err })
}

// QUADPACK's empirical rescaling of |K15 - G7|.
fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

#[cfg(test)]
mod tests {
    use super::*;

    fn policy() -> QuadraturePolicy {
        QuadraturePolicy::default()
    }

    #[test]
    fn constant_integrand() {
        let est = integrate_finite(|_| 1.0, 0.0, 1.0, SingularEndpoints::NONE, &policy()).unwrap();
        assert!((est.value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn log_singularity_at_either_end() {
        let lo = integrate_finite(|x: f64| -x.ln(), 0.0, 1.0, SingularEndpoints::LO, &policy()).unwrap();
        assert!((lo.value - 1.0).abs() <= lo.err_est.max(1e-12));
        assert!((lo.value - 1.0).abs() < 1e-10);
        let hi = integrate_finite(|x: f64| -(1.0 - x).ln(), 0.0, 1.0, SingularEndpoints::HI, &policy())
            .unwrap();
        assert!((hi.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn reversed_or_empty_interval_is_a_domain_error() {
        let r = integrate_finite(|x| x, 1.0, 0.0, SingularEndpoints::NONE, &policy());
        assert!(matches!(r, Err(Error::Domain { .. })));
        let r = integrate_finite(|x| x, 1.0, 1.0, SingularEndpoints::NONE, &policy());
        assert!(matches!(r, Err(Error::Domain { .. })));
    }

    #[test]
    fn exhausted_subdivisions_report_partial_value() {
        let tight = QuadraturePolicy {
            max_subdivisions: 3,
            rel_tol: 1e-15,
            ..policy()
        };
        let r = integrate_finite(|x: f64| x.sqrt().sin() / x.sqrt(), 0.0, 50.0, SingularEndpoints::NONE, &tight);
        match r {
            Err(Error::NonConvergence { value, err_est }) => {
                assert!(value.is_finite());
                assert!(err_est > 0.0);
            }
            other => panic!("expected NonConvergence, got {other:?}"),
        }
    }

    #[test]
    fn exponential_tail() {
        let est = integrate_semi_infinite(|x: f64| (-x).exp(), 0.0, 1.0, false, &policy()).unwrap();
        assert!((est.value - 1.0).abs() < 1e-12);
        assert!(est.err_est >= (est.value - 1.0).abs());
    }

    #[test]
    fn non_positive_decay_rate_diverges() {
        for rate in [0.0, -1.0, f64::NAN] {
            let r = integrate_semi_infinite(|x: f64| (-x).exp(), 0.0, rate, false, &policy());
            assert!(matches!(r, Err(Error::TailDivergence { .. })));
        }
    }

    #[test]
    fn nan_integrand_is_reported() {
        let r = integrate_finite(|_| f64::NAN, 0.0, 1.0, SingularEndpoints::NONE, &policy());
        assert!(matches!(r, Err(Error::NonFinite(_))));
    }

    #[test]
    fn invalid_policy_rejected() {
        let bad = QuadraturePolicy { rel_tol: 0.0, ..policy() };
        assert!(integrate_finite(|x| x, 0.0, 1.0, SingularEndpoints::NONE, &bad).is_err());
    }
}
