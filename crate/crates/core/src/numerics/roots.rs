//! Bracketing root finders.

use crate::error::{Error, Result};

/// An interval `[lo, hi]` on which a function changes sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootBracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl RootBracket {
    /// Evaluates `f` at both ends and checks for a sign change.
    ///
    /// A zero at either end counts as a sign change.
    pub fn new<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<Self> {
        Self::from_values(lo, hi, f(lo), f(hi))
    }

    pub fn from_values(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        let bracket = Self { lo, hi, f_lo, f_hi };
        let valid = lo < hi
            && f_lo.is_finite()
            && f_hi.is_finite()
            && (f_lo == 0.0 || f_hi == 0.0 || f_lo.signum() != f_hi.signum());
        if valid {
            Ok(bracket)
        } else {
            Err(Error::InvalidBracket { lo, hi, f_lo, f_hi })
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

const MAX_ITER: usize = 200;

/// Brent's method: inverse quadratic interpolation and secant steps,
/// falling back to bisection, never leaving the bracket.
///
/// Stops when `|f(x)| <= tol` or the bracket is narrower than `tol`.
///
/// ```
/// use linefront::numerics::{find_root, RootBracket};
///
/// let f = |x: f64| x.cos();
/// let bracket = RootBracket::new(f, 1.0, 2.0).unwrap();
/// let root = find_root(f, bracket, 1e-14).unwrap();
/// assert!((root - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
/// ```
pub fn find_root<F: Fn(f64) -> f64>(f: F, bracket: RootBracket, tol: f64) -> Result<f64> {
    let bracket = RootBracket::from_values(bracket.lo, bracket.hi, bracket.f_lo, bracket.f_hi)?;
    if bracket.f_lo == 0.0 {
        return Ok(bracket.lo);
    }
    if bracket.f_hi == 0.0 {
        return Ok(bracket.hi);
    }
    let tol = tol.max(0.0);

    // b is the best estimate, a the previous one, c the contrapoint
    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let (mut fa, mut fb) = (bracket.f_lo, bracket.f_hi);
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;

    for _ in 0..MAX_ITER {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let half_tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let m = 0.5 * (c - b);
        if fb.abs() <= tol || m.abs() <= half_tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= half_tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (half_tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > half_tol { d } else { half_tol.copysign(m) };
        fb = f(b);
        if !fb.is_finite() {
            return Err(Error::NonFinite(format!("root function at x = {b}")));
        }
    }
    Ok(b)
}

/// Samples `f` on `n + 1` equally spaced points of `[lo, hi]` and returns a
/// bracket for every sign change, in increasing order.
pub fn scan_sign_changes<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize) -> Vec<RootBracket> {
    let n = n.max(1);
    let step = (hi - lo) / n as f64;
    let mut out = Vec::new();
    let mut x_prev = lo;
    let mut f_prev = f(lo);
    for i in 1..=n {
        let x = if i == n { hi } else { lo + step * i as f64 };
        let fx = f(x);
        if f_prev.is_finite() && fx.is_finite() && f_prev != 0.0 && f_prev.signum() != fx.signum() {
            out.push(RootBracket {
                lo: x_prev,
                hi: x,
                f_lo: f_prev,
                f_hi: fx,
            });
        }
        x_prev = x;
        f_prev = fx;
    }
    out
}
