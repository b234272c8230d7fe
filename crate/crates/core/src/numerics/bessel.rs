//! Macdonald function K0 (modified Bessel function of the second kind, order zero).
//!
//! Two regimes:
//!
//! * `x <= 2`: the ascending series
//!   `K0(x) = sum_k (x^2/4)^k / (k!)^2 * (H_k - ln(x/2) - gamma)`, with `H_k` the
//!   harmonic numbers. The worst cancellation (at `x = 2`) costs about one digit.
//! * `x > 2`: a Chebyshev expansion of `sqrt(x) e^x K0(x)` in `t = 4/x - 1`.
//!   The coefficients are generated by `scripts/k0_chebyshev.py`.

use crate::error::{Error, Result};

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const SERIES_LIMIT: f64 = 2.0;

#[allow(clippy::excessive_precision)]
const K0E_CHEBYSHEV: [f64; 28] = [
    2.4403030820659554547,
    -3.1448101311964500543e-2,
    1.5698838857300533749e-3,
    -1.2849549581627802638e-4,
    1.3949813718876499364e-5,
    -1.8317555227191194848e-6,
    2.7668136394450150761e-7,
    -4.6604898976879476656e-8,
    8.5740340174142260858e-9,
    -1.6975345093890615156e-9,
    3.5773972814003284472e-10,
    -7.9574892444773970377e-11,
    1.855949114954926555e-11,
    -4.5145978833745191751e-12,
    1.1403405882073442347e-12,
    -2.9800969231481783548e-13,
    8.0328907750683743694e-14,
    -2.2275133267462963604e-14,
    6.3400764762766459661e-15,
    -1.8485933779209071694e-15,
    5.5120559994043333649e-16,
    -1.6782311257549006383e-16,
    5.2103917776435541125e-17,
    -1.6475805939842632815e-17,
    5.300433771177335771e-18,
    -1.7331712005821000278e-18,
    5.7551092028827293794e-19,
    -1.939095605318355466e-19,
];

fn check_argument(x: f64) -> Result<()> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::Domain {
            what: "K0",
            detail: format!("x = {x}, expected x > 0"),
        });
    }
    Ok(())
}

/// `K0(x)` for `x > 0`.
///
/// Relative accuracy is better than `1e-13` on `[1e-8, 700]`. Arguments past
/// roughly 745 underflow to zero.
///
/// ```
/// let k = linefront::numerics::bessel_k0(1.0).unwrap();
/// assert!((k - 0.421_024_438_240_708_3).abs() < 1e-15);
/// assert!(linefront::numerics::bessel_k0(0.0).is_err());
/// ```
pub fn bessel_k0(x: f64) -> Result<f64> {
    check_argument(x)?;
    Ok(k0_unchecked(x))
}

/// Exponentially scaled `e^x K0(x)` for `x > 0`.
///
/// Products such as `K0(b r) e^{-c s}` with `|c s| <= b r` are formed from
/// this without intermediate overflow or underflow.
pub fn bessel_k0_scaled(x: f64) -> Result<f64> {
    check_argument(x)?;
    Ok(k0_scaled_unchecked(x))
}

pub(crate) fn k0_unchecked(x: f64) -> f64 {
    if x <= SERIES_LIMIT {
        k0_series(x)
    } else {
        k0e_chebyshev(x) * (-x).exp()
    }
}

pub(crate) fn k0_scaled_unchecked(x: f64) -> f64 {
    if x <= SERIES_LIMIT {
        k0_series(x) * x.exp()
    } else {
        k0e_chebyshev(x)
    }
}

fn k0_series(x: f64) -> f64 {
    let t = 0.25 * x * x;
    let log_term = (0.5 * x).ln() + EULER_GAMMA;
    let mut power = 1.0; // t^k / (k!)^2
    let mut harmonic = 0.0;
    let mut sum = -log_term;
    for k in 1..60 {
        let kf = k as f64;
        power *= t / (kf * kf);
        harmonic += 1.0 / kf;
        let term = power * (harmonic - log_term);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

fn k0e_chebyshev(x: f64) -> f64 {
    let t = 4.0 / x - 1.0;
    let two_t = 2.0 * t;
    // Clenshaw recurrence
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for &c in K0E_CHEBYSHEV.iter().skip(1).rev() {
        let b0 = two_t * b1 - b2 + c;
        b2 = b1;
        b1 = b0;
    }
    let sum = t * b1 - b2 + 0.5 * K0E_CHEBYSHEV[0];
    sum / x.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_positive_and_nan() {
        assert!(bessel_k0(0.0).is_err());
        assert!(bessel_k0(-1.0).is_err());
        assert!(bessel_k0(f64::NAN).is_err());
        assert!(bessel_k0_scaled(-0.5).is_err());
    }

    #[test]
    fn regimes_join_continuously() {
        let below = k0_series(SERIES_LIMIT);
        let above = k0e_chebyshev(SERIES_LIMIT) * (-SERIES_LIMIT).exp();
        assert!((below - above).abs() <= 1e-14 * above);
    }

    #[test]
    fn underflows_to_zero() {
        assert_eq!(bessel_k0(800.0).unwrap(), 0.0);
        assert!(bessel_k0_scaled(800.0).unwrap() > 0.0);
    }

    #[test]
    fn small_argument_is_logarithmic() {
        let x: f64 = 1e-6;
        let leading = -(0.5 * x).ln() - EULER_GAMMA;
        let k = bessel_k0(x).unwrap();
        assert!((k - leading).abs() < 1e-10);
    }
}
