//! Far-field shape of the leading edge, `u(x, 0) ~ C exp(-gamma x) / x^p`.

use crate::error::{Error, Result};

use super::travelling::FrontSolution;

/// Smallest sample value kept in a fit; anything below is treated as underflow.
pub const UNDERFLOW_GUARD: f64 = 1e-280;
const MIN_SAMPLES: usize = 8;

/// Least-squares fit of `ln u = constant - gamma x - power ln x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayFit {
    pub gamma: f64,
    pub power: f64,
    pub constant: f64,
    pub samples: usize,
}

/// Fits the leading-edge decay of `u(x, 0)` over the given abscissae.
///
/// Needs at least 8 usable points (`u > 1e-280`) spanning a decade in `x`;
/// `gamma` and `power` are not separately identifiable over a narrower range.
pub fn leading_edge_decay(sol: &FrontSolution, xs: &[f64]) -> Result<DecayFit> {
    let mut pts = Vec::with_capacity(xs.len());
    for &x in xs {
        if !(x > 0.0 && x.is_finite()) {
            return Err(Error::Domain {
                what: "leading-edge sample",
                detail: format!("x = {x}, expected a positive abscissa"),
            });
        }
        let u = sol.profile(x, 0.0)?;
        if u > UNDERFLOW_GUARD {
            pts.push((x, u.ln()));
        }
    }
    if pts.len() < MIN_SAMPLES {
        return Err(Error::InsufficientData(format!(
            "{} usable samples above {UNDERFLOW_GUARD:e}, need {MIN_SAMPLES}",
            pts.len()
        )));
    }
    let lo = pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let hi = pts.iter().map(|p| p.0).fold(0.0, f64::max);
    if hi * (1.0 + 1e-12) < 10.0 * lo {
        return Err(Error::InsufficientData(format!(
            "samples span [{lo}, {hi}], less than one decade"
        )));
    }
    let [constant, neg_gamma, neg_power] = least_squares3(&pts)?;
    Ok(DecayFit {
        gamma: -neg_gamma,
        power: -neg_power,
        constant,
        samples: pts.len(),
    })
}

/// `n` logarithmically spaced abscissae on `[10/gamma, 100/gamma]`, with
/// `gamma = b + c` the decay rate of the integrand envelope.
pub fn leading_edge_samples(sol: &FrontSolution, n: usize) -> Vec<f64> {
    let gamma = sol.leading_decay_rate();
    let (lo, hi) = ((10.0 / gamma).ln(), (100.0 / gamma).ln());
    let n = n.max(2);
    (0..n)
        .map(|i| (lo + (hi - lo) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

// Fits y = c0 + c1 x + c2 ln x through centred normal equations.
fn least_squares3(pts: &[(f64, f64)]) -> Result<[f64; 3]> {
    let n = pts.len() as f64;
    let mean = |g: &dyn Fn(&(f64, f64)) -> f64| pts.iter().map(g).sum::<f64>() / n;
    let (mx, ml, my) = (mean(&|p| p.0), mean(&|p| p.0.ln()), mean(&|p| p.1));
    let (mut sxx, mut sxl, mut sll, mut sxy, mut sly) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &(x, y) in pts {
        let (dx, dl, dy) = (x - mx, x.ln() - ml, y - my);
        sxx += dx * dx;
        sxl += dx * dl;
        sll += dl * dl;
        sxy += dx * dy;
        sly += dl * dy;
    }
    let det = sxx * sll - sxl * sxl;
    if !(det > 1e-12 * sxx * sll) {
        return Err(Error::InsufficientData(
            "sample abscissae do not separate the linear and logarithmic terms".into(),
        ));
    }
    let c1 = (sxy * sll - sly * sxl) / det;
    let c2 = (sly * sxx - sxy * sxl) / det;
    Ok([my - c1 * mx - c2 * ml, c1, c2])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_model_is_recovered() {
        let pts: Vec<_> = (1..=20)
            .map(|i| {
                let x = i as f64;
                (x, 1.5 - 0.8 * x - 0.5 * x.ln())
            })
            .collect();
        let [c, g, p] = least_squares3(&pts).unwrap();
        assert!((c - 1.5).abs() < 1e-10 && (g + 0.8).abs() < 1e-12 && (p + 0.5).abs() < 1e-10);
    }

    #[test]
    fn too_few_or_too_narrow_samples() {
        let sol = FrontSolution::new(0.25).unwrap();
        let xs: Vec<f64> = (0..5).map(|i| 10.0 + i as f64).collect();
        assert!(matches!(leading_edge_decay(&sol, &xs), Err(Error::InsufficientData(_))));
        let xs: Vec<f64> = (0..12).map(|i| 10.0 + i as f64).collect();
        assert!(matches!(leading_edge_decay(&sol, &xs), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn samples_span_a_decade() {
        let sol = FrontSolution::new(0.125).unwrap();
        let xs = leading_edge_samples(&sol, 16);
        assert_eq!(xs.len(), 16);
        assert!((xs[15] / xs[0] - 10.0).abs() < 1e-12);
    }
}
