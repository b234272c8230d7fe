use crate::error::{Error, Result};

/// Front positions `(t, x_front)` with strictly increasing times.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FrontTrace {
    samples: Vec<(f64, f64)>,
}

impl FrontTrace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a trace from samples, checking the time ordering.
    pub fn from_samples(samples: Vec<(f64, f64)>) -> Result<Self> {
        let mut trace = Self::new();
        for (t, x) in samples {
            trace.push(t, x)?;
        }
        Ok(trace)
    }

    pub fn push(&mut self, t: f64, x_front: f64) -> Result<()> {
        if !t.is_finite() || !x_front.is_finite() {
            return Err(Error::NonFinite(format!("trace sample ({t}, {x_front})")));
        }
        if let Some(&(last, _)) = self.samples.last() {
            if t <= last {
                return Err(Error::InvalidParams(format!(
                    "trace times must increase: {t} after {last}"
                )));
            }
        }
        self.samples.push((t, x_front));
        Ok(())
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn first(&self) -> Option<(f64, f64)> {
        self.samples.first().copied()
    }

    pub fn last(&self) -> Option<(f64, f64)> {
        self.samples.last().copied()
    }
}

/// Fitted front speed and its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpeedEstimate {
    pub v_hat: f64,
    pub stderr: f64,
    /// Samples used after discarding the transient.
    pub samples: usize,
}

pub const DEFAULT_DISCARD_FRACTION: f64 = 0.3;
const MIN_FIT_SAMPLES: usize = 10;

/// Least-squares slope of `x_front` against `t`, ignoring the first
/// `discard_fraction` of the samples as transient.
///
/// ```
/// use linefront::simulator::{estimate_speed, FrontTrace};
///
/// let trace = FrontTrace::from_samples((0..20).map(|i| (i as f64, 3.0 * i as f64 - 1.0)).collect()).unwrap();
/// let est = estimate_speed(&trace, 0.3).unwrap();
/// assert!((est.v_hat - 3.0).abs() < 1e-12);
/// ```
pub fn estimate_speed(trace: &FrontTrace, discard_fraction: f64) -> Result<SpeedEstimate> {
    if !(0.0..1.0).contains(&discard_fraction) {
        return Err(Error::InvalidParams(format!(
            "discard fraction {discard_fraction} outside [0, 1)"
        )));
    }
    let skip = (discard_fraction * trace.len() as f64).floor() as usize;
    let pts = &trace.samples()[skip..];
    if pts.len() < MIN_FIT_SAMPLES {
        return Err(Error::InsufficientData(format!(
            "{} samples after discarding the transient, need {MIN_FIT_SAMPLES}",
            pts.len()
        )));
    }
    let n = pts.len() as f64;
    let mt = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let mx = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut stt, mut stx) = (0.0, 0.0);
    for &(t, x) in pts {
        stt += (t - mt) * (t - mt);
        stx += (t - mt) * (x - mx);
    }
    let slope = stx / stt;
    let sse: f64 = pts
        .iter()
        .map(|&(t, x)| {
            let r = x - mx - slope * (t - mt);
            r * r
        })
        .sum();
    Ok(SpeedEstimate {
        v_hat: slope,
        stderr: (sse / (n - 2.0) / stt).sqrt(),
        samples: pts.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unordered_times() {
        let mut trace = FrontTrace::new();
        trace.push(0.0, 1.0).unwrap();
        assert!(trace.push(0.0, 2.0).is_err());
        assert!(trace.push(-1.0, 2.0).is_err());
        assert!(trace.push(1.0, f64::NAN).is_err());
    }

    #[test]
    fn stationary_trace_has_zero_speed() {
        let trace = FrontTrace::from_samples((0..30).map(|i| (0.1 * i as f64, 2.5)).collect()).unwrap();
        let est = estimate_speed(&trace, DEFAULT_DISCARD_FRACTION).unwrap();
        assert_eq!(est.v_hat, 0.0);
        assert_eq!(est.stderr, 0.0);
        assert_eq!(est.samples, 21);
    }

    #[test]
    fn too_short() {
        let trace = FrontTrace::from_samples((0..12).map(|i| (i as f64, 0.0)).collect()).unwrap();
        assert!(matches!(estimate_speed(&trace, 0.3), Err(Error::InsufficientData(_))));
        assert!(estimate_speed(&trace, 0.0).is_ok());
        assert!(estimate_speed(&trace, 1.0).is_err());
    }

    #[test]
    fn noisy_slope_has_positive_stderr() {
        let trace = FrontTrace::from_samples(
            (0..40)
                .map(|i| (i as f64, -2.0 * i as f64 + if i % 2 == 0 { 0.1 } else { -0.1 }))
                .collect(),
        )
        .unwrap();
        let est = estimate_speed(&trace, 0.0).unwrap();
        assert!((est.v_hat + 2.0).abs() < 1e-3);
        assert!(est.stderr > 0.0 && est.stderr < 1e-2);
    }
}
