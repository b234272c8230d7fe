//! Physical parameters, the one-parameter rescaling, and the half-plane
//! boundary formulation.
//!
//! The physical problem is
//!
//! ```text
//! u_t = D (u_xx + u_yy) - k u + a H(u - u_c) delta(y)
//! ```
//!
//! with `H` the Heaviside step. Measuring time in units of `1/k`, lengths in
//! units of `sqrt(D/k)` and concentration in units of `a / sqrt(kD)` leaves a
//! single dimensionless threshold `alpha = (u_c / a) sqrt(kD)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The four constants of the line-production model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    /// Diffusion coefficient `D` [length^2 / time], positive.
    #[serde(rename = "D")]
    pub diffusion: f64,
    /// Linear degradation rate `k` [1 / time], non-negative.
    #[serde(rename = "k")]
    pub degradation: f64,
    /// Maximal production per unit length of the line `a` [amount / (length time)], positive.
    #[serde(rename = "a")]
    pub production: f64,
    /// Activation threshold `u_c` [amount / length^2], positive.
    #[serde(rename = "u_c")]
    pub threshold: f64,
}

impl PhysicalParams {
    pub fn new(diffusion: f64, degradation: f64, production: f64, threshold: f64) -> Result<Self> {
        let p = Self {
            diffusion,
            degradation,
            production,
            threshold,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParams(format!("{name} must be positive and finite, got {v}")))
            }
        };
        positive("D", self.diffusion)?;
        positive("a", self.production)?;
        positive("u_c", self.threshold)?;
        if !(self.degradation >= 0.0 && self.degradation.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "k must be non-negative and finite, got {}",
                self.degradation
            )));
        }
        Ok(())
    }

    pub fn is_zero_degradation(&self) -> bool {
        self.degradation == 0.0
    }

    pub fn with_degradation(self, degradation: f64) -> Self {
        Self { degradation, ..self }
    }

    pub fn with_diffusion(self, diffusion: f64) -> Self {
        Self { diffusion, ..self }
    }

    /// Boundary condition of the equivalent half-plane problem on `y >= 0`.
    pub fn half_plane_bc(&self) -> HalfPlaneBC {
        HalfPlaneBC {
            flux_coefficient: 0.5 * self.production,
            threshold: self.threshold,
            production: self.production,
        }
    }
}

/// The single parameter left after rescaling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimensionlessParams {
    pub alpha: f64,
}

impl DimensionlessParams {
    pub fn new(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(Self { alpha })
    }

    pub fn regime(&self) -> Result<Regime> {
        existence_domain(self.alpha)
    }
}

/// `alpha = (u_c / a) sqrt(kD)`.
///
/// `k = 0` has no such rescaling and yields [`Error::ZeroDegradation`].
///
/// ```
/// use linefront::model::{to_dimensionless, PhysicalParams};
///
/// let p = PhysicalParams::new(4.0, 1.0, 2.0, 0.1).unwrap();
/// assert!((to_dimensionless(&p).unwrap().alpha - 0.1).abs() < 1e-15);
/// ```
pub fn to_dimensionless(p: &PhysicalParams) -> Result<DimensionlessParams> {
    p.validate()?;
    if p.is_zero_degradation() {
        return Err(Error::ZeroDegradation);
    }
    let alpha = p.threshold * (p.degradation * p.diffusion).sqrt() / p.production;
    DimensionlessParams::new(alpha)
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "alpha",
            detail: format!("alpha = {alpha}, expected a positive finite value"),
        })
    }
}

/// Units used to move between the dimensionless and the physical problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scales {
    /// `sqrt(D/k)`
    pub length: f64,
    /// `1/k`
    pub time: f64,
    /// `a / sqrt(kD)`
    pub concentration: f64,
    /// `sqrt(kD)`
    pub velocity: f64,
}

impl Scales {
    pub fn of(p: &PhysicalParams) -> Result<Self> {
        p.validate()?;
        if p.is_zero_degradation() {
            return Err(Error::ZeroDegradation);
        }
        let (d, k) = (p.diffusion, p.degradation);
        let root = (k * d).sqrt();
        Ok(Self {
            length: (d / k).sqrt(),
            time: 1.0 / k,
            concentration: p.production / root,
            velocity: root,
        })
    }

    pub fn length_to_physical(&self, x: f64) -> f64 {
        x * self.length
    }

    pub fn length_to_dimensionless(&self, x: f64) -> f64 {
        x / self.length
    }

    pub fn time_to_physical(&self, t: f64) -> f64 {
        t * self.time
    }

    pub fn concentration_to_physical(&self, u: f64) -> f64 {
        u * self.concentration
    }

    pub fn concentration_to_dimensionless(&self, u: f64) -> f64 {
        u / self.concentration
    }

    pub fn velocity_to_physical(&self, v: f64) -> f64 {
        v * self.velocity
    }

    pub fn velocity_to_dimensionless(&self, v: f64) -> f64 {
        v / self.velocity
    }
}

/// A concentration field `u(x, y)` that may fail to evaluate.
pub trait Profile {
    fn at(&self, x: f64, y: f64) -> Result<f64>;
}

impl<F> Profile for F
where
    F: Fn(f64, f64) -> Result<f64>,
{
    fn at(&self, x: f64, y: f64) -> Result<f64> {
        self(x, y)
    }
}

/// A dimensionless profile viewed in physical units.
#[derive(Debug, Clone)]
pub struct Rescaled<P> {
    inner: P,
    scales: Scales,
}

impl<P> Rescaled<P> {
    pub fn scales(&self) -> &Scales {
        &self.scales
    }

    pub fn inner(&self) -> &P {
        &self.inner
    }
}

impl<P: Profile> Profile for Rescaled<P> {
    fn at(&self, x: f64, y: f64) -> Result<f64> {
        let s = &self.scales;
        let u = self
            .inner
            .at(s.length_to_dimensionless(x), s.length_to_dimensionless(y))?;
        Ok(s.concentration_to_physical(u))
    }
}

/// Maps a dimensionless profile to physical coordinates and concentration.
pub fn rescale_solution<P: Profile>(profile: P, p: &PhysicalParams) -> Result<Rescaled<P>> {
    Ok(Rescaled {
        inner: profile,
        scales: Scales::of(p)?,
    })
}

/// Which kind of front a given threshold produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    /// `0 < alpha < 1/4`: the active region invades, `v > 0`.
    FastForward,
    /// `alpha = 1/4`: `v = 0`.
    Stationary,
    /// `1/4 < alpha < 1/2`: the active region retreats, `v < 0`.
    Backward,
    /// `alpha >= 1/2`: the threshold exceeds `sup u = 1/2`; production never switches on.
    NoSolution,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Regime::FastForward => "FastForward",
            Regime::Stationary => "Stationary",
            Regime::Backward => "Backward",
            Regime::NoSolution => "NoSolution",
        };
        f.write_str(name)
    }
}

pub fn existence_domain(alpha: f64) -> Result<Regime> {
    check_alpha(alpha)?;
    Ok(if alpha >= 0.5 {
        Regime::NoSolution
    } else if alpha < 0.25 {
        Regime::FastForward
    } else if alpha == 0.25 {
        Regime::Stationary
    } else {
        Regime::Backward
    })
}

/// Flux condition `D u_y + (a/2) H(u - u_c) = 0` on `y = 0`.
///
/// Half of the line source goes into each side of the line, so the half-plane
/// problem sees `a/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlaneBC {
    pub flux_coefficient: f64,
    pub threshold: f64,
    pub production: f64,
}

impl HalfPlaneBC {
    /// Outward production flux `(a/2) H(u - u_c)`; active where `u >= u_c`.
    pub fn flux(&self, u: f64) -> f64 {
        if u >= self.threshold {
            self.flux_coefficient
        } else {
            0.0
        }
    }
}
