use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Numerical failures carry whatever partial information was available so
/// callers can report it instead of discarding it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument outside the domain of {what}: {detail}")]
    Domain { what: &'static str, detail: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error(
        "no travelling or stationary solution for alpha = {alpha} \
         (solutions exist only for 0 < alpha < 1/2, since sup of the stationary profile is 1/2)"
    )]
    NoSolution { alpha: f64 },

    #[error("degradation rate k = 0 requires the zero-degradation routines")]
    ZeroDegradation,

    #[error("quadrature did not converge: value {value}, error estimate {err_est:e}")]
    NonConvergence { value: f64, err_est: f64 },

    #[error("semi-infinite integral diverges: decay rate {rate} is not positive")]
    TailDivergence { rate: f64 },

    #[error("invalid bracket [{lo}, {hi}]: f(lo) = {f_lo} and f(hi) = {f_hi} do not change sign")]
    InvalidBracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("no sign change of the residual found on [{lo}, {hi}] ({samples} samples)")]
    NoBracket { lo: f64, hi: f64, samples: usize },

    #[error("time step {dt} exceeds the explicit stability bound {bound}")]
    CflViolation { dt: f64, bound: f64 },

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("front at x = {x_front} entered the guard band near the domain edge at t = {t}")]
    FrontEscape { t: f64, x_front: f64 },

    #[error("concentration went negative: min u = {min:e} at t = {t}")]
    Positivity { t: f64, min: f64 },

    #[error("no node on the production line is above threshold at t = {t}; the active region vanished")]
    FrontLost { t: f64 },

    #[error("insufficient data: {0}")]
    InsufficientData(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
