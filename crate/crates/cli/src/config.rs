//! Parameters from an optional TOML/JSON file, overridden by flags.

use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;
use linefront::numerics::QuadraturePolicy;
use linefront::PhysicalParams;
use serde::Deserialize;

use crate::Failure;

/// Keys accepted in a config file. Every key is optional; flags win.
#[derive(Debug, Default, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(rename = "D")]
    pub diffusion: Option<f64>,
    pub k: Option<f64>,
    pub a: Option<f64>,
    #[serde(alias = "uc")]
    pub u_c: Option<f64>,
    pub alpha: Option<f64>,
    pub grid: Option<String>,
    pub t_end: Option<f64>,
    pub out: Option<PathBuf>,
    pub tol: Option<f64>,
    pub svg: Option<bool>,
    pub init: Option<InitKind>,
    pub mirrored: Option<bool>,
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum InitKind {
    /// Sampled exact travelling profile.
    #[default]
    Exact,
    /// Stationary state on the active side, zero on the other.
    Step,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::Config(format!("cannot read config {}: {e}", path.display())))?;
        let is_json = path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("json"));
        if is_json {
            serde_json::from_str(&text)
                .map_err(|e| Failure::Config(format!("invalid JSON in {}: {e}", path.display())))
        } else {
            toml::from_str(&text)
                .map_err(|e| Failure::Config(format!("invalid TOML in {}: {e}", path.display())))
        }
    }
}

/// Model parameters and numerical tolerance, shared by every subcommand.
#[derive(Debug, Default, Clone, Args)]
pub struct ParamArgs {
    /// TOML or JSON file with any of the keys D, k, a, u_c, alpha, grid,
    /// t_end, out, tol, svg, init, mirrored. Flags override it.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Diffusion coefficient D > 0 [length^2/time].
    #[arg(long = "D", value_name = "D")]
    pub diffusion: Option<f64>,
    /// Degradation rate k >= 0 [1/time].
    #[arg(long, value_name = "K")]
    pub k: Option<f64>,
    /// Production rate per unit length of the line, a > 0 [amount/(length time)].
    #[arg(long, value_name = "A")]
    pub a: Option<f64>,
    /// Threshold concentration u_c > 0 [amount/length^2].
    #[arg(long = "uc", value_name = "UC")]
    pub uc: Option<f64>,
    /// Dimensionless mode: D = k = a = 1 and u_c = alpha.
    #[arg(long, conflicts_with_all = ["diffusion", "k", "a", "uc"])]
    pub alpha: Option<f64>,
    /// Relative tolerance of the adaptive quadrature (default 1e-10).
    #[arg(long)]
    pub tol: Option<f64>,
}

/// Parameters after merging file and flags.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub params: PhysicalParams,
    /// Set when the run was requested through `--alpha`.
    pub dimensionless: bool,
    pub policy: QuadraturePolicy,
    pub file: FileConfig,
}

impl ParamArgs {
    pub fn resolve(&self) -> Result<Resolved, Failure> {
        let file = match &self.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        let flag_physical = self.diffusion.is_some() || self.k.is_some() || self.a.is_some() || self.uc.is_some();
        let file_physical = file.diffusion.is_some() || file.k.is_some() || file.a.is_some() || file.u_c.is_some();
        let alpha = if self.alpha.is_some() {
            self.alpha
        } else if flag_physical {
            None
        } else {
            if file.alpha.is_some() && file_physical {
                return Err(Failure::Config(
                    "config sets both alpha and physical parameters; use one or the other".into(),
                ));
            }
            file.alpha
        };
        let params = match alpha {
            Some(alpha) => {
                if !(alpha > 0.0 && alpha.is_finite()) {
                    return Err(Failure::Config(format!("alpha must be positive, got {alpha}")));
                }
                PhysicalParams::new(1.0, 1.0, 1.0, alpha)?
            }
            None => {
                let pick = |flag: Option<f64>, file: Option<f64>, name: &str| {
                    flag.or(file).ok_or_else(|| {
                        Failure::Config(format!(
                            "missing parameter {name}; give --D --k --a --uc, --alpha, or a config file"
                        ))
                    })
                };
                PhysicalParams::new(
                    pick(self.diffusion, file.diffusion, "D")?,
                    pick(self.k, file.k, "k")?,
                    pick(self.a, file.a, "a")?,
                    pick(self.uc, file.u_c, "u_c")?,
                )?
            }
        };
        let policy = QuadraturePolicy::default().with_rel_tol(self.tol.or(file.tol).unwrap_or(1e-10));
        policy
            .validate()
            .map_err(|_| Failure::Config(format!("tolerance must be positive and finite, got {}", policy.rel_tol)))?;
        Ok(Resolved {
            params,
            dimensionless: alpha.is_some(),
            policy,
            file,
        })
    }
}

/// `lo:hi:n` with `lo < hi` and `n >= 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Range {
    pub fn parse(text: &str) -> Result<Self, Failure> {
        let bad = || Failure::Config(format!("invalid range '{text}', expected LO:HI:N"));
        let parts: Vec<&str> = text.trim().split(':').collect();
        let [lo, hi, n] = parts[..] else {
            return Err(bad());
        };
        let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        if !(lo.is_finite() && hi.is_finite() && lo < hi && n >= 2) {
            return Err(Failure::Config(format!(
                "range '{text}' needs finite LO < HI and N >= 2"
            )));
        }
        Ok(Self { lo, hi, n })
    }

    /// `n` evenly spaced values from `lo` to `hi`, both included.
    pub fn values(&self) -> Vec<f64> {
        let step = (self.hi - self.lo) / (self.n - 1) as f64;
        let mut v: Vec<f64> = (0..self.n).map(|i| self.lo + i as f64 * step).collect();
        v[self.n - 1] = self.hi;
        v
    }
}

/// Rectangle `x0:x1:nx,y0:y1:ny` for profile output.
pub fn parse_rect(text: &str) -> Result<(Range, Range), Failure> {
    let (xs, ys) = text.split_once(',').ok_or_else(|| {
        Failure::Config(format!("invalid grid '{text}', expected X0:X1:NX,Y0:Y1:NY"))
    })?;
    Ok((Range::parse(xs)?, Range::parse(ys)?))
}

/// A single positive spacing.
pub fn parse_spacing(text: &str) -> Result<f64, Failure> {
    match text.trim().parse::<f64>() {
        Ok(h) if h > 0.0 && h.is_finite() => Ok(h),
        _ => Err(Failure::Config(format!("invalid grid spacing '{text}', expected a positive number"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        let r = Range::parse("0.005:0.495:99").unwrap();
        let v = r.values();
        assert_eq!(v.len(), 99);
        assert_eq!(v[0], 0.005);
        assert_eq!(v[98], 0.495);
        assert_eq!((v[24], v[49]), (0.125, 0.25));
        assert!(Range::parse("1:0:3").is_err());
        assert!(Range::parse("0:1").is_err());
        assert!(Range::parse("0:1:1").is_err());
        let (x, y) = parse_rect("-4:2:7, 0:3:4").unwrap();
        assert_eq!((x.n, y.hi), (7, 3.0));
        assert!(parse_spacing("-0.1").is_err());
    }

    #[test]
    fn file_formats() {
        let t: FileConfig = toml::from_str("D = 1.0\nk = 1\nuc = 0.3\ninit = \"step\"").unwrap();
        assert_eq!((t.diffusion, t.u_c, t.init), (Some(1.0), Some(0.3), Some(InitKind::Step)));
        let j: FileConfig = serde_json::from_str(r#"{"alpha": 0.1, "svg": true}"#).unwrap();
        assert_eq!((j.alpha, j.svg), (Some(0.1), Some(true)));
        assert!(toml::from_str::<FileConfig>("speed = 3").is_err());
    }

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        fs::write(&path, "D = 2.0\nk = 1.0\na = 1.0\nu_c = 0.1\ntol = 1e-9").unwrap();
        let args = ParamArgs {
            config: Some(path),
            uc: Some(0.2),
            ..ParamArgs::default()
        };
        let r = args.resolve().unwrap();
        assert_eq!(r.params.diffusion, 2.0);
        assert_eq!(r.params.threshold, 0.2);
        assert_eq!(r.policy.rel_tol, 1e-9);
        assert!(!r.dimensionless);
    }
}
