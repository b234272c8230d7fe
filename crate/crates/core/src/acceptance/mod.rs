//! The acceptance suite: eleven end-to-end checks of the solver against
//! closed forms, independent reference computations and the simulator.
//!
//! Each check returns a [`CriterionReport`]; [`run_all`] runs them in order.
//! The same runners back the `acceptance` test target and the CLI `selftest`.

use std::f64::consts::PI;
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::front::{
    classical_matching_residual, classical_velocity, front_profile_physical, homoclinic_find,
    leading_edge_decay, leading_edge_samples, rescaled_front, stationary_profile, velocity_dimensionless,
    velocity_implicit_residual, velocity_physical, velocity_zero_k, zero_k::zero_k_implicit_residual,
    FrontSolution, ProfileValue,
};
use crate::model::{existence_domain, PhysicalParams, Regime};
use crate::numerics::{find_root, QuadraturePolicy, RootBracket};
use crate::simulator::{
    estimate_speed, front_domain, resolution_limit, run_with, Grid2D, InitialCondition, SimOptions,
    DEFAULT_DISCARD_FRACTION,
};

pub mod oracle;

/// Outcome of one acceptance check.
#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    /// Named numbers measured along the way, for logs and follow-up checks.
    pub metrics: Vec<(String, f64)>,
    pub elapsed: Duration,
}

impl CriterionReport {
    pub fn metric(&self, name: &str) -> Option<f64> {
        self.metrics.iter().find(|m| m.0 == name).map(|m| m.1)
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:>2} {} ({:.1} s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

/// One check of the suite.
#[derive(Clone, Copy)]
pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    check: fn(&mut Metrics) -> Result<(bool, String)>,
}

impl fmt::Debug for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Criterion")
            .field("id", &self.id)
            .field("title", &self.title)
            .finish()
    }
}

type Metrics = Vec<(String, f64)>;

impl Criterion {
    pub fn run(&self) -> CriterionReport {
        let start = Instant::now();
        let mut metrics = Vec::new();
        let (passed, detail) = match (self.check)(&mut metrics) {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        CriterionReport {
            id: self.id,
            title: self.title,
            passed,
            detail,
            metrics,
            elapsed: start.elapsed(),
        }
    }
}

/// All checks in order.
pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, title: "reference front speed", check: reference_speed },
        Criterion { id: 2, title: "closed-form speed solves the threshold integral", check: implicit_consistency },
        Criterion { id: 3, title: "stationary front at alpha = 1/4", check: stationary_front },
        Criterion { id: 4, title: "connection to the rest states", check: connection_limits },
        Criterion { id: 5, title: "monotone profile", check: monotonicity },
        Criterion { id: 6, title: "simulated speed converges to the exact speed", check: simulator_speed },
        Criterion { id: 7, title: "zero-degradation limit", check: zero_degradation },
        Criterion { id: 8, title: "classical piecewise-linear front", check: classical_comparison },
        Criterion { id: 9, title: "no front for alpha >= 1/2", check: nonexistence },
        Criterion { id: 10, title: "leading-edge decay", check: leading_edge },
        Criterion { id: 11, title: "stationary bump on a finite interval", check: homoclinic },
    ]
}

pub fn run_all() -> Vec<CriterionReport> {
    criteria().iter().map(Criterion::run).collect()
}

/// Runs the checks with the given ids; unknown ids are ignored.
pub fn run_selected(ids: &[u8]) -> Vec<CriterionReport> {
    criteria()
        .iter()
        .filter(|c| ids.contains(&c.id))
        .map(Criterion::run)
        .collect()
}

fn reference_params() -> PhysicalParams {
    PhysicalParams::new(1.0, 1.0, 2.0 * PI, 0.3).expect("valid reference parameters")
}

fn reference_speed(m: &mut Metrics) -> Result<(bool, String)> {
    let v = velocity_physical(&reference_params())?;
    let exact = oracle::two_cot(0.3);
    let gap = (v - exact).abs();
    m.push(("v".into(), v));
    m.push(("gap".into(), gap));
    let printed = format!("{v:.2}");
    Ok((
        gap <= 1e-12 && printed == "6.47",
        format!("v = {v:.12} (2 decimals: {printed}), |v - 2 cot 0.3| = {gap:.1e} (tol 1e-12)"),
    ))
}

fn implicit_consistency(m: &mut Metrics) -> Result<(bool, String)> {
    let policy = QuadraturePolicy::default();
    let alphas: Vec<f64> = (1..=50).map(|i| 0.01 + 0.48 * i as f64 / 51.0).collect();
    let residuals = alphas
        .par_iter()
        .map(|&alpha| velocity_implicit_residual(alpha, velocity_dimensionless(alpha)?, &policy).map(f64::abs))
        .collect::<Result<Vec<f64>>>()?;
    let (worst_i, worst) = residuals
        .iter()
        .copied()
        .enumerate()
        .fold((0, 0.0), |acc, (i, r)| if r > acc.1 { (i, r) } else { acc });
    m.push(("max_residual".into(), worst));
    Ok((
        worst <= 1e-8,
        format!(
            "50 thresholds in (0.01, 0.49): max residual {worst:.1e} at alpha = {:.4} (tol 1e-8)",
            alphas[worst_i]
        ),
    ))
}

fn stationary_front(m: &mut Metrics) -> Result<(bool, String)> {
    let v = velocity_dimensionless(0.25)?;
    let p = PhysicalParams::new(1.0, 1.0, 1.0, 0.25)?;
    let h = resolution_limit(&p)?;
    let t_end = 2.0;
    let grid = front_domain(&p, h, t_end)?;
    let out = run_with(&p, grid, t_end, InitialCondition::exact(0.0), &SimOptions::default())?;
    let (first, last) = (out.trace.first(), out.trace.last());
    let shift = match (first, last) {
        (Some(a), Some(b)) => (b.1 - a.1).abs(),
        _ => return Err(Error::InsufficientData("empty front trace".into())),
    };
    m.push(("v".into(), v));
    m.push(("shift".into(), shift));
    m.push(("dx".into(), grid.dx));
    Ok((
        v == 0.0 && shift <= 2.0 * grid.dx,
        format!(
            "v = {v}; simulated front moved {shift:.2e} over t = {t_end} (bound 2 dx = {:.3})",
            2.0 * grid.dx
        ),
    ))
}

/// Thresholds at which both far fields are within 1e-6 of the rest states by `|x| = 40`.
pub const CONNECTION_ALPHAS: [f64; 3] = [0.125, 0.25, 0.35];

fn connection_limits(m: &mut Metrics) -> Result<(bool, String)> {
    let mut behind_worst: f64 = 0.0;
    let mut ahead_worst: f64 = 0.0;
    for alpha in CONNECTION_ALPHAS {
        let sol = FrontSolution::new(alpha)?;
        for y in [0.0, 0.5, 1.0, 2.0] {
            behind_worst = behind_worst.max((sol.profile(-40.0, y)? - stationary_profile(y)).abs());
            ahead_worst = ahead_worst.max(sol.profile(40.0, y)?);
        }
    }
    m.push(("behind".into(), behind_worst));
    m.push(("ahead".into(), ahead_worst));
    Ok((
        behind_worst <= 1e-6 && ahead_worst <= 1e-6,
        format!(
            "alpha in {CONNECTION_ALPHAS:?}, y in [0, 0.5, 1, 2]: max |u(-40,y) - ubar(y)| = {behind_worst:.1e}, max u(40,y) = {ahead_worst:.1e} (tol 1e-6)"
        ),
    ))
}

/// Heights at which monotonicity in `x` is checked, and along which monotonicity in `y` is checked.
pub const MONOTONE_YS: [f64; 20] = [
    0.0, 0.05, 0.1, 0.2, 0.3, 0.5, 0.75, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 6.0, 8.0, 10.0, 12.5, 15.0, 20.0,
];

/// Counts violations of strict monotonicity on the 200 x 20 grid (and its mirror in `y`).
pub fn monotonicity_violations(alpha: f64) -> Result<usize> {
    let sol = FrontSolution::new(alpha)?;
    let xs: Vec<f64> = (0..200).map(|i| -20.0 + 40.0 * i as f64 / 199.0).collect();
    let ys: Vec<f64> = MONOTONE_YS
        .iter()
        .rev()
        .map(|y| -y)
        .filter(|&y| y < 0.0)
        .chain(MONOTONE_YS)
        .collect();
    let grid: Vec<Vec<ProfileValue>> = ys
        .par_iter()
        .map(|&y| xs.iter().map(|&x| sol.profile_precise(x, y)).collect())
        .collect::<Result<_>>()?;
    let mut bad = 0;
    // decreasing in x on every row
    for row in &grid {
        bad += row.windows(2).filter(|w| !(w[1].excess_over(&w[0]) < 0.0)).count();
    }
    // increasing in y up to y = 0, decreasing after
    let zero = ys.iter().position(|&y| y == 0.0).expect("y = 0 is sampled");
    #[allow(clippy::needless_range_loop)]
    for i in 0..xs.len() {
        for j in 1..ys.len() {
            let step = grid[j][i].excess_over(&grid[j - 1][i]);
            let ok = if j <= zero { step > 0.0 } else { step < 0.0 };
            bad += usize::from(!ok);
        }
    }
    Ok(bad)
}

fn monotonicity(m: &mut Metrics) -> Result<(bool, String)> {
    let alphas = [0.05, 0.125, 0.25, 0.35, 0.45];
    let mut parts = Vec::new();
    let mut total = 0;
    for alpha in alphas {
        let bad = monotonicity_violations(alpha)?;
        total += bad;
        parts.push(format!("{alpha}: {bad}"));
    }
    m.push(("violations".into(), total as f64));
    Ok((
        total == 0,
        format!("violations per alpha on 200 x 39 points [{}]", parts.join(", ")),
    ))
}

/// Grid spacings of the convergence study, coarse to fine; each halves the previous.
pub const SIMULATOR_SPACINGS: [f64; 3] = [0.044, 0.022, 0.011];
/// Simulated time of the convergence study.
pub const SIMULATOR_T_END: f64 = 0.5;

fn simulator_speed(m: &mut Metrics) -> Result<(bool, String)> {
    let p = reference_params();
    let exact = velocity_physical(&p)?;
    let opts = SimOptions {
        allow_coarse: true,
        ..SimOptions::default()
    };
    let mut errors = Vec::new();
    for h in SIMULATOR_SPACINGS {
        let grid = front_domain(&p, h, SIMULATOR_T_END)?;
        let out = run_with(&p, grid, SIMULATOR_T_END, InitialCondition::exact(0.0), &opts)?;
        let est = estimate_speed(&out.trace, DEFAULT_DISCARD_FRACTION)?;
        let rel = (est.v_hat - exact).abs() / exact;
        m.push((format!("v_hat@{h}"), est.v_hat));
        m.push((format!("rel@{h}"), rel));
        errors.push(rel);
    }
    let decreasing = errors.windows(2).all(|w| w[1] < w[0]);
    let finest = *errors.last().expect("at least one level");
    let ratios: Vec<String> = errors.windows(2).map(|w| format!("{:.2}", w[0] / w[1])).collect();
    let levels: Vec<String> = SIMULATOR_SPACINGS
        .iter()
        .zip(&errors)
        .map(|(h, e)| format!("h={h}: {:.2}%", 100.0 * e))
        .collect();
    Ok((
        decreasing && finest <= 0.05,
        format!(
            "v = {exact:.4}; relative speed error {} (tol 5% at finest, monotone); error ratio per halving {}",
            levels.join(", "),
            ratios.join(", ")
        ),
    ))
}

fn zero_degradation(m: &mut Metrics) -> Result<(bool, String)> {
    let base = reference_params().with_degradation(0.0);
    let v0 = velocity_zero_k(&base)?;
    let target = 20.0 / 3.0;
    let mut gaps = Vec::new();
    for eps in [1e-2, 1e-4, 1e-6] {
        gaps.push((velocity_physical(&base.with_degradation(eps))? - v0).abs() / v0);
    }
    let gap = gaps[2];
    let shrinking = gaps.windows(2).all(|w| w[1] < w[0]);

    // speed from the rescaled threshold integral, times D
    let policy = QuadraturePolicy::default();
    let mut spread: f64 = 0.0;
    for d in [0.5, 1.0, 4.0] {
        let p = base.with_diffusion(d);
        let alpha0 = d * p.threshold / p.production;
        let f = |v: f64| zero_k_implicit_residual(alpha0, v, &policy).unwrap_or(f64::NAN);
        let guess = velocity_zero_k(&p)? / d;
        let root = find_root(f, RootBracket::new(f, 0.5 * guess, 2.0 * guess)?, 1e-13)?;
        spread = spread.max((root * d - v0).abs() / v0);
        if velocity_zero_k(&p)? != v0 {
            spread = f64::INFINITY;
        }
    }
    m.push(("gap".into(), gap));
    m.push(("d_spread".into(), spread));
    Ok((
        gap <= 1e-2 && shrinking && (v0 - target).abs() <= 1e-12 && spread <= 1e-8,
        format!(
            "v0 = {v0:.10}; relative gap of the k > 0 speed at k = 1e-2, 1e-4, 1e-6: {:.2e}, {:.2e}, {:.2e} (tol 1% at 1e-6); \
             max deviation over D in {{0.5, 1, 4}} via the threshold integral {spread:.1e}",
            gaps[0], gaps[1], gaps[2]
        ),
    ))
}

fn classical_comparison(m: &mut Metrics) -> Result<(bool, String)> {
    let p = PhysicalParams::new(1.0, 1e-6, 1.0, 1.0)?;
    let v = classical_velocity(&p)?.velocity;
    let gap = (v - 1.0).abs();
    let mut symmetric: f64 = 0.0;
    for (k, a) in [(1e-6, 1.0), (1.0, 1.0), (2.5, 3.0)] {
        let q = PhysicalParams::new(1.0, k, a, a / (2.0 * k))?;
        symmetric = symmetric.max(classical_matching_residual(&q, 0.0)?.abs());
    }
    let mut closed: f64 = 0.0;
    for (d, k, a, uc) in [(1.0, 1.0, 1.0, 0.3), (2.0, 0.5, 3.0, 1.0), (1.0, 1e-6, 1.0, 1.0), (0.3, 4.0, 2.0, 0.4)] {
        let q = PhysicalParams::new(d, k, a, uc)?;
        let expected = oracle::classical_speed(d, k, a, uc);
        closed = closed.max((classical_velocity(&q)?.velocity - expected).abs() / expected.abs().max(1e-300));
    }
    m.push(("gap".into(), gap));
    m.push(("symmetric_residual".into(), symmetric));
    m.push(("closed_form".into(), closed));
    Ok((
        gap <= 1e-2 && symmetric <= 1e-10 && closed <= 1e-8,
        format!(
            "v(k=1e-6) = {v:.6} vs sqrt(aD/u_c) = 1 (gap {gap:.1e}, tol 1%); matching residual at v = 0 for u_c = a/2k: {symmetric:.1e} (tol 1e-10); \
             agreement with the closed form {closed:.1e}"
        ),
    ))
}

fn nonexistence(m: &mut Metrics) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut expect = |name: &str, r: Result<()>| {
        checked += 1;
        if !matches!(r, Err(Error::NoSolution { .. })) {
            failures.push(format!("{name} -> {r:?}"));
        }
    };
    for alpha in [0.5, 0.6, 0.9] {
        expect("velocity_dimensionless", velocity_dimensionless(alpha).map(drop));
        expect("FrontSolution::new", FrontSolution::new(alpha).map(drop));
        expect("homoclinic_find", homoclinic_find(alpha).map(drop));
        // D = k = a = 1 makes u_c = alpha
        let p = PhysicalParams::new(1.0, 1.0, 1.0, alpha)?;
        expect("velocity_physical", velocity_physical(&p).map(drop));
        expect("FrontSolution::for_params", FrontSolution::for_params(&p).map(drop));
        expect("front_profile_physical", front_profile_physical(&p, 0.0, 0.0).map(drop));
        expect("rescaled_front", rescaled_front(&p).map(drop));
        expect("resolution_limit", resolution_limit(&p).map(drop));
        expect("front_domain", front_domain(&p, 0.05, 1.0).map(drop));
        let grid = Grid2D::covering(-1.0, 1.0, 1.0, 0.1)?;
        expect("exact initial condition", InitialCondition::exact(0.0).build(&grid, &p).map(drop));
        let regime = existence_domain(alpha)?;
        expect(
            "existence_domain",
            if regime == Regime::NoSolution { Err(Error::NoSolution { alpha }) } else { Ok(()) },
        );
    }
    m.push(("checked".into(), checked as f64));
    m.push(("failures".into(), failures.len() as f64));
    Ok((
        failures.is_empty(),
        if failures.is_empty() {
            format!("{checked} calls at alpha in {{0.5, 0.6, 0.9}} all returned NoSolution")
        } else {
            format!("not rejected: {}", failures.join("; "))
        },
    ))
}

fn leading_edge(m: &mut Metrics) -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (label, alpha) in [("0", 0.25), ("2", 0.125), ("2cot(0.3)", 0.3 / (2.0 * PI))] {
        let sol = FrontSolution::new(alpha)?;
        let xs = leading_edge_samples(&sol, 16);
        let fit = leading_edge_decay(&sol, &xs)?;
        let expected = sol.b() + sol.c();
        let rel = (fit.gamma - expected).abs() / expected;
        ok &= (0.3..=0.7).contains(&fit.power) && rel <= 0.02;
        m.push((format!("gamma_rel@{label}"), rel));
        m.push((format!("power@{label}"), fit.power));
        parts.push(format!(
            "v={label}: gamma {:.5} vs b+c {expected:.5} ({:.2}%), power {:.3}",
            fit.gamma,
            100.0 * rel,
            fit.power
        ));
    }
    Ok((ok, format!("{} (tol 2%, power in [0.3, 0.7])", parts.join("; "))))
}

fn homoclinic(m: &mut Metrics) -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for alpha in [0.05, 0.1, 0.2] {
        let sol = homoclinic_find(alpha)?;
        let residual = sol.threshold_residual()?.abs();
        let reference = oracle::bump_half_widths(alpha);
        let gap = match reference.first() {
            Some(z) => (sol.zeta - z).abs(),
            None => f64::INFINITY,
        };
        let same_count = reference.len() == sol.roots.len();
        ok &= residual <= 1e-8 && sol.center_value > alpha && gap <= 1e-6 && same_count;
        m.push((format!("zeta@{alpha}"), sol.zeta));
        m.push((format!("gap@{alpha}"), gap));
        parts.push(format!(
            "alpha={alpha}: zeta {:.9}, residual {residual:.1e}, u(0,0) {:.5}, scan gap {gap:.1e}, roots {}",
            sol.zeta,
            sol.center_value,
            sol.roots.len()
        ));
    }
    Ok((ok, format!("{} (tol 1e-8 / 1e-6)", parts.join("; "))))
}
