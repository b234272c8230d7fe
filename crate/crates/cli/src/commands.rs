use std::fs;
use std::path::PathBuf;

use linefront::acceptance;
use linefront::export::svg::{ContourMap, LineChart};
use linefront::export::{field_table, format_number, trace_table, write_atomic, Table};
use linefront::front::homoclinic::homoclinic_find_with;
use linefront::front::zero_k::{front_profile_zero_k_with, zero_k_alpha, zero_k_implicit_residual};
use linefront::front::{
    classical_velocity, front_profile_physical_with,
    velocity_implicit_residual, velocity_zero_k,
};
use linefront::model::{existence_domain, Scales};
use linefront::numerics::QuadraturePolicy;
use linefront::simulator::{
    estimate_speed, resolution_limit, run_with, FieldState, Grid2D, InitialCondition, SimOptions,
    DEFAULT_DISCARD_FRACTION,
};
use linefront::{to_dimensionless, velocity_dimensionless, velocity_physical, PhysicalParams, Regime};
use rayon::prelude::*;

use crate::config::{parse_rect, parse_spacing, FileConfig, InitKind, ParamArgs, Range, Resolved};
use crate::{Failure, OutputArgs, ProfileArgs, SimulateArgs, SweepArgs};

const DEFAULT_RECT: &str = "-4:2:121,0:3:61";
const DEFAULT_SWEEP: &str = "0.005:0.495:99";
const DEFAULT_T_END: f64 = 1.0;
// largest contour map drawn, in cells per side
const SVG_MAX_NX: usize = 240;
const SVG_MAX_NY: usize = 90;
// per-point failures echoed to stderr before summarising
const MAX_REPORTED: usize = 10;

type Outcome = Result<(), Failure>;

struct Output {
    dir: PathBuf,
    svg: bool,
    files: Vec<(String, Vec<u8>)>,
}

impl Output {
    fn new(args: &OutputArgs, file: &FileConfig) -> Result<Self, Failure> {
        let dir = args.out.clone().or_else(|| file.out.clone()).unwrap_or_else(|| PathBuf::from("."));
        if dir.exists() && !dir.is_dir() {
            return Err(Failure::Config(format!("output path {} is not a directory", dir.display())));
        }
        Ok(Self {
            dir,
            svg: args.svg || file.svg.unwrap_or(false),
            files: Vec::new(),
        })
    }

    fn csv(&mut self, name: &str, table: &Table) {
        self.files.push((name.into(), table.to_csv_string().into_bytes()));
    }

    fn svg(&mut self, name: &str, render: impl FnOnce() -> String) {
        if self.svg {
            self.files.push((name.into(), render().into_bytes()));
        }
    }

    // Nothing touches the disk until every file has been produced.
    fn commit(self) -> Outcome {
        fs::create_dir_all(&self.dir)
            .map_err(|e| Failure::Io(format!("cannot create {}: {e}", self.dir.display())))?;
        for (name, bytes) in &self.files {
            let path = self.dir.join(name);
            write_atomic(&path, bytes).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            println!("wrote {}", path.display());
        }
        Ok(())
    }
}

fn policy_meta(policy: &QuadraturePolicy) -> String {
    format!(
        "rel_tol={:e} abs_tol={:e} max_subdivisions={} tail_cutoff_decades={}",
        policy.rel_tol, policy.abs_tol, policy.max_subdivisions, policy.tail_cutoff_decades
    )
}

fn param_meta(table: &mut Table, r: &Resolved) {
    let p = &r.params;
    table.push_meta(
        "params",
        format!("D={} k={} a={} u_c={}", p.diffusion, p.degradation, p.production, p.threshold),
    );
    if r.dimensionless {
        table.push_meta("units", "dimensionless (D = k = a = 1, u_c = alpha)");
    }
    match to_dimensionless(p) {
        Ok(d) => table.push_meta("alpha", d.alpha),
        Err(_) => {
            if let Ok(a0) = zero_k_alpha(p) {
                table.push_meta("alpha0 (k = 0, D u_c / a)", a0);
            }
        }
    }
    table.push_meta("quadrature", policy_meta(&r.policy));
}

fn fmt_params(p: &PhysicalParams) -> String {
    format!("D = {}, k = {}, a = {}, u_c = {}", p.diffusion, p.degradation, p.production, p.threshold)
}

/// Physical speed of the front, going through the k = 0 formula when needed.
fn physical_speed(p: &PhysicalParams) -> Result<f64, Failure> {
    Ok(if p.is_zero_degradation() {
        velocity_zero_k(p)?
    } else {
        velocity_physical(p)?
    })
}

pub fn velocity(args: &ParamArgs) -> Outcome {
    let r = args.resolve()?;
    let p = r.params;
    if r.dimensionless {
        println!("dimensionless mode: D = k = a = 1, u_c = alpha");
    }
    println!("parameters: {}", fmt_params(&p));
    if p.is_zero_degradation() {
        let v0 = velocity_zero_k(&p)?;
        let alpha0 = zero_k_alpha(&p)?;
        println!("k = 0: zero-degradation limit");
        println!("v0 = a/(pi u_c) = {v0}");
        println!("note: v0 does not depend on D (D = {} is ignored)", p.diffusion);
        println!("alpha0 = D u_c / a = {alpha0}");
        // the rescaled speed is v0 / D
        let residual = zero_k_implicit_residual(alpha0, v0 / p.diffusion, &r.policy)?;
        println!("implicit residual at v0: {residual:.3e} (quadrature rel_tol {:e})", r.policy.rel_tol);
        let classical = classical_velocity(&p)?;
        println!("classical piecewise-linear front: sqrt(a D / u_c) = {}", classical.velocity);
        return Ok(());
    }
    let alpha = to_dimensionless(&p)?.alpha;
    let regime = existence_domain(alpha)?;
    println!("alpha = (u_c/a) sqrt(kD) = {alpha}");
    println!("regime = {regime}");
    if regime == Regime::NoSolution {
        return Err(velocity_dimensionless(alpha).unwrap_err().into());
    }
    let v = velocity_dimensionless(alpha)?;
    let v_phys = velocity_physical(&p)?;
    println!("v (dimensionless) = 2 cot(2 pi alpha) = {v}");
    println!("v (physical) = sqrt(kD) v = {v_phys}");
    let residual = velocity_implicit_residual(alpha, v, &r.policy)?;
    println!(
        "implicit residual: integral - 2 pi alpha = {residual:.3e} (quadrature rel_tol {:e})",
        r.policy.rel_tol
    );
    match classical_velocity(&p) {
        Ok(c) => println!("classical piecewise-linear front, same parameters: v = {}", c.velocity),
        Err(_) => println!("classical piecewise-linear front: none (needs a/k > u_c)"),
    }
    Ok(())
}

fn report_failures(label: &str, failures: &[String]) {
    for f in failures.iter().take(MAX_REPORTED) {
        eprintln!("{label}: {f}");
    }
    if failures.len() > MAX_REPORTED {
        eprintln!("{label}: ... {} more", failures.len() - MAX_REPORTED);
    }
}

fn collect_values(points: Vec<(f64, f64, linefront::Result<f64>)>, failures: &mut Vec<String>) -> Vec<(f64, f64, f64)> {
    points
        .into_iter()
        .map(|(x, y, u)| match u {
            Ok(u) => (x, y, u),
            Err(e) => {
                failures.push(format!("({x}, {y}): {e}"));
                (x, y, f64::NAN)
            }
        })
        .collect()
}

pub fn profile(args: &ProfileArgs) -> Outcome {
    let r = args.params.resolve()?;
    let p = r.params;
    let rect = args.grid.clone().or_else(|| r.file.grid.clone()).unwrap_or_else(|| DEFAULT_RECT.into());
    let (xr, yr) = parse_rect(&rect)?;
    let mut out = Output::new(&args.output, &r.file)?;
    let v = physical_speed(&p)?;
    let zero_k = p.is_zero_degradation();
    let policy = r.policy;
    let eval = |x: f64, y: f64| {
        if zero_k {
            front_profile_zero_k_with(&p, x, y, &policy)
        } else {
            front_profile_physical_with(&p, x, y, &policy)
        }
    };

    let (xs, ys) = (xr.values(), yr.values());
    let nx = xs.len();
    let grid_points: Vec<_> = (0..nx * ys.len())
        .into_par_iter()
        .map(|idx| {
            let (x, y) = (xs[idx % nx], ys[idx / nx]);
            (x, y, eval(x, y))
        })
        .collect();
    let line_points: Vec<_> = xs.par_iter().map(|&x| (x, 0.0, eval(x, 0.0))).collect();
    let mut failures = Vec::new();
    let grid_values = collect_values(grid_points, &mut failures);
    let line_values = collect_values(line_points, &mut failures);

    let header = |kind: &str| {
        let mut t = Table::new(&["x", "y", "u"]).with_meta("command", format!("profile ({kind})"));
        param_meta(&mut t, &r);
        t.push_meta("v", v);
        if zero_k {
            t.push_meta("note", "k = 0: the profile grows without bound as x -> -inf");
        }
        t.push_meta("grid", &rect);
        t.push_meta("failures", failures.len());
        t
    };
    let mut grid_table = header("grid");
    for &(x, y, u) in &grid_values {
        grid_table.push_row(vec![x, y, u]);
    }
    let mut line_table = header("line y = 0");
    for &(x, y, u) in &line_values {
        line_table.push_row(vec![x, y, u]);
    }
    out.csv("profile_grid.csv", &grid_table);
    out.csv("profile_line.csv", &line_table);
    out.svg("profile_contour.svg", || {
        ContourMap {
            title: format!("u(x, y), {}", fmt_params(&p)),
            xs: xs.clone(),
            ys: ys.clone(),
            values: grid_values.iter().map(|v| v.2).collect(),
            bands: 10,
        }
        .render()
    });
    out.svg("profile_line.svg", || {
        LineChart::new("u on the production line", "x", "u(x, 0)")
            .with_series("u(x, 0)", line_values.iter().map(|v| (v.0, v.2)).collect())
            .with_series("u_c", vec![(xr.lo, p.threshold), (xr.hi, p.threshold)])
            .render()
    });

    println!("parameters: {}", fmt_params(&p));
    println!("v = {v}");
    match eval(0.0, 0.0) {
        Ok(u) => println!("threshold check: u(0, 0) = {u} (u_c = {})", p.threshold),
        Err(e) => eprintln!("threshold check at (0, 0) failed: {e}"),
    }
    out.commit()?;
    if failures.is_empty() {
        Ok(())
    } else {
        report_failures("profile", &failures);
        Err(Failure::Numerical(format!(
            "{} of {} points failed (written as NaN)",
            failures.len(),
            grid_values.len() + line_values.len()
        )))
    }
}

fn stride(n: usize, max: usize) -> usize {
    n.div_ceil(max).max(1)
}

fn field_svg(state: &FieldState, title: &str) -> String {
    let g = &state.grid;
    let (si, sj) = (stride(g.nx, SVG_MAX_NX), stride(g.ny, SVG_MAX_NY));
    let is: Vec<usize> = (0..g.nx).step_by(si).collect();
    let js: Vec<usize> = (0..g.ny).step_by(sj).collect();
    ContourMap {
        title: title.into(),
        xs: is.iter().map(|&i| g.x(i)).collect(),
        ys: js.iter().map(|&j| g.y(j)).collect(),
        values: js.iter().flat_map(|&j| is.iter().map(move |&i| state.at(i, j))).collect(),
        bands: 10,
    }
    .render()
}

pub fn simulate(args: &SimulateArgs) -> Outcome {
    let mut r = args.params.resolve()?;
    // the exact initial profile is sampled at the default tolerance
    if r.policy != QuadraturePolicy::default() {
        eprintln!("note: --tol/tol does not apply to simulate; using the default quadrature tolerance");
        r.policy = QuadraturePolicy::default();
    }
    let p = r.params;
    if p.is_zero_degradation() {
        return Err(Failure::Config(
            "simulate needs k > 0: the k = 0 front has no bounded rest state behind it".into(),
        ));
    }
    let v = velocity_physical(&p)?;
    let h = match args.grid.clone().or_else(|| r.file.grid.clone()) {
        Some(text) => parse_spacing(&text)?,
        None => resolution_limit(&p)?,
    };
    let t_end = args.t_end.or(r.file.t_end).unwrap_or(DEFAULT_T_END);
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Failure::Config(format!("t-end must be positive, got {t_end}")));
    }
    if let Some(s) = args.snapshot_every {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Failure::Config(format!("snapshot interval must be positive, got {s}")));
        }
    }
    let kind = args.init.or(r.file.init).unwrap_or_default();
    let mirrored = args.mirrored || r.file.mirrored.unwrap_or(false);
    let mut out = Output::new(&args.output, &r.file)?;

    let sign = if mirrored { -1.0 } else { 1.0 };
    let length = Scales::of(&p)?.length;
    let travel = sign * v * t_end;
    let grid = Grid2D::covering(
        travel.min(0.0) - 10.0 * length,
        travel.max(0.0) + 10.0 * length,
        8.0 * length,
        h,
    )?;
    let init = match kind {
        InitKind::Exact => InitialCondition::ExactProfile { origin: 0.0, mirrored },
        InitKind::Step => InitialCondition::StepActivation { origin: 0.0, mirrored },
    };
    let opts = SimOptions {
        snapshot_interval: args.snapshot_every,
        allow_coarse: args.allow_coarse,
        ..SimOptions::default()
    };
    println!("parameters: {}", fmt_params(&p));
    println!(
        "grid: {} x {} nodes, h = {h}, x in [{}, {}], y in [0, {}]",
        grid.nx,
        grid.ny,
        grid.x0,
        grid.x_max(),
        grid.y(grid.ny - 1)
    );
    let sim = run_with(&p, grid, t_end, init, &opts)?;
    let est = estimate_speed(&sim.trace, DEFAULT_DISCARD_FRACTION)?;
    let expected = sign * v;

    let describe = |t: &mut Table| {
        t.push_meta("command", "simulate");
        param_meta(t, &r);
        t.push_meta("scheme", "explicit Euler, 5-point Laplacian, ghost-node flux (a/2) H(u - u_c) on y = 0, Neumann elsewhere");
        t.push_meta("h", h);
        t.push_meta("dt", sim.dt);
        t.push_meta("steps", sim.steps);
        t.push_meta("t_end", t_end);
        t.push_meta("init", format!("{kind:?}{}", if mirrored { ", mirrored" } else { "" }));
        t.push_meta("v_analytic", expected);
        t.push_meta("v_hat", est.v_hat);
        t.push_meta("v_hat_stderr", est.stderr);
        t.push_meta("discard_fraction", DEFAULT_DISCARD_FRACTION);
    };
    let mut trace = trace_table(&sim.trace);
    describe(&mut trace);
    out.csv("trace.csv", &trace);
    let mut field = field_table(&sim.state);
    describe(&mut field);
    out.csv("field.csv", &field);
    for (n, snap) in sim.snapshots.iter().enumerate() {
        let mut t = field_table(snap);
        describe(&mut t);
        out.csv(&format!("field_{n:04}.csv"), &t);
    }
    out.svg("trace.svg", || {
        let (t0, x0) = sim.trace.first().unwrap_or((0.0, 0.0));
        LineChart::new("front position on y = 0", "t", "x_front")
            .with_series("simulated", sim.trace.samples().to_vec())
            .with_series("exact speed", vec![(t0, x0), (t_end, x0 + expected * (t_end - t0))])
            .render()
    });
    out.svg("field.svg", || field_svg(&sim.state, &format!("u at t = {}", format_number(sim.state.t))));
    out.commit()?;

    let gap = if expected != 0.0 {
        format!("relative_gap = {:.3e}", ((est.v_hat - expected) / expected).abs())
    } else {
        format!(
            "relative_gap = n/a (v_analytic = 0), |v_hat| = {:.3e}, resolution 2h/t_end = {:.3e}",
            est.v_hat.abs(),
            2.0 * h / t_end
        )
    };
    println!(
        "summary: v_hat = {} stderr = {:.3e} v_analytic = {} {gap}",
        est.v_hat, est.stderr, expected
    );
    Ok(())
}

pub fn sweep(args: &SweepArgs) -> Outcome {
    let file = match &args.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let text = args.grid.clone().or_else(|| file.grid.clone()).unwrap_or_else(|| DEFAULT_SWEEP.into());
    let range = Range::parse(&text)?;
    if !(range.lo > 0.0 && range.hi < 0.5) {
        return Err(Failure::Config(format!(
            "alpha range {text} must lie inside (0, 1/2); no front exists for alpha >= 1/2"
        )));
    }
    let policy = QuadraturePolicy::default().with_rel_tol(args.tol.or(file.tol).unwrap_or(1e-10));
    policy
        .validate()
        .map_err(|_| Failure::Config(format!("tolerance must be positive and finite, got {}", policy.rel_tol)))?;
    let mut out = Output::new(&args.output, &file)?;
    let alphas = range.values();

    let speeds: Vec<linefront::Result<(f64, f64)>> = alphas
        .par_iter()
        .map(|&alpha| {
            let v = velocity_dimensionless(alpha)?;
            Ok((v, velocity_implicit_residual(alpha, v, &policy)?))
        })
        .collect();
    let bump_alphas: Vec<f64> = alphas.iter().copied().filter(|&a| a < 0.25).collect();
    let bumps: Vec<_> = bump_alphas
        .par_iter()
        .map(|&alpha| homoclinic_find_with(alpha, &policy))
        .collect();

    let mut failures = Vec::new();
    let mut velocity = Table::new(&["alpha", "v_closed_form", "v_implicit_residual"])
        .with_meta("command", "sweep (velocity)")
        .with_meta("alpha_range", &text)
        .with_meta("quadrature", policy_meta(&policy));
    let mut rows = Vec::new();
    for (&alpha, s) in alphas.iter().zip(&speeds) {
        match s {
            Ok((v, res)) => rows.push(vec![alpha, *v, *res]),
            Err(e) => {
                failures.push(format!("alpha = {alpha}: {e}"));
                velocity.push_meta("failed", format!("alpha = {alpha}: {e}"));
                rows.push(vec![alpha, f64::NAN, f64::NAN]);
            }
        }
    }
    for row in &rows {
        velocity.push_row(row.clone());
    }
    let mut homoclinic = Table::new(&["alpha", "zeta", "center_value", "roots", "multiple_roots"])
        .with_meta("command", "sweep (stationary bump on [-zeta, zeta])")
        .with_meta("alpha_range", format!("{text}, alpha < 1/4"))
        .with_meta("quadrature", policy_meta(&policy));
    let mut multi = 0;
    let mut bump_rows = Vec::new();
    for (&alpha, b) in bump_alphas.iter().zip(&bumps) {
        match b {
            Ok(sol) => {
                multi += usize::from(sol.has_multiple_roots());
                bump_rows.push(vec![
                    alpha,
                    sol.zeta,
                    sol.center_value,
                    sol.roots.len() as f64,
                    if sol.has_multiple_roots() { 1.0 } else { 0.0 },
                ]);
            }
            Err(e) => {
                failures.push(format!("bump alpha = {alpha}: {e}"));
                homoclinic.push_meta("failed", format!("alpha = {alpha}: {e}"));
                bump_rows.push(vec![alpha, f64::NAN, f64::NAN, 0.0, 0.0]);
            }
        }
    }
    for row in &bump_rows {
        homoclinic.push_row(row.clone());
    }
    out.csv("velocity_sweep.csv", &velocity);
    out.csv("homoclinic.csv", &homoclinic);
    out.svg("velocity_sweep.svg", || {
        LineChart::new("front speed against threshold", "alpha", "v")
            .with_series("2 cot(2 pi alpha)", rows.iter().map(|r| (r[0], r[1])).collect())
            .render()
    });
    out.svg("homoclinic.svg", || {
        LineChart::new("half-width of the stationary bump", "alpha", "zeta")
            .with_series("zeta", bump_rows.iter().map(|r| (r[0], r[1])).collect())
            .render()
    });
    out.commit()?;

    let good: Vec<&Vec<f64>> = rows.iter().filter(|r| r[1].is_finite()).collect();
    let max_res = good.iter().map(|r| r[2].abs()).fold(0.0, f64::max);
    let decreasing = good.windows(2).all(|w| w[1][1] < w[0][1]);
    println!(
        "velocity sweep: {} points, max |residual| = {max_res:.3e}, v strictly decreasing: {}",
        rows.len(),
        if decreasing { "yes" } else { "no" }
    );
    println!("stationary bumps: {} points, multi-root cases: {multi}", bump_rows.len());
    if failures.is_empty() {
        Ok(())
    } else {
        report_failures("sweep", &failures);
        Err(Failure::Numerical(format!("{} sweep points failed (recorded in the files)", failures.len())))
    }
}

pub fn selftest(only: &[u8]) -> Outcome {
    let known: Vec<u8> = acceptance::criteria().iter().map(|c| c.id).collect();
    if let Some(bad) = only.iter().find(|id| !known.contains(id)) {
        return Err(Failure::Config(format!("unknown criterion id {bad}; ids are 1..={}", known.len())));
    }
    let ids = if only.is_empty() { known } else { only.to_vec() };
    let mut passed = 0;
    let mut total = 0;
    for c in acceptance::criteria().iter().filter(|c| ids.contains(&c.id)) {
        let report = c.run();
        println!("{report}");
        passed += usize::from(report.passed);
        total += 1;
    }
    println!("selftest: {passed}/{total} passed");
    if passed == total {
        Ok(())
    } else {
        Err(Failure::Numerical(format!("{} acceptance criteria failed", total - passed)))
    }
}
