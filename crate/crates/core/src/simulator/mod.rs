//! Explicit finite-difference integration of the half-plane problem.
//!
//! By symmetry in `y` the line source is equivalent to the flux condition
//! `D u_y = -(a/2) H(u - u_c)` on `y = 0`, so only `y >= 0` is stored. The
//! scheme is forward Euler with the 5-point Laplacian; the boundary row uses
//! a ghost node carrying the production flux, and the other three edges
//! reflect. The threshold is applied sharply to the nodal value, so the
//! tracked front position moves in steps of order `dx`, smoothed out by
//! interpolating the crossing of `u_c` between nodes.
//!
//! Everything here works in physical units.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::front::{velocity_physical, velocity_zero_k, FrontSolution};
use crate::model::{PhysicalParams, Scales};

mod grid;
mod trace;

pub use grid::Grid2D;
pub use trace::{estimate_speed, FrontTrace, SpeedEstimate, DEFAULT_DISCARD_FRACTION};

/// Lowest value of `u` tolerated before the run is declared broken.
pub const POSITIVITY_TOLERANCE: f64 = -1e-12;

/// Concentration on a [`Grid2D`] at time `t`, stored row by row from `y = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    pub grid: Grid2D,
    pub u: Vec<f64>,
    pub t: f64,
}

impl FieldState {
    pub fn new(grid: Grid2D, u: Vec<f64>, t: f64) -> Result<Self> {
        grid.validate()?;
        if u.len() != grid.len() {
            return Err(Error::InvalidParams(format!(
                "field has {} values for a {} x {} grid",
                u.len(),
                grid.nx,
                grid.ny
            )));
        }
        if let Some(bad) = u.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("initial value at index {bad}")));
        }
        Ok(Self { grid, u, t })
    }

    pub fn uniform(grid: Grid2D, value: f64) -> Result<Self> {
        Self::new(grid, vec![value; grid.len()], 0.0)
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.u[self.grid.index(i, j)]
    }

    /// Values on the production line `y = 0`.
    pub fn line(&self) -> &[f64] {
        &self.u[..self.grid.nx]
    }

    /// Trapezoid-rule integral of `u` over the stored half-plane.
    pub fn mass(&self) -> f64 {
        let g = &self.grid;
        (0..g.ny)
            .flat_map(|j| (0..g.nx).map(move |i| (i, j)))
            .map(|(i, j)| g.weight(i, j) * self.at(i, j))
            .sum()
    }

    pub fn min(&self) -> f64 {
        self.u.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Front position along `y = 0`, interpolated between nodes.
    ///
    /// `Rightward` picks the largest `x` with `u >= u_c`, `Leftward` the smallest.
    pub fn front_position(&self, threshold: f64, orientation: Orientation) -> Option<f64> {
        let line = self.line();
        let g = &self.grid;
        match orientation {
            Orientation::Rightward => {
                let i = line.iter().rposition(|&u| u >= threshold)?;
                if i + 1 == line.len() {
                    return Some(g.x(i));
                }
                let frac = (line[i] - threshold) / (line[i] - line[i + 1]);
                Some(g.x(i) + frac * g.dx)
            }
            Orientation::Leftward => {
                let i = line.iter().position(|&u| u >= threshold)?;
                if i == 0 {
                    return Some(g.x(0));
                }
                let frac = (line[i] - threshold) / (line[i] - line[i - 1]);
                Some(g.x(i) - frac * g.dx)
            }
        }
    }
}

/// Which side of the active region is tracked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// Active region on the left, front faces `+x`.
    Rightward,
    /// Active region on the right, front faces `-x`.
    Leftward,
}

/// How the field is filled at `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialCondition {
    /// The exact travelling profile with its switching point at `x = origin`.
    ExactProfile { origin: f64, mirrored: bool },
    /// Stationary profile `a/(2 sqrt(kD)) exp(-|y| sqrt(k/D))` on the active
    /// side of `origin`, zero on the other.
    StepActivation { origin: f64, mirrored: bool },
}

impl InitialCondition {
    pub fn exact(origin: f64) -> Self {
        InitialCondition::ExactProfile {
            origin,
            mirrored: false,
        }
    }

    pub fn step(origin: f64) -> Self {
        InitialCondition::StepActivation {
            origin,
            mirrored: false,
        }
    }

    pub fn orientation(&self) -> Orientation {
        let mirrored = match *self {
            InitialCondition::ExactProfile { mirrored, .. } => mirrored,
            InitialCondition::StepActivation { mirrored, .. } => mirrored,
        };
        if mirrored {
            Orientation::Leftward
        } else {
            Orientation::Rightward
        }
    }

    pub fn build(&self, grid: &Grid2D, p: &PhysicalParams) -> Result<FieldState> {
        grid.validate()?;
        let scales = Scales::of(p)?;
        let u = match *self {
            InitialCondition::ExactProfile { origin, mirrored } => {
                let sol = FrontSolution::for_params(p)?;
                let sign = if mirrored { -1.0 } else { 1.0 };
                // profile_row wants increasing abscissae
                let mut xs: Vec<f64> = grid
                    .xs()
                    .iter()
                    .map(|&x| scales.length_to_dimensionless(sign * (x - origin)))
                    .collect();
                if mirrored {
                    xs.reverse();
                }
                let rows: Vec<Vec<f64>> = (0..grid.ny)
                    .into_par_iter()
                    .map(|j| {
                        let mut row = sol.profile_row(&xs, scales.length_to_dimensionless(grid.y(j)))?;
                        if mirrored {
                            row.reverse();
                        }
                        Ok(row.into_iter().map(|u| scales.concentration_to_physical(u)).collect())
                    })
                    .collect::<Result<_>>()?;
                rows.concat()
            }
            InitialCondition::StepActivation { origin, mirrored } => {
                let mut u = vec![0.0; grid.len()];
                for j in 0..grid.ny {
                    let level = scales
                        .concentration_to_physical(0.5 * (-scales.length_to_dimensionless(grid.y(j))).exp());
                    for i in 0..grid.nx {
                        let x = grid.x(i);
                        let active = if mirrored { x >= origin } else { x <= origin };
                        if active {
                            u[grid.index(i, j)] = level;
                        }
                    }
                }
                u
            }
        };
        FieldState::new(*grid, u, 0.0)
    }
}

/// Advances the field by one explicit step of length `dt`.
pub fn step(state: &FieldState, p: &PhysicalParams, dt: f64) -> Result<FieldState> {
    let mut next = state.clone();
    step_into(state, &mut next, p, dt)?;
    Ok(next)
}

fn check_dt(grid: &Grid2D, p: &PhysicalParams, dt: f64) -> Result<()> {
    let bound = grid.cfl_bound(p.diffusion, p.degradation);
    if !(dt > 0.0) || dt > bound {
        return Err(Error::CflViolation { dt, bound });
    }
    Ok(())
}

fn step_into(state: &FieldState, next: &mut FieldState, p: &PhysicalParams, dt: f64) -> Result<()> {
    p.validate()?;
    let g = state.grid;
    check_dt(&g, p, dt)?;
    let (nx, ny) = (g.nx, g.ny);
    let cx = p.diffusion / (g.dx * g.dx);
    let cy = p.diffusion / (g.dy * g.dy);
    let source = p.production / g.dy;
    let k = p.degradation;
    let uc = p.threshold;
    let old = &state.u;

    let (wx, wy) = (dt * cx, dt * cy);
    let centre = 1.0 - dt * (2.0 * cx + 2.0 * cy + k);
    let kick = dt * source;

    let (row_min, row_sum) = next
        .u
        .par_chunks_mut(nx)
        .enumerate()
        .map(|(j, out)| {
            let row = &old[j * nx..(j + 1) * nx];
            // reflected neighbours; on y = 0 the ghost node carries the source
            let (below, above) = if j == 0 {
                (&old[nx..2 * nx], &old[nx..2 * nx])
            } else if j == ny - 1 {
                let r = &old[(j - 1) * nx..j * nx];
                (r, r)
            } else {
                (&old[(j - 1) * nx..j * nx], &old[(j + 1) * nx..(j + 2) * nx])
            };
            let update = |u: f64, left: f64, right: f64, vert: f64| centre * u + wx * (left + right) + wy * vert;
            out[0] = update(row[0], row[1], row[1], below[0] + above[0]);
            out[nx - 1] = update(row[nx - 1], row[nx - 2], row[nx - 2], below[nx - 1] + above[nx - 1]);
            for (((o, w), b), a) in out[1..nx - 1]
                .iter_mut()
                .zip(row.windows(3))
                .zip(&below[1..nx - 1])
                .zip(&above[1..nx - 1])
            {
                *o = update(w[1], w[0], w[2], b + a);
            }
            if j == 0 {
                for (o, &u) in out.iter_mut().zip(row) {
                    if u >= uc {
                        *o += kick;
                    }
                }
            }
            out.iter()
                .fold((f64::INFINITY, 0.0), |(lo, sum), &v| (if v < lo { v } else { lo }, sum + v))
        })
        .reduce(|| (f64::INFINITY, 0.0), |a, b| (a.0.min(b.0), a.1 + b.1));

    next.t = state.t + dt;
    if !row_sum.is_finite() {
        return Err(Error::NonFinite(format!("field after step to t = {}", next.t)));
    }
    if row_min < POSITIVITY_TOLERANCE {
        return Err(Error::Positivity {
            t: next.t,
            min: row_min,
        });
    }
    Ok(())
}

/// Knobs of a simulation run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimOptions {
    /// Time step; defaults to the stability bound of the grid.
    pub dt: Option<f64>,
    /// Number of evenly spaced front samples after `t = 0`.
    pub trace_samples: usize,
    /// Distance from the `x` edges at which the front is considered escaped;
    /// defaults to two diffusion lengths `sqrt(D/k)`, or `10 dx` when `k = 0`.
    pub guard_band: Option<f64>,
    /// Interval between stored field snapshots; `None` keeps only the final state.
    pub snapshot_interval: Option<f64>,
    /// Skip the check that the grid resolves the front.
    pub allow_coarse: bool,
}

impl Default for SimOptions {
    fn default() -> Self {
        Self {
            dt: None,
            trace_samples: 200,
            guard_band: None,
            snapshot_interval: None,
            allow_coarse: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SimOutput {
    pub state: FieldState,
    pub trace: FrontTrace,
    pub snapshots: Vec<FieldState>,
    pub dt: f64,
    pub steps: usize,
}

/// Coarsest spacing that resolves the front: `min(0.05 sqrt(D/k), 0.2 D/|v|)`.
pub fn resolution_limit(p: &PhysicalParams) -> Result<f64> {
    p.validate()?;
    if p.is_zero_degradation() {
        return Ok(0.2 * p.diffusion / velocity_zero_k(p)?);
    }
    let length = Scales::of(p)?.length;
    let v = velocity_physical(p)?;
    Ok(if v == 0.0 {
        0.05 * length
    } else {
        (0.05 * length).min(0.2 * p.diffusion / v.abs())
    })
}

/// A grid with spacing `h` for following a front that starts at `x = 0`
/// for a time `t_end`: ten diffusion lengths of margin on either side of the
/// path and eight above the line.
pub fn front_domain(p: &PhysicalParams, h: f64, t_end: f64) -> Result<Grid2D> {
    let length = Scales::of(p)?.length;
    let travel = velocity_physical(p)? * t_end;
    Grid2D::covering(
        travel.min(0.0) - 10.0 * length,
        travel.max(0.0) + 10.0 * length,
        8.0 * length,
        h,
    )
}

/// Runs from `init` to `t_end` with default options.
pub fn run(
    p: &PhysicalParams,
    grid: Grid2D,
    t_end: f64,
    init: InitialCondition,
) -> Result<(FieldState, FrontTrace)> {
    let out = run_with(p, grid, t_end, init, &SimOptions::default())?;
    Ok((out.state, out.trace))
}

pub fn run_with(
    p: &PhysicalParams,
    grid: Grid2D,
    t_end: f64,
    init: InitialCondition,
    opts: &SimOptions,
) -> Result<SimOutput> {
    p.validate()?;
    grid.validate()?;
    if !opts.allow_coarse {
        let limit = resolution_limit(p)?;
        if grid.dx > limit * (1.0 + 1e-12) || grid.dy > limit * (1.0 + 1e-12) {
            return Err(Error::InvalidParams(format!(
                "grid spacing ({}, {}) does not resolve the front; need at most {limit}",
                grid.dx, grid.dy
            )));
        }
    }
    let state = init.build(&grid, p)?;
    run_from(p, state, t_end, init.orientation(), opts)
}

/// Runs from an arbitrary initial field.
pub fn run_from(
    p: &PhysicalParams,
    initial: FieldState,
    t_end: f64,
    orientation: Orientation,
    opts: &SimOptions,
) -> Result<SimOutput> {
    p.validate()?;
    let grid = initial.grid;
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::InvalidParams(format!("t_end must be positive, got {t_end}")));
    }
    let dt_max = opts.dt.unwrap_or_else(|| grid.cfl_bound(p.diffusion, p.degradation));
    check_dt(&grid, p, dt_max)?;
    let steps = (t_end / dt_max).ceil().max(1.0) as usize;
    let dt = t_end / steps as f64;
    let guard = match opts.guard_band {
        Some(g) => g,
        None if p.is_zero_degradation() => 10.0 * grid.dx,
        None => 2.0 * Scales::of(p)?.length,
    };
    let samples = opts.trace_samples.max(1);
    let snapshot_every = opts
        .snapshot_interval
        .map(|s| ((s / dt).round() as usize).max(1));

    let t0 = initial.t;
    let mut trace = FrontTrace::new();
    let mut snapshots = Vec::new();
    let record = |state: &FieldState, trace: &mut FrontTrace| -> Result<()> {
        let x = state
            .front_position(p.threshold, orientation)
            .ok_or(Error::FrontLost { t: state.t })?;
        if x < grid.x0 + guard || x > grid.x_max() - guard {
            return Err(Error::FrontEscape { t: state.t, x_front: x });
        }
        trace.push(state.t, x)
    };

    let mut current = initial;
    record(&current, &mut trace)?;
    if snapshot_every.is_some() {
        snapshots.push(current.clone());
    }
    let mut next = current.clone();
    let mut sampled = 0;
    for n in 1..=steps {
        step_into(&current, &mut next, p, dt)?;
        next.t = t0 + n as f64 * dt;
        std::mem::swap(&mut current, &mut next);
        // sample when n crosses the next of `samples` evenly spaced marks
        if n * samples >= (sampled + 1) * steps {
            sampled += 1;
            record(&current, &mut trace)?;
        }
        if let Some(every) = snapshot_every {
            if n % every == 0 {
                snapshots.push(current.clone());
            }
        }
    }
    Ok(SimOutput {
        state: current,
        trace,
        snapshots,
        dt,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_grid() -> Grid2D {
        Grid2D::covering(-1.0, 1.0, 1.0, 0.1).unwrap()
    }

    #[test]
    fn cfl_violation_is_reported() {
        let p = PhysicalParams::new(1.0, 1.0, 1.0, 0.1).unwrap();
        let state = FieldState::uniform(small_grid(), 1.0).unwrap();
        let bound = small_grid().cfl_bound(1.0, 1.0);
        assert!(matches!(step(&state, &p, 1.01 * bound), Err(Error::CflViolation { .. })));
        assert!(step(&state, &p, bound).is_ok());
    }

    #[test]
    fn uniform_field_decays() {
        // production never switches on below threshold
        let p = PhysicalParams::new(1.0, 2.0, 1.0, 10.0).unwrap();
        let mut state = FieldState::uniform(small_grid(), 1.0).unwrap();
        let dt = 1e-3;
        for _ in 0..100 {
            state = step(&state, &p, dt).unwrap();
        }
        let expected = (1.0 - 2.0 * dt).powi(100);
        assert!(state.u.iter().all(|&u| (u - expected).abs() < 1e-14));
    }

    #[test]
    fn front_position_interpolates() {
        let g = Grid2D::new(10, 8, 1.0, 1.0, 0.0).unwrap();
        let mut u = vec![0.0; g.len()];
        u[..10].copy_from_slice(&[1.0, 1.0, 1.0, 0.8, 0.4, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let state = FieldState::new(g, u, 0.0).unwrap();
        let x = state.front_position(0.6, Orientation::Rightward).unwrap();
        assert!((x - 3.5).abs() < 1e-12);
        assert!(state.front_position(2.0, Orientation::Rightward).is_none());
        assert_eq!(state.front_position(0.6, Orientation::Leftward), Some(0.0));
    }

    #[test]
    fn step_activation_shape() {
        let p = PhysicalParams::new(1.0, 1.0, 2.0, 0.3).unwrap();
        let g = small_grid();
        let s = InitialCondition::step(0.0).build(&g, &p).unwrap();
        assert_eq!(s.at(0, 0), 1.0);
        assert_eq!(s.at(g.nx - 1, 0), 0.0);
        let m = InitialCondition::StepActivation {
            origin: 0.0,
            mirrored: true,
        }
        .build(&g, &p)
        .unwrap();
        assert_eq!(m.at(0, 3), s.at(g.nx - 1, 3));
        assert_eq!(m.at(g.nx - 1, 3), s.at(0, 3));
    }

    #[test]
    fn exact_profile_initial_condition() {
        let p = PhysicalParams::new(1.0, 1.0, 2.0 * std::f64::consts::PI, 0.3).unwrap();
        let g = Grid2D::covering(-2.0, 2.0, 1.0, 0.05).unwrap();
        let s = InitialCondition::exact(0.0).build(&g, &p).unwrap();
        let x = s.front_position(p.threshold, Orientation::Rightward).unwrap();
        assert!(x.abs() < 0.01);
        let m = InitialCondition::ExactProfile {
            origin: 0.0,
            mirrored: true,
        }
        .build(&g, &p)
        .unwrap();
        let xm = m.front_position(p.threshold, Orientation::Leftward).unwrap();
        assert!(xm.abs() < 0.01);
        assert!((m.at(10, 4) - s.at(g.nx - 11, 4)).abs() < 1e-12);
    }

    #[test]
    fn zero_k_needs_other_init() {
        let p = PhysicalParams::new(1.0, 0.0, 1.0, 0.3).unwrap();
        assert!(InitialCondition::step(0.0).build(&small_grid(), &p).is_err());
    }
}
