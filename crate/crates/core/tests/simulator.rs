use linefront::error::Error;
use linefront::export::trace_table;
use linefront::simulator::{
    estimate_speed, front_domain, run, run_from, run_with, step, FieldState, FrontTrace, Grid2D,
    InitialCondition, Orientation, SimOptions, DEFAULT_DISCARD_FRACTION, POSITIVITY_TOLERANCE,
};
use linefront::{velocity_physical, PhysicalParams};

// Production never switches on below this threshold.
const NEVER: f64 = 1e300;

#[test]
fn decay_only_matches_exponential() {
    let k = 1.3;
    let p = PhysicalParams::new(0.7, k, 1.0, NEVER).unwrap();
    let grid = Grid2D::covering(-1.0, 1.0, 1.0, 0.1).unwrap();
    let mut state = FieldState::uniform(grid, 1.0).unwrap();
    let dt = 1e-5;
    for _ in 0..1000 {
        state = step(&state, &p, dt).unwrap();
    }
    let exact = (-k * state.t).exp();
    let err = state.u.iter().map(|u| (u - exact).abs()).fold(0.0, f64::max);
    assert!((state.t - 1e-2).abs() < 1e-15);
    assert!(err <= 1e-6, "max error {err:e}");
}

#[test]
fn mass_is_conserved_without_sources_or_sinks() {
    let p = PhysicalParams::new(1.0, 0.0, 1.0, NEVER).unwrap();
    let grid = Grid2D::covering(-3.0, 3.0, 3.0, 0.1).unwrap();
    let u: Vec<f64> = (0..grid.ny)
        .flat_map(|j| (0..grid.nx).map(move |i| (i, j)))
        .map(|(i, j)| {
            let (x, y) = (grid.x(i) - 0.4, grid.y(j) - 0.3);
            (-(x * x + y * y) * 2.0).exp()
        })
        .collect();
    let mut state = FieldState::new(grid, u, 0.0).unwrap();
    let m0 = state.mass();
    let dt = grid.cfl_bound(1.0, 0.0);
    for _ in 0..2000 {
        state = step(&state, &p, dt).unwrap();
    }
    // enough steps for mass to reach every boundary
    assert!(state.line()[0] > 1e-6);
    assert!(((state.mass() - m0) / m0).abs() < 1e-12, "{} vs {m0}", state.mass());
}

#[test]
fn backward_front_recedes() {
    // alpha = 0.35, v = 2 cot(0.7 pi) ~ -1.453
    let p = PhysicalParams::new(1.0, 1.0, 1.0, 0.35).unwrap();
    let v = velocity_physical(&p).unwrap();
    assert!(v < 0.0);
    let t_end = 1.0;
    let grid = front_domain(&p, 0.05, t_end).unwrap();
    let (state, trace) = run(&p, grid, t_end, InitialCondition::exact(0.0)).unwrap();
    let est = estimate_speed(&trace, DEFAULT_DISCARD_FRACTION).unwrap();
    assert!(est.v_hat < 0.0, "v_hat = {}", est.v_hat);
    assert!(((est.v_hat - v) / v).abs() < 0.2, "v_hat = {}, v = {v}", est.v_hat);
    assert!(state.min() >= POSITIVITY_TOLERANCE);
}

#[test]
fn mirrored_step_activation_reverses_direction() {
    // alpha = 1/8, v = 2
    let p = PhysicalParams::new(1.0, 1.0, 1.0, 0.125).unwrap();
    let grid = Grid2D::covering(-12.0, 12.0, 8.0, 0.05).unwrap();
    let opts = SimOptions {
        snapshot_interval: Some(0.25),
        ..SimOptions::default()
    };
    let speed = |mirrored: bool| {
        let init = InitialCondition::StepActivation { origin: 0.0, mirrored };
        let out = run_with(&p, grid, 1.0, init, &opts).unwrap();
        for snap in &out.snapshots {
            assert!(snap.min() >= POSITIVITY_TOLERANCE, "t = {}: min {}", snap.t, snap.min());
        }
        estimate_speed(&out.trace, DEFAULT_DISCARD_FRACTION).unwrap().v_hat
    };
    let (forward, backward) = (speed(false), speed(true));
    assert!(forward > 0.0 && backward < 0.0, "{forward} {backward}");
    assert!(((forward + backward) / forward).abs() < 1e-3, "{forward} {backward}");
}

#[test]
fn front_escape_is_reported() {
    let p = PhysicalParams::new(1.0, 1.0, 1.0, 0.125).unwrap();
    // front starts 2.5 lengths from the right edge and moves at v = 2
    let grid = Grid2D::covering(-10.0, 2.5, 8.0, 0.05).unwrap();
    let err = run(&p, grid, 1.0, InitialCondition::exact(0.0)).unwrap_err();
    assert!(matches!(err, Error::FrontEscape { .. }), "{err:?}");
}

#[test]
fn coarse_grid_is_rejected_unless_allowed() {
    let p = PhysicalParams::new(1.0, 1.0, 1.0, 0.125).unwrap();
    let grid = Grid2D::covering(-10.0, 12.0, 8.0, 0.2).unwrap();
    let err = run(&p, grid, 0.1, InitialCondition::exact(0.0)).unwrap_err();
    assert!(matches!(err, Error::InvalidParams(_)), "{err:?}");
    let opts = SimOptions {
        allow_coarse: true,
        ..SimOptions::default()
    };
    assert!(run_with(&p, grid, 0.1, InitialCondition::exact(0.0), &opts).is_ok());
}

#[test]
fn lost_front_is_reported() {
    // nothing above threshold anywhere
    let p = PhysicalParams::new(1.0, 1.0, 1.0, 0.125).unwrap();
    let grid = Grid2D::covering(-2.0, 2.0, 2.0, 0.1).unwrap();
    let state = FieldState::uniform(grid, 0.0).unwrap();
    let err = run_from(&p, state, 0.1, Orientation::Rightward, &SimOptions::default()).unwrap_err();
    assert!(matches!(err, Error::FrontLost { .. }), "{err:?}");
}

#[test]
fn runs_are_deterministic() {
    let p = PhysicalParams::new(1.0, 1.0, 1.0, 0.2).unwrap();
    let grid = front_domain(&p, 0.05, 0.2).unwrap();
    let a = run(&p, grid, 0.2, InitialCondition::exact(0.0)).unwrap();
    let b = run(&p, grid, 0.2, InitialCondition::exact(0.0)).unwrap();
    assert_eq!(a.0, b.0);
    assert_eq!(trace_table(&a.1).to_csv_string(), trace_table(&b.1).to_csv_string());
}

#[test]
fn synthetic_linear_trace() {
    let samples = (0..50).map(|i| (i as f64 * 0.1, 3.0 * i as f64 * 0.1 - 1.0)).collect();
    let trace = FrontTrace::from_samples(samples).unwrap();
    let est = estimate_speed(&trace, DEFAULT_DISCARD_FRACTION).unwrap();
    assert!((est.v_hat - 3.0).abs() < 1e-12);
    assert!(est.stderr < 1e-12);
    assert_eq!(est.samples, 35);
}
