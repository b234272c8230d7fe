use std::f64::consts::PI;

use linefront::error::Error;
use linefront::front::homoclinic::bump_profile;
use linefront::front::zero_k::zero_k_implicit_residual;
use linefront::front::{
    classical_matching_residual, classical_velocity, front_profile_physical, front_profile_zero_k,
    fundamental_solution, homoclinic_find, leading_edge_decay, leading_edge_samples,
    stationary_profile, velocity_implicit_residual, velocity_zero_k,
};
use linefront::model::existence_domain;
use linefront::numerics::{bessel_k0, QuadraturePolicy};
use linefront::{to_dimensionless, velocity_dimensionless, velocity_physical, FrontSolution, PhysicalParams, Regime};

fn reference() -> PhysicalParams {
    PhysicalParams::new(1.0, 1.0, 2.0 * PI, 0.3).unwrap()
}

#[test]
fn reference_parameters() {
    let p = reference();
    let alpha = to_dimensionless(&p).unwrap().alpha;
    assert!((alpha - 0.3 / (2.0 * PI)).abs() < 1e-16);
    let v = velocity_physical(&p).unwrap();
    assert!((v - 2.0 / 0.3f64.tan()).abs() < 1e-12);
    assert_eq!(format!("{v:.2}"), "6.47");
    assert_eq!(existence_domain(alpha).unwrap(), Regime::FastForward);
    // threshold at the front, stationary state far behind
    assert!((front_profile_physical(&p, 0.0, 0.0).unwrap() - 0.3).abs() < 1e-8);
    assert!((front_profile_physical(&p, -400.0, 0.0).unwrap() - PI).abs() < 1e-6);
}

#[test]
fn simple_scalings() {
    let p = PhysicalParams::new(1.0, 1.0, 1.0, 0.25).unwrap();
    assert_eq!(to_dimensionless(&p).unwrap().alpha, 0.25);
    assert_eq!(velocity_physical(&p).unwrap(), 0.0);
    let p = PhysicalParams::new(4.0, 1.0, 2.0, 0.1).unwrap();
    assert!((to_dimensionless(&p).unwrap().alpha - 0.1).abs() < 1e-16);
    assert!(matches!(
        to_dimensionless(&p.with_degradation(0.0)),
        Err(Error::ZeroDegradation)
    ));
}

#[test]
fn regimes() {
    assert_eq!(existence_domain(0.25).unwrap(), Regime::Stationary);
    assert_eq!(existence_domain(0.3).unwrap(), Regime::Backward);
    assert_eq!(existence_domain(0.6).unwrap(), Regime::NoSolution);
    assert!(existence_domain(0.0).is_err());
    assert_eq!(velocity_dimensionless(0.25).unwrap(), 0.0);
    assert!((velocity_dimensionless(0.125).unwrap() - 2.0).abs() < 1e-15);
    assert!(matches!(velocity_dimensionless(0.6), Err(Error::NoSolution { .. })));
}

#[test]
fn implicit_residual_examples() {
    let policy = QuadraturePolicy::default();
    assert!(velocity_implicit_residual(0.25, 0.0, &policy).unwrap().abs() < 1e-10);
    assert!(velocity_implicit_residual(0.125, 2.0, &policy).unwrap().abs() < 1e-8);
    let r = velocity_implicit_residual(0.125, 0.0, &policy).unwrap();
    assert!((r - PI / 4.0).abs() < 1e-9);
}

#[test]
fn profile_examples() {
    let sol = FrontSolution::new(0.125).unwrap();
    assert!((sol.velocity() - 2.0).abs() < 1e-15);
    assert!((sol.profile(0.0, 0.0).unwrap() - 0.125).abs() < 1e-8);
    assert!(sol.profile(40.0, 0.0).unwrap() < 1e-12);
    let behind = sol.profile(-40.0, 1.0).unwrap();
    assert!((behind - 0.183_939_720_585_721_16).abs() < 1e-6);
    assert!((stationary_profile(1.0) - (-1.0f64).exp() / 2.0).abs() < 1e-17);
    assert_eq!(stationary_profile(-1.0), stationary_profile(1.0));
    assert_eq!(stationary_profile(0.0), 0.5);
}

// Behind the front the profile creeps up to the stationary state at the
// trailing rate b - c; with v ~ 6.47 that is slow.
#[test]
fn slow_approach_behind_a_fast_front() {
    let sol = FrontSolution::for_params(&reference()).unwrap();
    let rate = sol.trailing_decay_rate();
    assert!((rate - 0.1511).abs() < 1e-3);
    let mut last = 0.0;
    for x in [-4.0, -10.0, -20.0, -40.0, -80.0] {
        let gap = stationary_profile(0.0) - sol.profile(x, 0.0).unwrap();
        assert!(gap > 0.0 && (last == 0.0 || gap < last), "x = {x}: gap {gap}");
        last = gap;
    }
    let gap4 = stationary_profile(0.0) - sol.profile(-4.0, 0.0).unwrap();
    assert!(gap4 > 0.1, "gap at x = -4 is {gap4}");
    let gap40 = stationary_profile(0.0) - sol.profile(-40.0, 0.0).unwrap();
    assert!(gap40 < 1e-2, "gap at x = -40 is {gap40}");
}

#[test]
fn physical_profile_is_even_in_y() {
    let p = reference();
    for (x, y) in [(-1.0, 0.5), (0.3, 2.0), (2.0, 0.1)] {
        assert_eq!(
            front_profile_physical(&p, x, y).unwrap(),
            front_profile_physical(&p, x, -y).unwrap()
        );
    }
}

#[test]
fn fundamental_solution_examples() {
    let phi = fundamental_solution(1.0, 0.0, 0.0).unwrap();
    assert!((phi - bessel_k0(1.0).unwrap() / (2.0 * PI)).abs() < 1e-16);
    assert!((phi - 0.067_008_1).abs() < 1e-7);
    assert!(fundamental_solution(0.0, 0.0, 1.0).is_err());
    // exp((b + c) x) sqrt(x) Phi(x, 0) -> sqrt(pi/2) / 2 pi
    let (v, x) = (2.0f64, 10.0f64);
    let (c, b) = (v / 2.0, (1.0 + v * v / 4.0).sqrt());
    let scaled = fundamental_solution(x, 0.0, v).unwrap() * ((b + c) * x).exp() * x.sqrt();
    let limit = (PI / 2.0).sqrt() / (2.0 * PI) / b.sqrt();
    assert!((scaled / limit - 1.0).abs() < 0.02, "{scaled} vs {limit}");
}

#[test]
fn zero_degradation_examples() {
    let p = PhysicalParams::new(7.0, 0.0, PI, 1.0).unwrap();
    assert!((velocity_zero_k(&p).unwrap() - 1.0).abs() < 1e-15);
    let p = reference().with_degradation(0.0);
    let v0 = velocity_zero_k(&p).unwrap();
    assert!((v0 - 20.0 / 3.0).abs() < 1e-13);
    assert_eq!(velocity_zero_k(&p.with_diffusion(2.0)).unwrap(), v0);
    assert!(velocity_physical(&p).is_err());
    // threshold at the origin, unbounded growth behind, symmetric in y
    assert!((front_profile_zero_k(&p, 0.0, 0.0).unwrap() - 0.3).abs() < 1e-8);
    let (near, far) = (
        front_profile_zero_k(&p, -2.0, 0.0).unwrap(),
        front_profile_zero_k(&p, -4.0, 0.0).unwrap(),
    );
    assert!(far > near && near > 0.3);
    assert_eq!(
        front_profile_zero_k(&p, 0.5, 0.7).unwrap(),
        front_profile_zero_k(&p, 0.5, -0.7).unwrap()
    );
    let policy = QuadraturePolicy::default();
    assert!(matches!(
        zero_k_implicit_residual(0.3, -1.0, &policy),
        Err(Error::TailDivergence { .. })
    ));
}

#[test]
fn homoclinic_examples() {
    let small = homoclinic_find(0.01).unwrap();
    let large = homoclinic_find(0.1).unwrap();
    assert!(small.zeta < large.zeta && small.zeta > 0.0);
    let policy = QuadraturePolicy::default();
    let edge = bump_profile(large.zeta, large.zeta, 0.0, &policy).unwrap();
    assert!((edge - 0.1).abs() < 1e-8);
    assert!(bump_profile(large.zeta, 0.0, 0.0, &policy).unwrap() > 0.1);
    assert!(bump_profile(large.zeta, 2.0 * large.zeta, 0.0, &policy).unwrap() < 0.1);
    assert!(matches!(homoclinic_find(0.6), Err(Error::NoSolution { .. })));
    assert!(homoclinic_find(0.3).is_err());
}

#[test]
fn classical_examples() {
    let p = PhysicalParams::new(1.0, 0.0, 1.0, 1.0).unwrap();
    assert_eq!(classical_velocity(&p).unwrap().velocity, 1.0);
    // u_c = a / 2k is the symmetric point
    let p = PhysicalParams::new(1.0, 2.0, 1.0, 0.25).unwrap();
    assert!(classical_matching_residual(&p, 0.0).unwrap().abs() < 1e-10);
    assert!(classical_velocity(&p).unwrap().velocity.abs() < 1e-10);
    let p = PhysicalParams::new(1.0, 1.0, 1.0, 0.3).unwrap();
    let v = classical_velocity(&p).unwrap().velocity;
    assert!(v > 0.0 && classical_matching_residual(&p, v).unwrap().abs() < 1e-10);
    // a/k must exceed u_c
    assert!(classical_velocity(&PhysicalParams::new(1.0, 1.0, 1.0, 1.5).unwrap()).is_err());
}

#[test]
fn leading_edge_fit_examples() {
    for alpha in [0.25, 0.125] {
        let sol = FrontSolution::new(alpha).unwrap();
        let fit = leading_edge_decay(&sol, &leading_edge_samples(&sol, 16)).unwrap();
        let gamma = sol.b() + sol.c();
        assert!((fit.gamma / gamma - 1.0).abs() < 0.02, "alpha {alpha}: {fit:?}");
        assert!((0.3..=0.7).contains(&fit.power), "alpha {alpha}: {fit:?}");
    }
}
