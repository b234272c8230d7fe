//! Reference computations that share no code with the solvers they check.

use rayon::prelude::*;

/// `integral_0^z K0(r) dr` from
/// `integral_0^inf (1 - exp(-z cosh t)) / cosh t dt`,
/// which follows from `K0(r) = integral_0^inf exp(-r cosh t) dt`.
///
/// Composite Simpson on `[0, 40]`; the integrand is smooth and bounded by
/// `2 exp(-t)`, so the truncated tail is below `1e-17`.
pub fn k0_integral(z: f64) -> f64 {
    const T: f64 = 40.0;
    const N: usize = 8000;
    let h = T / N as f64;
    let f = |t: f64| {
        let c = t.cosh();
        -(-z * c).exp_m1() / c
    };
    let mut sum = f(0.0) + f(T);
    for i in 1..N {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(i as f64 * h);
    }
    sum * h / 3.0
}

/// Threshold residual of the stationary bump, `(1/2 pi) integral_0^{2 zeta} K0 - alpha`.
pub fn bump_residual(alpha: f64, zeta: f64) -> f64 {
    k0_integral(2.0 * zeta) / (2.0 * std::f64::consts::PI) - alpha
}

/// All half-widths `zeta` in `(0, 20]` solving the bump threshold condition,
/// by a scan with step `1e-3` and bisection of every sign change.
pub fn bump_half_widths(alpha: f64) -> Vec<f64> {
    const STEP: f64 = 1e-3;
    const N: usize = 20_000;
    let g: Vec<f64> = (1..=N)
        .into_par_iter()
        .map(|i| bump_residual(alpha, i as f64 * STEP))
        .collect();
    let mut roots = Vec::new();
    for i in 1..N {
        if g[i - 1] == 0.0 {
            roots.push(i as f64 * STEP);
        } else if g[i - 1].signum() != g[i].signum() {
            let (mut lo, mut hi) = (i as f64 * STEP, (i + 1) as f64 * STEP);
            let mut g_lo = g[i - 1];
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                let g_mid = bump_residual(alpha, mid);
                if g_mid.signum() == g_lo.signum() {
                    lo = mid;
                    g_lo = g_mid;
                } else {
                    hi = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
    }
    roots
}

/// Speed of the 1D piecewise-linear bistable front in closed form,
/// `sqrt(Dk) (1 - 2 theta) / sqrt(theta (1 - theta))` with `theta = k u_c / a`.
pub fn classical_speed(diffusion: f64, degradation: f64, production: f64, threshold: f64) -> f64 {
    let theta = degradation * threshold / production;
    (diffusion * degradation).sqrt() * (1.0 - 2.0 * theta) / (theta * (1.0 - theta)).sqrt()
}

/// `2 cot(x)` as a ratio of cosine and sine.
pub fn two_cot(x: f64) -> f64 {
    2.0 * x.cos() / x.sin()
}
