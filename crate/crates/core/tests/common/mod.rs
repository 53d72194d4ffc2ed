//! Reference values computed independently of the library: power series and
//! integral representations evaluated by quadrature rules that converge
//! geometrically for these integrands.
#![allow(dead_code)]

use std::f64::consts::PI;

/// `J_n(x)` by its power series, summed in long-double-free but
/// cancellation-aware form; accurate for `x` up to about 8.
pub fn j_series(n: u32, x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = (0.5 * x).powi(n as i32) / (1..=n).map(f64::from).product::<f64>();
    let mut sum = term;
    for k in 1..200 {
        let kf = k as f64;
        term *= q / (kf * (kf + n as f64));
        sum += term;
        if term.abs() < 1e-20 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

/// `I_n(x)` by its power series.
pub fn i_series(n: u32, x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = (0.5 * x).powi(n as i32) / (1..=n).map(f64::from).product::<f64>();
    let mut sum = term;
    for k in 1..400 {
        let kf = k as f64;
        term *= q / (kf * (kf + n as f64));
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
    }
    sum
}

/// `J_n(x) = (1/2π) ∫_0^{2π} cos(nτ − x sin τ) dτ`, periodic trapezoid rule.
pub fn j_integral(n: u32, x: f64) -> f64 {
    let m = 64 + 2 * x.ceil() as usize;
    let h = 2.0 * PI / m as f64;
    (0..m).map(|k| (n as f64 * k as f64 * h - x * (k as f64 * h).sin()).cos()).sum::<f64>() / m as f64
}

/// `I_n(x) = (1/2π) ∫_0^{2π} e^{x cos τ} cos(nτ) dτ`, periodic trapezoid rule.
pub fn i_integral(n: u32, x: f64) -> f64 {
    let m = 64 + 2 * x.ceil() as usize;
    let h = 2.0 * PI / m as f64;
    (0..m).map(|k| (x * (k as f64 * h).cos()).exp() * (n as f64 * k as f64 * h).cos()).sum::<f64>() / m as f64
}

/// `K_n(x) = ∫_0^∞ e^{−x cosh s} cosh(ns) ds`; the integrand decays double
/// exponentially, so the trapezoid rule on a truncated line converges fast.
pub fn k_integral(n: u32, x: f64) -> f64 {
    let h = 0.01;
    let mut sum = 0.5 * (-x).exp();
    let mut k = 1;
    loop {
        let s = k as f64 * h;
        let f = (-x * s.cosh()).exp() * (n as f64 * s).cosh();
        sum += f;
        if f < 1e-30 * sum.max(1e-300) || k > 100_000 {
            break;
        }
        k += 1;
    }
    sum * h
}

/// `Y_n(x) = (1/π)∫_0^π sin(x sin τ − nτ) dτ − (1/π)∫_0^∞ (e^{ns} + (−1)^n e^{−ns}) e^{−x sinh s} ds`,
/// both by composite Gauss–Legendre, the second truncated where the
/// integrand is below `e^{−80}`.
pub fn y_integral(n: u32, x: f64) -> f64 {
    let nf = n as f64;
    let first = gauss_legendre(|t| (x * t.sin() - nf * t).sin(), 0.0, PI, 200);
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let g = |s: f64| ((nf * s).exp() + sign * (-nf * s).exp()) * (-x * s.sinh()).exp();
    let mut upper = (80.0 / x).asinh();
    while x * upper.sinh() < 80.0 + nf * upper {
        upper += 0.5;
    }
    let second = gauss_legendre(g, 0.0, upper, 400);
    (first - second) / PI
}

/// Composite 8-point Gauss–Legendre on `[a, b]` with `panels` panels.
pub fn gauss_legendre(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    const X: [f64; 4] = [0.183_434_642_495_649_8, 0.525_532_409_916_329, 0.796_666_477_413_626_7, 0.960_289_856_497_536_3];
    const W: [f64; 4] = [0.362_683_783_378_362, 0.313_706_645_877_887_3, 0.222_381_034_453_374_5, 0.101_228_536_290_376_3];
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        for (x, w) in X.iter().zip(W) {
            total += w * (f(mid - 0.5 * h * x) + f(mid + 0.5 * h * x));
        }
    }
    0.5 * h * total
}

/// Relative difference with an absolute floor of 1.
pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}
