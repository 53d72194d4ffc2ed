//! Bessel functions of orders 0 and 1 for real arguments.
//!
//! Every kernel in the solver needs some combination of `J`, `Y`, `I` and `K`
//! of orders 0 and 1, always at the same argument `κ|x − y|`, so the work
//! horses here ([`jy01`], [`ik01`]) return all four values of a family at
//! once. Purely imaginary Hankel arguments are never evaluated directly: the
//! kernels rewrite them with
//!
//! ```text
//! H0(iz) = -(2i/π) K0(z),   H1(iz) = -(2/π) K1(z),
//! J0(iz) = I0(z),           J1(iz) = i I1(z).
//! ```
//!
//! Algorithms and switch points:
//!
//! | family | `x < 5`          | `5 <= x < 25`              | `x >= 25`            |
//! |--------|------------------|----------------------------|----------------------|
//! | J, Y   | ascending series | Miller recurrence + Neumann | Hankel asymptotics  |
//!
//! | family | `x <= 2`         | `x > 2`                                     |
//! |--------|------------------|---------------------------------------------|
//! | K      | ascending series | Steed/Temme continued fraction              |
//! | I      | ascending series up to 30, asymptotic expansion beyond         |

use std::f64::consts::{FRAC_1_PI, FRAC_2_PI, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const JY_SERIES_MAX: f64 = 5.0;
const JY_ASYMPTOTIC_MIN: f64 = 25.0;
const K_SERIES_MAX: f64 = 2.0;
const I_SERIES_MAX: f64 = 30.0;
/// Beyond this `I0`, `I1` overflow an `f64`.
const I_OVERFLOW: f64 = 700.0;

/// Bessel function order supported by this module.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Zero,
    One,
}

/// Modified Bessel function kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModifiedKind {
    I,
    K,
}

/// `J0, J1, Y0, Y1` at one argument.
///
/// `y1_regular` is `Y1(x) + 2/(πx)`, the part of `Y1` left after removing the
/// pole. It is computed without cancellation for small `x`, which the
/// hypersingular kernel relies on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselJY {
    pub j0: f64,
    pub j1: f64,
    pub y0: f64,
    pub y1: f64,
    pub y1_regular: f64,
}

impl BesselJY {
    pub fn h0(&self) -> Complex64 {
        Complex64::new(self.j0, self.y0)
    }

    pub fn h1(&self) -> Complex64 {
        Complex64::new(self.j1, self.y1)
    }

    /// `H1(x) + 2i/(πx)`.
    pub fn h1_regular(&self) -> Complex64 {
        Complex64::new(self.j1, self.y1_regular)
    }
}

/// `I0, I1, K0, K1` at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselIK {
    pub i0: f64,
    pub i1: f64,
    pub k0: f64,
    pub k1: f64,
}

/// Bessel function of the first kind, `x >= 0`.
pub fn bessel_j(order: Order, x: f64) -> Result<f64> {
    if !(x.is_finite() && x >= 0.0) {
        return Err(Error::Domain { function: "bessel_j", value: x });
    }
    if x == 0.0 {
        return Ok(match order {
            Order::Zero => 1.0,
            Order::One => 0.0,
        });
    }
    let v = jy01(x);
    Ok(match order {
        Order::Zero => v.j0,
        Order::One => v.j1,
    })
}

/// Bessel function of the second kind, `x > 0`.
pub fn bessel_y(order: Order, x: f64) -> Result<f64> {
    check_positive("bessel_y", x)?;
    let v = jy01(x);
    Ok(match order {
        Order::Zero => v.y0,
        Order::One => v.y1,
    })
}

/// Hankel function of the first kind `J_n(x) + i Y_n(x)`, `x > 0`.
///
/// The logarithmic singularity at the origin is never evaluated here; the
/// kernels split it off analytically.
pub fn hankel1(order: Order, x: f64) -> Result<Complex64> {
    check_positive("hankel1", x)?;
    let v = jy01(x);
    Ok(match order {
        Order::Zero => v.h0(),
        Order::One => v.h1(),
    })
}

/// Modified Bessel functions `I_n(x)` and `K_n(x)`, `x > 0`.
pub fn mod_bessel(kind: ModifiedKind, order: Order, x: f64) -> Result<f64> {
    check_positive("mod_bessel", x)?;
    if kind == ModifiedKind::I && x > I_OVERFLOW {
        return Err(Error::Domain { function: "mod_bessel(I)", value: x });
    }
    let v = ik01(x);
    Ok(match (kind, order) {
        (ModifiedKind::I, Order::Zero) => v.i0,
        (ModifiedKind::I, Order::One) => v.i1,
        (ModifiedKind::K, Order::Zero) => v.k0,
        (ModifiedKind::K, Order::One) => v.k1,
    })
}

fn check_positive(function: &'static str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain { function, value: x })
    }
}

/// `J0, J1, Y0, Y1` for `x > 0`. The caller guarantees the domain.
pub fn jy01(x: f64) -> BesselJY {
    debug_assert!(x > 0.0);
    if x < JY_SERIES_MAX {
        jy_series(x)
    } else if x < JY_ASYMPTOTIC_MIN {
        jy_miller(x)
    } else {
        jy_asymptotic(x)
    }
}

/// `I0, I1, K0, K1` for `0 < x <= 700`. The caller guarantees the domain.
pub fn ik01(x: f64) -> BesselIK {
    debug_assert!(x > 0.0);
    let (i0, i1) = if x <= I_SERIES_MAX { i_series(x) } else { i_asymptotic(x) };
    let (k0, k1) = if x <= K_SERIES_MAX {
        k_series(x, i0, i1)
    } else {
        k_continued_fraction(x)
    };
    BesselIK { i0, i1, k0, k1 }
}

fn jy_series(x: f64) -> BesselJY {
    let q = 0.25 * x * x;
    let log_half = (0.5 * x).ln();

    // J0 = sum (-q)^k / (k!)^2,  Y0 tail = sum (-1)^(k+1) H_k q^k / (k!)^2
    let mut term = 1.0;
    let mut j0 = 1.0;
    let mut y0_tail = 0.0;
    let mut harmonic = 0.0;
    for k in 1..60 {
        let kf = k as f64;
        term *= -q / (kf * kf);
        harmonic += 1.0 / kf;
        j0 += term;
        y0_tail -= harmonic * term;
        if term.abs() * (1.0 + harmonic) < 1e-18 {
            break;
        }
    }

    // J1 = (x/2) sum (-q)^k / (k!(k+1)!)
    // psi(k+1) + psi(k+2) = -2γ + H_k + H_{k+1}
    let mut term = 1.0;
    let mut j1_sum = 1.0;
    let mut harmonic = 0.0;
    let mut y1_sum = -2.0 * EULER_GAMMA + 1.0;
    for k in 1..60 {
        let kf = k as f64;
        term *= -q / (kf * (kf + 1.0));
        harmonic += 1.0 / kf;
        let psi_sum = -2.0 * EULER_GAMMA + 2.0 * harmonic + 1.0 / (kf + 1.0);
        j1_sum += term;
        y1_sum += psi_sum * term;
        if term.abs() * (1.0 + psi_sum.abs()) < 1e-18 {
            break;
        }
    }
    let j1 = 0.5 * x * j1_sum;

    let y0 = FRAC_2_PI * ((log_half + EULER_GAMMA) * j0 + y0_tail);
    let y1_regular = FRAC_2_PI * log_half * j1 - FRAC_1_PI * 0.5 * x * y1_sum;
    BesselJY { j0, j1, y0, y1: y1_regular - FRAC_2_PI / x, y1_regular }
}

/// Backward recurrence for `J_k`, normalised by `1 = J0 + 2 Σ J_2k`, with the
/// Neumann series for `Y0` and `Y1`.
fn jy_miller(x: f64) -> BesselJY {
    let start = 2 * ((x + 40.0) / 2.0) as usize;
    let (mut f2, mut f1) = (0.0_f64, 1e-100_f64);
    let (mut norm, mut even_sum, mut odd_sum) = (0.0, 0.0, 0.0);
    let (mut j0, mut j1) = (0.0, 0.0);
    for k in (0..=start).rev() {
        let f = 2.0 * (k as f64 + 1.0) / x * f1 - f2;
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            if k != 0 {
                norm += 2.0 * f;
                even_sum += sign * f / k as f64;
            }
        } else if k > 1 {
            let kf = k as f64;
            odd_sum += sign * kf / (kf * kf - 1.0) * f;
        }
        match k {
            0 => j0 = f,
            1 => j1 = f,
            _ => {}
        }
        f2 = f1;
        f1 = f;
    }
    let norm = norm + j0;
    let (j0, j1) = (j0 / norm, j1 / norm);
    let ec = (0.5 * x).ln() + EULER_GAMMA;
    let y0 = FRAC_2_PI * (ec * j0 - 4.0 * even_sum / norm);
    let y1 = FRAC_2_PI * ((ec - 1.0) * j1 - j0 / x - 4.0 * odd_sum / norm);
    BesselJY { j0, j1, y0, y1, y1_regular: y1 + FRAC_2_PI / x }
}

/// Hankel's `P` and `Q` series for order `nu`.
fn hankel_pq(nu: f64, x: f64) -> (f64, f64) {
    let mu = 4.0 * nu * nu;
    let (mut p, mut q) = (1.0, 0.0);
    let mut term = 1.0_f64;
    let mut last = f64::INFINITY;
    for k in 1..80 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        if term.abs() > last {
            break;
        }
        last = term.abs();
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() < 1e-18 {
            break;
        }
    }
    (p, q)
}

fn jy_asymptotic(x: f64) -> BesselJY {
    let amp = (FRAC_2_PI / x).sqrt();
    let (s, c) = x.sin_cos();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    // χ0 = x − π/4, χ1 = x − 3π/4
    let (cos0, sin0) = (r * (c + s), r * (s - c));
    let (cos1, sin1) = (r * (s - c), -r * (s + c));
    let (p0, q0) = hankel_pq(0.0, x);
    let (p1, q1) = hankel_pq(1.0, x);
    let j0 = amp * (p0 * cos0 - q0 * sin0);
    let y0 = amp * (p0 * sin0 + q0 * cos0);
    let j1 = amp * (p1 * cos1 - q1 * sin1);
    let y1 = amp * (p1 * sin1 + q1 * cos1);
    BesselJY { j0, j1, y0, y1, y1_regular: y1 + FRAC_2_PI / x }
}

fn i_series(x: f64) -> (f64, f64) {
    let q = 0.25 * x * x;
    let (mut t0, mut s0) = (1.0, 1.0);
    let (mut t1, mut s1) = (1.0, 1.0);
    for k in 1..200 {
        let kf = k as f64;
        t0 *= q / (kf * kf);
        t1 *= q / (kf * (kf + 1.0));
        s0 += t0;
        s1 += t1;
        if t0 < 1e-18 * s0 && t1 < 1e-18 * s1 {
            break;
        }
    }
    (s0, 0.5 * x * s1)
}

fn i_asymptotic(x: f64) -> (f64, f64) {
    let series = |nu: f64| {
        let mu = 4.0 * nu * nu;
        let mut sum = 1.0;
        let mut term = 1.0_f64;
        for k in 1..80 {
            let odd = (2 * k - 1) as f64;
            term *= -(mu - odd * odd) / (k as f64 * 8.0 * x);
            sum += term;
            if term.abs() < 1e-18 {
                break;
            }
        }
        sum
    };
    let scale = x.exp() / (2.0 * PI * x).sqrt();
    (scale * series(0.0), scale * series(1.0))
}

fn k_series(x: f64, i0: f64, i1: f64) -> (f64, f64) {
    let q = 0.25 * x * x;
    let log_half = (0.5 * x).ln();

    let mut term = 1.0;
    let mut harmonic = 0.0;
    let mut k0_tail = 0.0;
    for k in 1..60 {
        let kf = k as f64;
        term *= q / (kf * kf);
        harmonic += 1.0 / kf;
        k0_tail += harmonic * term;
        if term * harmonic < 1e-18 * k0_tail {
            break;
        }
    }
    let k0 = -(log_half + EULER_GAMMA) * i0 + k0_tail;

    let mut term = 1.0;
    let mut harmonic = 0.0;
    let mut k1_sum = -2.0 * EULER_GAMMA + 1.0;
    for k in 1..60 {
        let kf = k as f64;
        term *= q / (kf * (kf + 1.0));
        harmonic += 1.0 / kf;
        let psi_sum = -2.0 * EULER_GAMMA + 2.0 * harmonic + 1.0 / (kf + 1.0);
        k1_sum += psi_sum * term;
        if (term * psi_sum).abs() < 1e-18 * k1_sum.abs().max(1.0) {
            break;
        }
    }
    let k1 = 1.0 / x + log_half * i1 - 0.25 * x * k1_sum;
    (k0, k1)
}

/// Steed's algorithm for Temme's second continued fraction, order zero.
fn k_continued_fraction(x: f64) -> (f64, f64) {
    const A1: f64 = 0.25;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = d;
    let (mut q1, mut q2) = (0.0, 1.0);
    let mut q = A1;
    let mut c = A1;
    let mut a = -A1;
    let mut s = 1.0 + q * delh;
    for i in 2..10_000 {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    let h = A1 * h;
    let k0 = (PI / (2.0 * x)).sqrt() * (-x).exp() / s;
    let k1 = k0 * (x + 0.5 - h) / x;
    (k0, k1)
}
