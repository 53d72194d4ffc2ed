//! Number types the boundary curves are evaluated with.
//!
//! Each curve is written once, generically over [`Real`], and evaluated as
//!
//! * `f64` for plain points,
//! * [`Jet`] for exact derivatives up to third order (truncated Taylor
//!   arithmetic, no finite differences),
//! * [`Gap`] for the chord `γ(t) − γ(ζ)` with full relative accuracy when `t`
//!   and `ζ` are close. Plain subtraction of two nearby points loses
//!   `|log10(t − ζ)|` digits, which the hypersingular kernel cannot afford.

use std::ops::{Add, Div, Mul, Neg, Sub};

pub trait Real:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn constant(c: f64) -> Self;
    fn value(self) -> f64;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn sqrt(self) -> Self;
    /// `self^p` for a positive base (zero allowed when `p >= 1`).
    fn powf(self, p: f64) -> Self;
    fn abs(self) -> Self;

    fn scale(self, c: f64) -> Self {
        self * Self::constant(c)
    }

    fn square(self) -> Self {
        self * self
    }
}

impl Real for f64 {
    fn constant(c: f64) -> Self {
        c
    }
    fn value(self) -> f64 {
        self
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn powf(self, p: f64) -> Self {
        f64::powf(self, p)
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
}

/// Value and first three derivatives of a scalar function of one parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet(pub [f64; 4]);

impl Jet {
    /// The independent variable at `t`.
    pub fn variable(t: f64) -> Self {
        Jet([t, 1.0, 0.0, 0.0])
    }

    /// Chain rule for `φ(self)` given `φ, φ', φ'', φ'''` at the value.
    fn compose(self, phi: [f64; 4]) -> Self {
        let [_, f1, f2, f3] = self.0;
        Jet([
            phi[0],
            phi[1] * f1,
            phi[2] * f1 * f1 + phi[1] * f2,
            phi[3] * f1 * f1 * f1 + 3.0 * phi[2] * f1 * f2 + phi[1] * f3,
        ])
    }

    fn recip(self) -> Self {
        let u = self.0[0];
        let r = 1.0 / u;
        self.compose([r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r])
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet(std::array::from_fn(|k| self.0[k] + o.0[k]))
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet(std::array::from_fn(|k| self.0[k] - o.0[k]))
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet(self.0.map(|v| -v))
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let [f0, f1, f2, f3] = self.0;
        let [g0, g1, g2, g3] = o.0;
        Jet([
            f0 * g0,
            f1 * g0 + f0 * g1,
            f2 * g0 + 2.0 * f1 * g1 + f0 * g2,
            f3 * g0 + 3.0 * f2 * g1 + 3.0 * f1 * g2 + f0 * g3,
        ])
    }
}

impl Div for Jet {
    type Output = Jet;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Jet) -> Jet {
        self * o.recip()
    }
}

impl Real for Jet {
    fn constant(c: f64) -> Self {
        Jet([c, 0.0, 0.0, 0.0])
    }
    fn value(self) -> f64 {
        self.0[0]
    }
    fn sin(self) -> Self {
        let (s, c) = self.0[0].sin_cos();
        self.compose([s, c, -s, -c])
    }
    fn cos(self) -> Self {
        let (s, c) = self.0[0].sin_cos();
        self.compose([c, -s, -c, s])
    }
    fn sqrt(self) -> Self {
        let r = self.0[0].sqrt();
        self.compose([r, 0.5 / r, -0.25 / (r * r * r), 0.375 / (r * r * r * r * r)])
    }
    fn powf(self, p: f64) -> Self {
        let u = self.0[0];
        // coefficient p(p-1)...(p-k+1) times u^(p-k); a zero coefficient wins over a
        // singular power so integer exponents stay finite at u = 0
        let mut phi = [0.0; 4];
        let mut coeff = 1.0;
        for (k, slot) in phi.iter_mut().enumerate() {
            if k > 0 {
                coeff *= p - (k as f64 - 1.0);
            }
            *slot = if coeff == 0.0 { 0.0 } else { coeff * u.powf(p - k as f64) };
        }
        self.compose(phi)
    }
    fn abs(self) -> Self {
        if self.0[0] < 0.0 {
            -self
        } else {
            self
        }
    }
}

/// A quantity evaluated at two parameters together with their accurate
/// difference: `at = f(t)`, `from = f(ζ)`, `diff ≈ f(t) − f(ζ)` to working
/// precision relative to `|f(t) − f(ζ)|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gap {
    pub at: f64,
    pub from: f64,
    pub diff: f64,
}

impl Gap {
    /// The independent variable at the parameter pair `(t, ζ)`.
    pub fn variable(t: f64, zeta: f64) -> Self {
        Gap { at: t, from: zeta, diff: t - zeta }
    }
}

impl Add for Gap {
    type Output = Gap;
    fn add(self, o: Gap) -> Gap {
        Gap { at: self.at + o.at, from: self.from + o.from, diff: self.diff + o.diff }
    }
}

impl Sub for Gap {
    type Output = Gap;
    fn sub(self, o: Gap) -> Gap {
        Gap { at: self.at - o.at, from: self.from - o.from, diff: self.diff - o.diff }
    }
}

impl Neg for Gap {
    type Output = Gap;
    fn neg(self) -> Gap {
        Gap { at: -self.at, from: -self.from, diff: -self.diff }
    }
}

impl Mul for Gap {
    type Output = Gap;
    fn mul(self, o: Gap) -> Gap {
        Gap {
            at: self.at * o.at,
            from: self.from * o.from,
            diff: self.at * o.diff + self.diff * o.from,
        }
    }
}

impl Div for Gap {
    type Output = Gap;
    fn div(self, o: Gap) -> Gap {
        Gap {
            at: self.at / o.at,
            from: self.from / o.from,
            diff: (self.diff * o.from - self.from * o.diff) / (o.at * o.from),
        }
    }
}

impl Real for Gap {
    fn constant(c: f64) -> Self {
        Gap { at: c, from: c, diff: 0.0 }
    }
    fn value(self) -> f64 {
        self.at
    }
    fn sin(self) -> Self {
        let mid = 0.5 * (self.at + self.from);
        Gap {
            at: self.at.sin(),
            from: self.from.sin(),
            diff: 2.0 * mid.cos() * (0.5 * self.diff).sin(),
        }
    }
    fn cos(self) -> Self {
        let mid = 0.5 * (self.at + self.from);
        Gap {
            at: self.at.cos(),
            from: self.from.cos(),
            diff: -2.0 * mid.sin() * (0.5 * self.diff).sin(),
        }
    }
    fn sqrt(self) -> Self {
        let (a, b) = (self.at.sqrt(), self.from.sqrt());
        let denom = a + b;
        Gap { at: a, from: b, diff: if denom > 0.0 { self.diff / denom } else { 0.0 } }
    }
    fn powf(self, p: f64) -> Self {
        let (a, b) = (self.at.powf(p), self.from.powf(p));
        let diff = if self.at > 0.0 && self.from > 0.0 {
            // a^p − b^p = b^p (exp(p ln(1 + d/b)) − 1)
            b * (p * (self.diff / self.from).ln_1p()).exp_m1()
        } else {
            a - b
        };
        Gap { at: a, from: b, diff }
    }
    fn abs(self) -> Self {
        match (self.at >= 0.0, self.from >= 0.0) {
            (true, true) => self,
            (false, false) => -self,
            _ => Gap { at: self.at.abs(), from: self.from.abs(), diff: self.at.abs() - self.from.abs() },
        }
    }
}
