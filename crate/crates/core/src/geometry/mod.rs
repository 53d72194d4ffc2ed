//! Boundary curves with exact derivative jets, the corner grading
//! substitution, and collocation grids.

mod scalar;

pub use scalar::{Gap, Jet, Real};

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vec2 = [f64; 2];

pub(crate) fn dot(a: Vec2, b: Vec2) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

/// Position and derivatives of a curve at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveJet {
    pub point: Vec2,
    pub d1: Vec2,
    pub d2: Vec2,
    pub d3: Vec2,
    /// `(γ2', −γ1')`, outward for counter-clockwise curves, not normalised.
    pub normal: Vec2,
    /// `|γ'|`.
    pub speed: f64,
}

impl CurveJet {
    fn from_jets(x: Jet, y: Jet) -> Self {
        let [x0, x1, x2, x3] = x.0;
        let [y0, y1, y2, y3] = y.0;
        CurveJet {
            point: [x0, y0],
            d1: [x1, y1],
            d2: [x2, y2],
            d3: [x3, y3],
            normal: [y1, -x1],
            speed: x1.hypot(y1),
        }
    }

    pub fn unit_normal(&self) -> Vec2 {
        [self.normal[0] / self.speed, self.normal[1] / self.speed]
    }

    pub fn unit_tangent(&self) -> Vec2 {
        [self.d1[0] / self.speed, self.d1[1] / self.speed]
    }
}

/// A closed curve given by trigonometric polynomials,
/// `x(t) = Σ_k (x_cos[k] cos kt + x_sin[k] sin kt)` and likewise for `y`.
/// Index 0 of the sine arrays is ignored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierCurve {
    #[serde(default)]
    pub x_cos: Vec<f64>,
    #[serde(default)]
    pub x_sin: Vec<f64>,
    #[serde(default)]
    pub y_cos: Vec<f64>,
    #[serde(default)]
    pub y_sin: Vec<f64>,
}

impl FourierCurve {
    fn series<R: Real>(cos: &[f64], sin: &[f64], t: R) -> R {
        let mut acc = R::constant(cos.first().copied().unwrap_or(0.0));
        let len = cos.len().max(sin.len());
        for k in 1..len {
            let kt = t.scale(k as f64);
            if let Some(&a) = cos.get(k) {
                acc = acc + kt.cos().scale(a);
            }
            if let Some(&b) = sin.get(k) {
                acc = acc + kt.sin().scale(b);
            }
        }
        acc
    }
}

/// Shape of the cavity boundary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    Apple,
    Peanut,
    /// `C²` but not `C³` at `t = π/2`.
    Peach,
    /// Corner of interior angle `π/2` at `t = 0`.
    Drop,
    /// Corner of interior angle `3π/2` at `t = 0`.
    Heart,
    Circle { radius: f64 },
    Custom(FourierCurve),
}

impl CurveKind {
    pub fn has_corner(&self) -> bool {
        matches!(self, CurveKind::Drop | CurveKind::Heart)
    }

    pub fn name(&self) -> &'static str {
        match self {
            CurveKind::Apple => "apple",
            CurveKind::Peanut => "peanut",
            CurveKind::Peach => "peach",
            CurveKind::Drop => "drop",
            CurveKind::Heart => "heart",
            CurveKind::Circle { .. } => "circle",
            CurveKind::Custom(_) => "custom",
        }
    }

    /// One of the five named benchmark curves.
    pub fn from_name(name: &str) -> Option<CurveKind> {
        [CurveKind::Apple, CurveKind::Peanut, CurveKind::Peach, CurveKind::Drop, CurveKind::Heart]
            .into_iter()
            .find(|k| k.name() == name)
    }

    /// `γ(t)` for `t` reduced to `[0, 2π)`.
    fn eval<R: Real>(&self, t: R) -> [R; 2] {
        let c = R::constant;
        let polar = |r: R| [r * t.cos(), r * t.sin()];
        match self {
            CurveKind::Apple => {
                let num = c(1.0) + t.cos().scale(0.9) + t.scale(2.0).sin().scale(0.1);
                let den = c(1.0) + t.cos().scale(0.75);
                polar((num / den).scale(0.55))
            }
            CurveKind::Peanut => polar((t.cos().square().scale(3.0) + c(1.0)).sqrt().scale(0.275)),
            CurveKind::Peach => {
                // sqrt(1 − sin t) = |cos(t/2) − sin(t/2)|, finite derivatives at t = π/2
                let half = t.scale(0.5);
                let root = (half.cos() - half.sin()).abs();
                polar((t.cos().square() * root + c(2.0)).scale(0.22))
            }
            CurveKind::Drop => [t.scale(0.5).sin().scale(2.0) - c(1.0), -t.sin()],
            CurveKind::Heart => [t.scale(1.5).sin().scale(1.5), t.sin()],
            CurveKind::Circle { radius } => [t.cos().scale(*radius), t.sin().scale(*radius)],
            CurveKind::Custom(f) => [
                FourierCurve::series(&f.x_cos, &f.x_sin, t),
                FourierCurve::series(&f.y_cos, &f.y_sin, t),
            ],
        }
    }
}

/// Corner grading `t = w(s)` with exponent `p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grading {
    pub p: f64,
}

/// `w(s)` and its first three derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradedMap {
    pub w: f64,
    pub w1: f64,
    pub w2: f64,
    pub w3: f64,
}

fn grading_weight<R: Real>(s: R, p: f64) -> R {
    let x = (R::constant(PI) - s).scale(1.0 / PI);
    x * x * x * R::constant(1.0 / p - 0.5) - x.scale(1.0 / p) + R::constant(0.5)
}

fn grade<R: Real>(s: R, p: f64) -> R {
    let a = grading_weight(s, p).powf(p);
    let b = grading_weight(R::constant(TAU) - s, p).powf(p);
    a.scale(TAU) / (a + b)
}

/// The grading substitution `w(s) = 2π v(s)^p / (v(s)^p + v(2π − s)^p)` with
/// `v(s) = (1/p − 1/2)((π − s)/π)³ + (s − π)/(pπ) + 1/2`.
pub fn graded_map(s: f64, p: f64) -> Result<GradedMap> {
    if !(p >= 2.0) || !p.is_finite() {
        return Err(Error::InvalidParameter(format!("grading exponent p = {p} must be at least 2")));
    }
    if !(0.0..=TAU).contains(&s) {
        return Err(Error::Domain { function: "graded_map", value: s });
    }
    let [w, w1, w2, w3] = grade(Jet::variable(s), p).0;
    Ok(GradedMap { w, w1, w2, w3 })
}

/// A cavity boundary, optionally reparameterised by a corner grading.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryCurve {
    pub kind: CurveKind,
    #[serde(default)]
    pub graded: Option<Grading>,
}

const CORNER_TOLERANCE: f64 = 1e-12;

impl BoundaryCurve {
    pub fn new(kind: CurveKind) -> Self {
        BoundaryCurve { kind, graded: None }
    }

    pub fn graded(kind: CurveKind, p: f64) -> Result<Self> {
        if !(p >= 2.0) || !p.is_finite() {
            return Err(Error::InvalidParameter(format!("grading exponent p = {p} must be at least 2")));
        }
        Ok(BoundaryCurve { kind, graded: Some(Grading { p }) })
    }

    pub fn circle(radius: f64) -> Self {
        BoundaryCurve::new(CurveKind::Circle { radius })
    }

    pub fn is_graded(&self) -> bool {
        self.graded.is_some()
    }

    /// Checks parameters that serde cannot.
    pub fn validate(&self) -> Result<()> {
        if let CurveKind::Circle { radius } = self.kind {
            if !(radius > 0.0) || !radius.is_finite() {
                return Err(Error::InvalidParameter(format!("circle radius {radius} must be positive")));
            }
        }
        if let CurveKind::Custom(f) = &self.kind {
            let all = [&f.x_cos, &f.x_sin, &f.y_cos, &f.y_sin];
            if all.iter().all(|v| v.iter().skip(1).all(|&c| c == 0.0)) {
                return Err(Error::InvalidParameter("custom curve has no non-constant terms".into()));
            }
            if all.iter().any(|v| v.iter().any(|c| !c.is_finite())) {
                return Err(Error::InvalidParameter("custom curve has non-finite coefficients".into()));
            }
        }
        if let Some(g) = self.graded {
            if !(g.p >= 2.0) || !g.p.is_finite() {
                return Err(Error::InvalidParameter(format!("grading exponent p = {} must be at least 2", g.p)));
            }
        }
        Ok(())
    }

    fn eval<R: Real>(&self, s: R) -> [R; 2] {
        match self.graded {
            Some(g) => self.kind.eval(grade(s, g.p)),
            None => self.kind.eval(s),
        }
    }

    /// `γ(t)`.
    pub fn point(&self, t: f64) -> Vec2 {
        self.eval(t.rem_euclid(TAU))
    }

    /// Position and derivatives at `t` (a mesh parameter `s` when graded).
    pub fn jet(&self, t: f64) -> Result<CurveJet> {
        if !t.is_finite() {
            return Err(Error::Domain { function: "curve jet", value: t });
        }
        let t = t.rem_euclid(TAU);
        if self.kind.has_corner() || self.graded.is_some() {
            // the corner sits at t = 0; graded curves also stall there
            let dist = t.min(TAU - t);
            if dist < CORNER_TOLERANCE {
                return Err(Error::Corner(t));
            }
        }
        let [x, y] = self.eval(Jet::variable(t));
        Ok(CurveJet::from_jets(x, y))
    }

    /// `γ(t) − γ(ζ)` accurate to working precision relative to its own size,
    /// also when `t` and `ζ` are close.
    pub fn chord(&self, t: f64, zeta: f64) -> Vec2 {
        let (a, b) = (t.rem_euclid(TAU), zeta.rem_euclid(TAU));
        let [x, y] = self.eval(Gap::variable(a, b));
        [x.diff, y.diff]
    }

    /// Winding number of the curve about `x`, from `samples` polygon vertices.
    pub fn winding_number(&self, x: Vec2, samples: usize) -> i64 {
        let mut total = 0.0;
        let start = self.point(0.0);
        let mut prev_angle = (start[1] - x[1]).atan2(start[0] - x[0]);
        for k in 1..=samples {
            let p = self.point(TAU * k as f64 / samples as f64);
            let angle = (p[1] - x[1]).atan2(p[0] - x[0]);
            let mut d = angle - prev_angle;
            if d > PI {
                d -= TAU;
            } else if d < -PI {
                d += TAU;
            }
            total += d;
            prev_angle = angle;
        }
        (total / TAU).round() as i64
    }

    /// Approximate distance from `x` to the curve: dense sampling followed by
    /// a golden-section refinement around the closest sample.
    pub fn distance_to(&self, x: Vec2) -> f64 {
        const SAMPLES: usize = 2048;
        let h = TAU / SAMPLES as f64;
        let dist = |t: f64| {
            let p = self.point(t);
            (p[0] - x[0]).hypot(p[1] - x[1])
        };
        let (mut best_t, mut best) = (0.0, f64::INFINITY);
        for k in 0..SAMPLES {
            let t = k as f64 * h;
            let d = dist(t);
            if d < best {
                best = d;
                best_t = t;
            }
        }
        let g = 0.5 * (5f64.sqrt() - 1.0);
        let (mut a, mut b) = (best_t - h, best_t + h);
        for _ in 0..60 {
            let c = b - g * (b - a);
            let d = a + g * (b - a);
            if dist(c) < dist(d) {
                b = d;
            } else {
                a = c;
            }
        }
        best.min(dist(0.5 * (a + b)))
    }
}

/// Equispaced collocation grid on `[0, 2π)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Discretization {
    pub n: usize,
    pub nodes: Vec<f64>,
    pub shifted: bool,
}

impl Discretization {
    /// Number of nodes, `2n`.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Trapezoid weight `π/n`.
    pub fn step(&self) -> f64 {
        PI / self.n as f64
    }

    /// Ensures the grid can be used with `curve`: graded curves need shifted
    /// nodes (the corner parameter is never sampled) and vice versa.
    pub fn check_matches(&self, curve: &BoundaryCurve) -> Result<()> {
        match (curve.is_graded(), self.shifted) {
            (true, false) => Err(Error::GridMismatch("graded curves need shifted nodes".into())),
            (false, true) => Err(Error::GridMismatch("shifted nodes are only used with graded curves".into())),
            _ => Ok(()),
        }
    }

    /// Jets of `curve` at every node.
    pub fn jets(&self, curve: &BoundaryCurve) -> Result<Vec<CurveJet>> {
        self.nodes.iter().map(|&t| curve.jet(t)).collect()
    }
}

/// The `2n` nodes `πj/n`, or `πj/n + π/(2n)` when `shifted`.
pub fn collocation_nodes(n: usize, shifted: bool) -> Result<Discretization> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("n = {n} is below the minimum of 4")));
    }
    let h = PI / n as f64;
    let offset = if shifted { 0.5 * h } else { 0.0 };
    let nodes = (0..2 * n).map(|j| j as f64 * h + offset).collect();
    Ok(Discretization { n, nodes, shifted })
}
