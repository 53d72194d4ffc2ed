//! Dense collocation systems for the three formulations, right-hand sides
//! from incident fields, and the LU solve.
//!
//! Unknowns are ordered `[ψ1(t_0..t_2n), ψ2(t_0..t_2n)]`, equations likewise
//! (first boundary condition, then the normal-derivative condition multiplied
//! by `|γ'|`). Each log-split kernel block is discretised at node `t_i` as
//!
//! ```text
//! Σ_j [ R_ij χ1(t_i, t_j) + (π/n) χ2(t_i, t_j) ]
//! ```

use std::f64::consts::PI;

use faer::linalg::solvers::Solve;
use faer::Mat;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{dot, BoundaryCurve, CurveJet, Discretization, Vec2};
use crate::kernels::{
    block_diag, block_off, remainder_diag, remainder_off, split_diag, split_off, Block, KernelId, KernelSplitValue,
    Multipliers, Pair, PairBessel,
};
use crate::postfield::PointSource;
use crate::quadrature::{WeightFamily, WeightTable};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Condition estimates above this are reported as near-singular.
pub const CONDITION_WARNING: f64 = 1e14;
/// Largest accepted relative residual `‖Aψ − η‖∞ / ‖η‖∞`.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Formulation {
    /// Double layer for `v_H`, single layer for `v_M`; every kernel block
    /// integrated with the log-split rule, the tangential-derivative operator
    /// with `T` weights.
    #[serde(rename = "a1", alias = "double-single-a1")]
    DoubleSingleA1,
    /// The same representation with the leading singular operators split
    /// off and integrated with the `R`, `T`, `V`, `W` weights.
    #[serde(rename = "a2", alias = "double-single-a2")]
    DoubleSingleA2,
    /// Single layers for both components.
    #[serde(rename = "ss", alias = "single-single")]
    SingleSingle,
}

impl Formulation {
    pub fn name(self) -> &'static str {
        match self {
            Formulation::DoubleSingleA1 => "a1",
            Formulation::DoubleSingleA2 => "a2",
            Formulation::SingleSingle => "ss",
        }
    }

    pub fn parse(s: &str) -> Option<Formulation> {
        match s.to_ascii_lowercase().as_str() {
            "a1" | "double-single-a1" | "ds-a1" => Some(Formulation::DoubleSingleA1),
            "a2" | "double-single-a2" | "ds-a2" => Some(Formulation::DoubleSingleA2),
            "ss" | "single-single" => Some(Formulation::SingleSingle),
            _ => None,
        }
    }

    /// `true` when `ψ1` is a double-layer density.
    pub fn is_double_layer(self) -> bool {
        !matches!(self, Formulation::SingleSingle)
    }
}

/// Incoming excitation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IncidentField {
    /// `e^{iκ x·d}`, `d = (cos θ, sin θ)`.
    PlaneWave { kappa: f64, theta: f64 },
    /// Boundary data of the radiating pair `H0(κ|x − x̄|)`, `H0(iκ|x − x̄|)`
    /// with `x̄` inside the cavity; the exterior solution is known exactly.
    PointSource { kappa: f64, source: Vec2 },
}

impl IncidentField {
    pub fn kappa(&self) -> f64 {
        match *self {
            IncidentField::PlaneWave { kappa, .. } | IncidentField::PointSource { kappa, .. } => kappa,
        }
    }
}

/// Dense `4n × 4n` collocation system.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    pub matrix: Mat<Complex64>,
    pub rhs: Vec<Complex64>,
    pub formulation: Formulation,
    pub grid: Discretization,
}

impl LinearSystem {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `A ψ` for the stacked unknown vector `ψ`.
    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let m = self.dim();
        (0..m).into_par_iter().map(|i| (0..m).map(|j| self.matrix[(i, j)] * x[j]).sum()).collect()
    }

    /// Operator 1-norm (largest column sum).
    pub fn norm_one(&self) -> f64 {
        let m = self.dim();
        (0..m).map(|j| (0..m).map(|i| self.matrix[(i, j)].norm()).sum::<f64>()).fold(0.0, f64::max)
    }
}

/// Parameterised densities at the grid nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityPair {
    pub psi1: Vec<Complex64>,
    pub psi2: Vec<Complex64>,
}

impl DensityPair {
    pub fn zeros(len: usize) -> Self {
        DensityPair { psi1: vec![Complex64::new(0.0, 0.0); len], psi2: vec![Complex64::new(0.0, 0.0); len] }
    }

    pub fn from_stacked(x: &[Complex64]) -> Self {
        let half = x.len() / 2;
        DensityPair { psi1: x[..half].to_vec(), psi2: x[half..].to_vec() }
    }

    pub fn stacked(&self) -> Vec<Complex64> {
        self.psi1.iter().chain(&self.psi2).copied().collect()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        DensityPair { psi1: self.psi1.iter().map(|v| v * c).collect(), psi2: self.psi2.iter().map(|v| v * c).collect() }
    }
}

/// Result of a solve with its diagnostics.
#[derive(Debug, Clone)]
pub struct Solved {
    pub densities: DensityPair,
    /// Estimate of the 1-norm condition number.
    pub condition: f64,
    /// `‖Aψ − η‖∞ / ‖η‖∞`.
    pub residual: f64,
}

fn check_kappa(kappa: f64) -> Result<()> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(Error::InvalidParameter(format!("wavenumber {kappa} must be positive")));
    }
    Ok(())
}

fn check_grid(curve: &BoundaryCurve, grid: &Discretization) -> Result<()> {
    if grid.n < 4 {
        return Err(Error::InvalidParameter(format!("n = {} is below the minimum of 4", grid.n)));
    }
    if grid.len() != 2 * grid.n {
        return Err(Error::GridMismatch(format!("{} nodes for n = {}", grid.len(), grid.n)));
    }
    curve.validate()?;
    grid.check_matches(curve)
}

/// Right-hand side `η = (η1, η2)` with `η1 = 2 f1∘γ`, `η2 = 2 |γ'| f2∘γ`.
///
/// For a plane wave `f1 = −u^inc`, `f2 = −∂_ν u^inc`; for a point source the
/// boundary data are the traces of the exact radiating solution.
pub fn rhs_from_incident(incident: &IncidentField, curve: &BoundaryCurve, grid: &Discretization) -> Result<Vec<Complex64>> {
    check_kappa(incident.kappa())?;
    check_grid(curve, grid)?;
    let jets = grid.jets(curve)?;
    let m = jets.len();
    let mut eta = vec![Complex64::new(0.0, 0.0); 2 * m];
    match *incident {
        IncidentField::PlaneWave { kappa, theta } => {
            let d = [theta.cos(), theta.sin()];
            for (i, j) in jets.iter().enumerate() {
                let u = (I * kappa * dot(j.point, d)).exp();
                eta[i] = -2.0 * u;
                // the unnormalised normal carries the |γ'| factor
                eta[m + i] = -2.0 * I * kappa * dot(j.normal, d) * u;
            }
        }
        IncidentField::PointSource { kappa, source } => {
            let ps = PointSource::new(kappa, source);
            ps.check_inside(curve)?;
            for (i, j) in jets.iter().enumerate() {
                let (vh, vm) = ps.values(j.point);
                let (gh, gm) = ps.gradients(j.point);
                eta[i] = 2.0 * (vh + vm);
                eta[m + i] = 2.0 * (gh[0] * j.normal[0] + gh[1] * j.normal[1] + gm[0] * j.normal[0] + gm[1] * j.normal[1]);
            }
        }
    }
    Ok(eta)
}

struct Context<'a> {
    curve: &'a BoundaryCurve,
    grid: &'a Discretization,
    jets: Vec<CurveJet>,
    kappa: f64,
    step: f64,
    r: WeightTable,
    t: Option<WeightTable>,
    v: Option<WeightTable>,
    w: Option<WeightTable>,
}

impl Context<'_> {
    fn pair(&self, i: usize, j: usize) -> (Pair, PairBessel) {
        let (t, z) = (self.grid.nodes[i], self.grid.nodes[j]);
        let p = Pair::new(self.curve, self.jets[i], self.jets[j], t, z);
        let b = PairBessel::new(self.kappa, p.r);
        (p, b)
    }

    #[inline]
    fn discretise(&self, i: usize, j: usize, k: KernelSplitValue) -> Complex64 {
        self.r.get(i, j) * k.log_coeff + self.step * k.smooth
    }

    /// Rows `i` (first equation) and `2n + i` (second equation).
    fn rows(&self, formulation: Formulation, i: usize) -> (Vec<Complex64>, Vec<Complex64>) {
        let m = self.jets.len();
        let zero = Complex64::new(0.0, 0.0);
        let mut top = vec![zero; 2 * m];
        let mut bottom = vec![zero; 2 * m];
        match formulation {
            Formulation::DoubleSingleA1 => {
                let tw = self.t.as_ref().expect("T weights");
                for j in 0..m {
                    let blocks: [KernelSplitValue; 4] = if i == j {
                        [Block::B11, Block::B12, Block::B21, Block::B22].map(|b| block_diag(b, &self.jets[i], self.kappa))
                    } else {
                        let (p, bf) = self.pair(i, j);
                        [Block::B11, Block::B12, Block::B21, Block::B22].map(|b| block_off(b, &p, self.kappa, &bf))
                    };
                    top[j] = self.discretise(i, j, blocks[0]);
                    top[m + j] = self.discretise(i, j, blocks[1]);
                    bottom[j] = tw.get(i, j) + self.discretise(i, j, blocks[2]);
                    bottom[m + j] = self.discretise(i, j, blocks[3]);
                }
                top[i] += 1.0;
                bottom[m + i] -= 1.0;
            }
            Formulation::DoubleSingleA2 => {
                let (tw, vw, ww) = (
                    self.t.as_ref().expect("T weights"),
                    self.v.as_ref().expect("V weights"),
                    self.w.as_ref().expect("W weights"),
                );
                let e = Multipliers::new(&self.jets[i], self.kappa);
                // M0 by the trapezoid rule: (i/2π)(π/n)
                let m0 = I * (self.step / (2.0 * PI));
                for j in 0..m {
                    let blocks: [KernelSplitValue; 4] = if i == j {
                        [Block::B11, Block::B12, Block::B21, Block::B22].map(|b| remainder_diag(b, &self.jets[i], self.kappa))
                    } else {
                        let (p, bf) = self.pair(i, j);
                        [Block::B11, Block::B12, Block::B21, Block::B22]
                            .map(|b| remainder_off(b, &p, self.kappa, &bf, &e))
                    };
                    let (r, t, v, w) = (self.r.get(i, j), tw.get(i, j), vw.get(i, j), ww.get(i, j));
                    let s0 = -r / (2.0 * PI) + m0;
                    let s1 = v / (4.0 * PI);
                    let s2 = -w / (8.0 * PI);
                    top[j] = e.e2 * s2 + self.discretise(i, j, blocks[0]);
                    top[m + j] = s0 + e.e1 * s2 + self.discretise(i, j, blocks[1]);
                    bottom[j] = t + m0 + 0.5 * e.e1 * s0 + e.e3 * s1 + e.e6 * s2 + self.discretise(i, j, blocks[2]);
                    bottom[m + j] = -e.e2 * s2 + self.discretise(i, j, blocks[3]);
                }
                top[i] += 1.0;
                bottom[m + i] -= 1.0;
            }
            Formulation::SingleSingle => {
                const IDS: [KernelId; 4] = [KernelId::SH, KernelId::SM, KernelId::KH, KernelId::KM];
                for j in 0..m {
                    let k: [KernelSplitValue; 4] = if i == j {
                        IDS.map(|id| split_diag(id, &self.jets[i], self.kappa))
                    } else {
                        let (p, bf) = self.pair(i, j);
                        IDS.map(|id| split_off(id, &p, self.kappa, &bf))
                    };
                    top[j] = self.discretise(i, j, k[0]);
                    top[m + j] = self.discretise(i, j, k[1]);
                    bottom[j] = self.discretise(i, j, k[2]);
                    bottom[m + j] = self.discretise(i, j, k[3]);
                }
                bottom[i] -= 1.0;
                bottom[m + i] -= 1.0;
            }
        }
        (top, bottom)
    }
}

/// Assembles the collocation matrix; the right-hand side is left at zero.
pub fn assemble(formulation: Formulation, curve: &BoundaryCurve, grid: &Discretization, kappa: f64) -> Result<LinearSystem> {
    check_kappa(kappa)?;
    check_grid(curve, grid)?;
    let jets = grid.jets(curve)?;
    let needs = |f: WeightFamily| -> Result<Option<WeightTable>> {
        let used = match f {
            WeightFamily::T => formulation != Formulation::SingleSingle,
            WeightFamily::V | WeightFamily::W => formulation == Formulation::DoubleSingleA2,
            WeightFamily::R => true,
        };
        if used {
            WeightTable::new(f, grid).map(Some)
        } else {
            Ok(None)
        }
    };
    let ctx = Context {
        curve,
        grid,
        kappa,
        step: grid.step(),
        r: WeightTable::new(WeightFamily::R, grid)?,
        t: needs(WeightFamily::T)?,
        v: needs(WeightFamily::V)?,
        w: needs(WeightFamily::W)?,
        jets,
    };
    let m = grid.len();
    let rows: Vec<(Vec<Complex64>, Vec<Complex64>)> = (0..m).into_par_iter().map(|i| ctx.rows(formulation, i)).collect();
    let matrix = Mat::from_fn(2 * m, 2 * m, |r, c| if r < m { rows[r].0[c] } else { rows[r - m].1[c] });
    if let Some((r, c)) = (0..2 * m).flat_map(|r| (0..2 * m).map(move |c| (r, c))).find(|&(r, c)| !matrix[(r, c)].is_finite()) {
        return Err(Error::InvalidParameter(format!("non-finite matrix entry at ({r}, {c})")));
    }
    Ok(LinearSystem { matrix, rhs: vec![Complex64::new(0.0, 0.0); 2 * m], formulation, grid: grid.clone() })
}

fn column(v: &[Complex64]) -> Mat<Complex64> {
    Mat::from_fn(v.len(), 1, |i, _| v[i])
}

fn to_vec(m: &Mat<Complex64>) -> Vec<Complex64> {
    (0..m.nrows()).map(|i| m[(i, 0)]).collect()
}

fn norm_inf(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Hager–Higham estimate of `‖A⁻¹‖₁` from LU solves with `A` and `Aᴴ`.
fn inverse_norm_estimate(lu: &faer::linalg::solvers::PartialPivLu<Complex64>, m: usize) -> f64 {
    let one = Complex64::new(1.0, 0.0);
    let mut x = vec![Complex64::new(1.0 / m as f64, 0.0); m];
    let mut estimate = 0.0;
    let mut last_index = usize::MAX;
    for iteration in 0..5 {
        let y = to_vec(&lu.solve(column(&x)));
        estimate = y.iter().map(|z| z.norm()).sum::<f64>();
        let xi: Vec<Complex64> = y.iter().map(|z| if z.norm() > 0.0 { z / z.norm() } else { one }).collect();
        let z = to_vec(&lu.solve_adjoint(column(&xi)));
        let (index, zmax) = z.iter().enumerate().map(|(i, v)| (i, v.norm())).fold((0, 0.0), |a, b| if b.1 > a.1 { b } else { a });
        let ztx: f64 = z.iter().zip(&x).map(|(a, b)| (a.conj() * b).re).sum();
        if iteration > 0 && (zmax <= ztx || index == last_index) {
            break;
        }
        last_index = index;
        x = vec![Complex64::new(0.0, 0.0); m];
        x[index] = one;
    }
    // alternating test vector guards against the iteration stalling
    let b: Vec<Complex64> = (0..m)
        .map(|i| {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            Complex64::new(sign * (1.0 + i as f64 / (m.max(2) - 1) as f64), 0.0)
        })
        .collect();
    let alt = 2.0 * to_vec(&lu.solve(column(&b))).iter().map(|z| z.norm()).sum::<f64>() / (3.0 * m as f64);
    estimate.max(alt)
}

/// Solves by dense LU with partial pivoting, with a condition estimate and
/// a residual check. One step of iterative refinement is taken when the
/// first residual exceeds the tolerance.
pub fn solve(system: &LinearSystem) -> Result<Solved> {
    let m = system.dim();
    if system.rhs.len() != m || system.matrix.ncols() != m {
        return Err(Error::InvalidParameter(format!(
            "system is {}x{} with a right-hand side of length {}",
            system.matrix.nrows(),
            system.matrix.ncols(),
            system.rhs.len()
        )));
    }
    let lu = system.matrix.partial_piv_lu();
    let norm_a = system.norm_one();
    let condition = norm_a * inverse_norm_estimate(&lu, m);
    let mut x = to_vec(&lu.solve(column(&system.rhs)));
    if !condition.is_finite() || x.iter().any(|z| !z.is_finite()) {
        return Err(Error::Singular { condition });
    }
    if condition > CONDITION_WARNING {
        log::warn!(
            "condition estimate {condition:e} exceeds {CONDITION_WARNING:e}; \
             the wavenumber may be close to an interior Dirichlet eigenvalue"
        );
    }
    let scale = norm_inf(&system.rhs);
    let residual_of = |x: &[Complex64]| -> (Vec<Complex64>, f64) {
        let ax = system.apply(x);
        let res: Vec<Complex64> = system.rhs.iter().zip(&ax).map(|(b, a)| b - a).collect();
        let r = norm_inf(&res);
        (res, if scale > 0.0 { r / scale } else { r })
    };
    let (res, mut residual) = residual_of(&x);
    if residual > RESIDUAL_TOLERANCE {
        let dx = to_vec(&lu.solve(column(&res)));
        let refined: Vec<Complex64> = x.iter().zip(&dx).map(|(a, b)| a + b).collect();
        let (_, r2) = residual_of(&refined);
        if r2 < residual {
            x = refined;
            residual = r2;
        }
    }
    if residual > RESIDUAL_TOLERANCE {
        return Err(Error::Residual { residual, tolerance: RESIDUAL_TOLERANCE });
    }
    Ok(Solved { densities: DensityPair::from_stacked(&x), condition, residual })
}
