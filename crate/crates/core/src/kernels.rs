//! Parameterised kernels of both boundary integral formulations.
//!
//! Every kernel is split as
//!
//! ```text
//! χ(t, ζ) = χ1(t, ζ) ln(4 sin²((t − ζ)/2)) + χ2(t, ζ)
//! ```
//!
//! with `χ1`, `χ2` smooth. Off the diagonal `χ1` comes from `J`/`I` Bessel
//! closed forms and `χ2` by subtraction; on the diagonal both are closed forms
//! in the curve derivatives.
//!
//! Kernels of the double–single formulation: `L` (Helmholtz double layer),
//! `S` (modified Helmholtz single layer), `K` (its normal derivative), and the
//! pieces `R`, `H` of the Maue-split hypersingular operator. Kernels of the
//! single–single formulation: `S_H`, `S_M`, `K_H`, `K_M`.

use std::f64::consts::{FRAC_1_PI, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{dot, BoundaryCurve, CurveJet, Vec2};
use crate::specfun::{ik01, jy01, BesselIK, BesselJY, EULER_GAMMA};

/// Parameter separation below which `t` and `ζ` count as coincident.
pub const COINCIDENCE: f64 = 1e-10;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KernelId {
    L,
    S,
    K,
    R,
    H,
    SH,
    SM,
    KH,
    KM,
}

impl KernelId {
    pub const ALL: [KernelId; 9] = [
        KernelId::L,
        KernelId::S,
        KernelId::K,
        KernelId::R,
        KernelId::H,
        KernelId::SH,
        KernelId::SM,
        KernelId::KH,
        KernelId::KM,
    ];

    /// Kernels of the modified Helmholtz equation, real valued.
    pub fn is_modified(self) -> bool {
        matches!(self, KernelId::S | KernelId::K | KernelId::SM | KernelId::KM)
    }
}

/// `χ1` and `χ2` of a split kernel at one parameter pair.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct KernelSplitValue {
    pub log_coeff: Complex64,
    pub smooth: Complex64,
}

impl KernelSplitValue {
    /// `χ1 ln(4 sin²((t − ζ)/2)) + χ2` for `t ≠ ζ`.
    pub fn recombine(&self, t: f64, zeta: f64) -> Complex64 {
        self.log_coeff * log_weight(t - zeta) + self.smooth
    }
}

impl std::ops::Sub for KernelSplitValue {
    type Output = KernelSplitValue;
    fn sub(self, o: Self) -> Self {
        KernelSplitValue { log_coeff: self.log_coeff - o.log_coeff, smooth: self.smooth - o.smooth }
    }
}

/// `ln(4 sin²(δ/2))`.
pub fn log_weight(delta: f64) -> f64 {
    let s = (0.5 * delta).sin();
    (4.0 * s * s).ln()
}

/// Distance between parameters modulo `2π`.
pub fn parameter_separation(t: f64, zeta: f64) -> f64 {
    let d = (t - zeta).rem_euclid(std::f64::consts::TAU);
    d.min(std::f64::consts::TAU - d)
}

fn check_kappa(kappa: f64) -> Result<()> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(Error::InvalidParameter(format!("wavenumber {kappa} must be positive")));
    }
    Ok(())
}

/// Geometry of one off-diagonal parameter pair.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Pair {
    pub a: CurveJet,
    pub b: CurveJet,
    /// `γ(t) − γ(ζ)`.
    pub chord: Vec2,
    pub r: f64,
    pub delta: f64,
    pub log_term: f64,
}

impl Pair {
    pub fn new(curve: &BoundaryCurve, a: CurveJet, b: CurveJet, t: f64, zeta: f64) -> Pair {
        let chord = curve.chord(t, zeta);
        let delta = t - zeta;
        Pair { a, b, chord, r: chord[0].hypot(chord[1]), delta, log_term: log_weight(delta) }
    }
}

/// Bessel values at `κ|γ(t) − γ(ζ)|`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PairBessel {
    pub jy: BesselJY,
    pub ik: BesselIK,
}

impl PairBessel {
    pub fn new(kappa: f64, r: f64) -> PairBessel {
        let z = kappa * r;
        PairBessel { jy: jy01(z), ik: ik01(z) }
    }
}

fn split(value: Complex64, log_coeff: Complex64, log_term: f64) -> KernelSplitValue {
    KernelSplitValue { log_coeff, smooth: value - log_coeff * log_term }
}

/// Off-diagonal split of kernel `id`.
pub(crate) fn split_off(id: KernelId, p: &Pair, kappa: f64, bf: &PairBessel) -> KernelSplitValue {
    let (c, r, lt) = (p.chord, p.r, p.log_term);
    let (jy, ik) = (&bf.jy, &bf.ik);
    let k2pi = kappa / (2.0 * PI);
    match id {
        KernelId::L => {
            let nc = dot(p.b.normal, c);
            split(I * (0.5 * kappa * nc / r) * jy.h1(), re(-k2pi * nc * jy.j1 / r), lt)
        }
        KernelId::S | KernelId::SM => split(re(ik.k0 * FRAC_1_PI), re(-ik.i0 / (2.0 * PI)), lt),
        KernelId::K | KernelId::KM => {
            let nc = dot(p.a.normal, c);
            split(re(-kappa * FRAC_1_PI * nc * ik.k1 / r), re(-k2pi * nc * ik.i1 / r), lt)
        }
        KernelId::R => {
            let nn = dot(p.a.normal, p.b.normal);
            split(I * (0.5 * kappa * kappa * nn) * jy.h0(), re(-kappa * k2pi * jy.j0 * nn), lt)
        }
        KernelId::H => split_h(p, kappa, jy),
        KernelId::SH => split(I * 0.5 * jy.h0(), re(-jy.j0 / (2.0 * PI)), lt),
        KernelId::KH => {
            let nc = dot(p.a.normal, c);
            split(-I * (0.5 * kappa * nc / r) * jy.h1(), re(k2pi * nc * jy.j1 / r), lt)
        }
    }
}

/// The `H` kernel. Both the Hankel terms and the added `1/(4π sin²((t−ζ)/2))`
/// behave like `(t − ζ)^-2`; their poles are grouped into
///
/// ```text
/// Q = [(γ'(t)·γ'(ζ)) r² − 2 (γ'(t)·c)(γ'(ζ)·c)] / (π r⁴) + 1/(4π sin²((t−ζ)/2))
/// ```
///
/// and the remaining Hankel parts use `H1 + 2i/(πz)`, which is bounded.
fn split_h(p: &Pair, kappa: f64, jy: &BesselJY) -> KernelSplitValue {
    let (c, r) = (p.chord, p.r);
    let r2 = r * r;
    let ac = dot(p.a.d1, c);
    let bc = dot(p.b.d1, c);
    let ab = dot(p.a.d1, p.b.d1);
    let htilde = ac * bc / r2;
    let half = (0.5 * p.delta).sin();
    let q = (ab * r2 - 2.0 * ac * bc) / (PI * r2 * r2) + 1.0 / (4.0 * PI * half * half);
    let h1reg = jy.h1_regular();
    let value = I * 0.5 * htilde * (kappa * kappa * jy.h0() - 2.0 * kappa * h1reg / r)
        + I * (0.5 * kappa * ab / r) * h1reg
        + q;
    let log_coeff = -htilde / (2.0 * PI) * (kappa * kappa * jy.j0 - 2.0 * kappa * jy.j1 / r)
        - kappa * ab * jy.j1 / (2.0 * PI * r);
    split(value, re(log_coeff), p.log_term)
}

/// Closed-form diagonal split of kernel `id` at a point with jet `j`.
pub(crate) fn split_diag(id: KernelId, j: &CurveJet, kappa: f64) -> KernelSplitValue {
    let s = j.speed;
    let s2 = s * s;
    let curvature_term = dot(j.normal, j.d2) / (2.0 * PI * s2);
    let ln_ks = (0.5 * kappa * s).ln();
    let c_pi = EULER_GAMMA / PI;
    let helmholtz_log = I * 0.5 - c_pi - ln_ks / PI;
    // the modified Helmholtz wavenumber is iκ; ln(iκ|γ'|/2) on the principal branch
    let modified_log = I * 0.5 - c_pi - (I * (0.5 * kappa * s)).ln() / PI;
    let k2 = kappa * kappa;
    match id {
        KernelId::L | KernelId::K | KernelId::KH | KernelId::KM => {
            KernelSplitValue { log_coeff: re(0.0), smooth: re(curvature_term) }
        }
        KernelId::S | KernelId::SM => KernelSplitValue { log_coeff: re(-0.5 * FRAC_1_PI), smooth: modified_log },
        KernelId::SH => KernelSplitValue { log_coeff: re(-0.5 * FRAC_1_PI), smooth: helmholtz_log },
        KernelId::R => KernelSplitValue { log_coeff: re(-k2 * s2 / (2.0 * PI)), smooth: k2 * s2 * helmholtz_log },
        KernelId::H => {
            let d12 = dot(j.d1, j.d2);
            let d22 = dot(j.d2, j.d2);
            let d13 = dot(j.d1, j.d3);
            let smooth = (Complex64::new(-1.0 - 2.0 * EULER_GAMMA - 2.0 * ln_ks, PI)) * (k2 * s2 / (4.0 * PI))
                + 1.0 / (12.0 * PI)
                + d12 * d12 / (2.0 * PI * s2 * s2)
                - d22 / (4.0 * PI * s2)
                - d13 / (6.0 * PI * s2);
            KernelSplitValue { log_coeff: re(-k2 * s2 / (4.0 * PI)), smooth }
        }
    }
}

/// Pointwise multipliers `E1, E2, E3, E6` of the operator splitting at one
/// parameter (`E4`, `E5` only enter through `E6 = E4 − E5`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Multipliers {
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    pub e4: f64,
    pub e5: f64,
    pub e6: f64,
}

impl Multipliers {
    pub fn new(j: &CurveJet, kappa: f64) -> Self {
        let k2 = kappa * kappa;
        let s2 = dot(j.d1, j.d1);
        let d13 = dot(j.d1, j.d3);
        let e4 = -k2 * k2 * s2 * s2 + 2.0 * k2 * d13;
        let e5 = -0.75 * k2 * k2 * s2 * s2 + k2 * d13;
        Multipliers {
            e1: k2 * s2,
            e2: k2 * dot(j.normal, j.d2),
            e3: k2 * dot(j.d1, j.d2),
            e4,
            e5,
            e6: e4 - e5,
        }
    }
}

/// Block of the double–single system, `(row, col)` with entries 1 or 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    B11,
    B12,
    B21,
    B22,
}

impl Block {
    pub fn from_indices(row: u8, col: u8) -> Result<Block> {
        match (row, col) {
            (1, 1) => Ok(Block::B11),
            (1, 2) => Ok(Block::B12),
            (2, 1) => Ok(Block::B21),
            (2, 2) => Ok(Block::B22),
            _ => Err(Error::InvalidParameter(format!("block ({row}, {col}) does not exist"))),
        }
    }
}

/// Full (Approach 1) split kernel of a double–single block; `B21` is `R − H`.
pub(crate) fn block_off(block: Block, p: &Pair, kappa: f64, bf: &PairBessel) -> KernelSplitValue {
    match block {
        Block::B11 => split_off(KernelId::L, p, kappa, bf),
        Block::B12 => split_off(KernelId::S, p, kappa, bf),
        Block::B21 => split_off(KernelId::R, p, kappa, bf) - split_off(KernelId::H, p, kappa, bf),
        Block::B22 => split_off(KernelId::K, p, kappa, bf),
    }
}

pub(crate) fn block_diag(block: Block, j: &CurveJet, kappa: f64) -> KernelSplitValue {
    match block {
        Block::B11 => split_diag(KernelId::L, j, kappa),
        Block::B12 => split_diag(KernelId::S, j, kappa),
        Block::B21 => split_diag(KernelId::R, j, kappa) - split_diag(KernelId::H, j, kappa),
        Block::B22 => split_diag(KernelId::K, j, kappa),
    }
}

/// Remainder kernel of a block after the operators with closed-form
/// quadratures are taken out:
///
/// ```text
/// B11: L − E2 S2                     B12: S − S̃0 − E1 S2 − M0
/// B21: R − H − (E1/2) S̃0 − E3 S1 − E6 S2 − M0 − (E1/2) M0
/// B22: K + E2 S2
/// ```
///
/// with `S̃0`, `S1`, `S2` the log-weighted operators with kernels
/// `−1/(2π)`, `sin(t−ζ)/(4π)`, `−sin²(t−ζ)/(8π)` times the log, and `M0` the
/// constant kernel `i/(2π)`.
pub(crate) fn remainder_off(block: Block, p: &Pair, kappa: f64, bf: &PairBessel, e: &Multipliers) -> KernelSplitValue {
    let full = block_off(block, p, kappa, bf);
    let sn = p.delta.sin();
    let s2 = sn * sn;
    let (extracted_log, extracted_smooth) = match block {
        Block::B11 => (re(-e.e2 * s2 / (8.0 * PI)), re(0.0)),
        Block::B12 => (re(-1.0 / (2.0 * PI) - e.e1 * s2 / (8.0 * PI)), I / (2.0 * PI)),
        Block::B21 => (
            re(-e.e1 / (4.0 * PI) + e.e3 * sn / (4.0 * PI) - e.e6 * s2 / (8.0 * PI)),
            I / (2.0 * PI) * (1.0 + 0.5 * e.e1),
        ),
        Block::B22 => (re(e.e2 * s2 / (8.0 * PI)), re(0.0)),
    };
    KernelSplitValue { log_coeff: full.log_coeff - extracted_log, smooth: full.smooth - extracted_smooth }
}

pub(crate) fn remainder_diag(block: Block, j: &CurveJet, kappa: f64) -> KernelSplitValue {
    let full = block_diag(block, j, kappa);
    let e1 = kappa * kappa * j.speed * j.speed;
    let smooth = match block {
        Block::B11 | Block::B22 => full.smooth,
        Block::B12 => full.smooth - I / (2.0 * PI),
        Block::B21 => full.smooth - I / (2.0 * PI) * (1.0 + 0.5 * e1),
    };
    // the extracted operators remove the diagonal log coefficient exactly
    KernelSplitValue { log_coeff: re(0.0), smooth }
}

fn jets(curve: &BoundaryCurve, t: f64, zeta: f64) -> Result<(CurveJet, CurveJet)> {
    Ok((curve.jet(t)?, curve.jet(zeta)?))
}

/// Split kernel `id` at `(t, ζ)`; coincident parameters use the closed-form
/// diagonal values.
pub fn kernel_split(id: KernelId, curve: &BoundaryCurve, kappa: f64, t: f64, zeta: f64) -> Result<KernelSplitValue> {
    check_kappa(kappa)?;
    if parameter_separation(t, zeta) < COINCIDENCE {
        return Ok(split_diag(id, &curve.jet(t)?, kappa));
    }
    let (a, b) = jets(curve, t, zeta)?;
    let p = Pair::new(curve, a, b, t, zeta);
    Ok(split_off(id, &p, kappa, &PairBessel::new(kappa, p.r)))
}

/// Kernel `id` evaluated directly from its Hankel (or `K`) definition. For
/// `H` this includes the added `1/(4π sin²((t−ζ)/2))`, so all kernels are at
/// most log-singular.
pub fn kernel_direct(id: KernelId, curve: &BoundaryCurve, kappa: f64, t: f64, zeta: f64) -> Result<Complex64> {
    check_kappa(kappa)?;
    if parameter_separation(t, zeta) < COINCIDENCE {
        return Err(Error::Coincident { t, zeta });
    }
    let (a, b) = jets(curve, t, zeta)?;
    let c = curve.chord(t, zeta);
    let r = c[0].hypot(c[1]);
    let z = kappa * r;
    let jy = jy01(z);
    let ik = ik01(z);
    // H0(iz) = −(2i/π) K0(z), H1(iz) = −(2/π) K1(z)
    let h0m = -I * 2.0 * FRAC_1_PI * ik.k0;
    let h1m = re(-2.0 * FRAC_1_PI * ik.k1);
    let kappa_m = I * kappa;
    Ok(match id {
        KernelId::L => I * 0.5 * kappa * dot(b.normal, c) * jy.h1() / r,
        KernelId::S => I * 0.5 * h0m,
        KernelId::K => 0.5 * kappa * dot(a.normal, c) * h1m / r,
        KernelId::R => I * 0.5 * kappa * kappa * jy.h0() * dot(a.normal, b.normal),
        KernelId::H => {
            let ab = dot(a.d1, b.d1);
            let htilde = dot(a.d1, c) * dot(b.d1, c) / (r * r);
            let half = (0.5 * (t - zeta)).sin();
            I * 0.5 * htilde * (kappa * kappa * jy.h0() - 2.0 * kappa * jy.h1() / r)
                + I * kappa * ab / (2.0 * r) * jy.h1()
                + 1.0 / (4.0 * PI * half * half)
        }
        KernelId::SH => I * 0.5 * jy.h0(),
        KernelId::SM => I * 0.5 * h0m,
        KernelId::KH => I * 0.5 * kappa * (-dot(a.normal, c)) * jy.h1() / r,
        KernelId::KM => I * 0.5 * kappa_m * (-dot(a.normal, c)) * h1m / r,
    })
}

/// Remainder kernel of block `(row, col)` of the double–single system after
/// the operators with closed-form quadratures are taken out. On the diagonal
/// the log coefficient is exactly zero.
pub fn remainder_kernel(
    row: u8,
    col: u8,
    curve: &BoundaryCurve,
    kappa: f64,
    t: f64,
    zeta: f64,
) -> Result<KernelSplitValue> {
    check_kappa(kappa)?;
    let block = Block::from_indices(row, col)?;
    if parameter_separation(t, zeta) < COINCIDENCE {
        return Ok(remainder_diag(block, &curve.jet(t)?, kappa));
    }
    let (a, b) = jets(curve, t, zeta)?;
    let p = Pair::new(curve, a, b, t, zeta);
    let e = Multipliers::new(&a, kappa);
    Ok(remainder_off(block, &p, kappa, &PairBessel::new(kappa, p.r), &e))
}

/// Full kernel split of block `(row, col)` of the double–single system
/// (`L`, `S`, `R − H`, `K`).
pub fn block_kernel(row: u8, col: u8, curve: &BoundaryCurve, kappa: f64, t: f64, zeta: f64) -> Result<KernelSplitValue> {
    check_kappa(kappa)?;
    let block = Block::from_indices(row, col)?;
    if parameter_separation(t, zeta) < COINCIDENCE {
        return Ok(block_diag(block, &curve.jet(t)?, kappa));
    }
    let (a, b) = jets(curve, t, zeta)?;
    let p = Pair::new(curve, a, b, t, zeta);
    Ok(block_off(block, &p, kappa, &PairBessel::new(kappa, p.r)))
}
