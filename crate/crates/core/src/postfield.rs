//! Exterior fields, far-field patterns and error norms.

use std::f64::consts::{FRAC_PI_4, PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::assembly::{DensityPair, Formulation};
use crate::error::{Error, Result};
use crate::geometry::{dot, BoundaryCurve, CurveJet, Discretization, Vec2};
use crate::specfun::{ik01, jy01};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Smallest distance to the boundary at which the plain trapezoid rule is
/// trusted for the layer potentials.
pub const NEAR_BOUNDARY: f64 = 0.05;

/// Winding-number samples used to decide interior points.
const WINDING_SAMPLES: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldSample {
    pub point: Vec2,
    pub vh: Complex64,
    pub vm: Complex64,
    pub v: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FarField {
    pub angles: Vec<f64>,
    pub values: Vec<Complex64>,
    /// `e^{iπ/4} / √(8κπ)`.
    pub rho: Complex64,
}

/// The far-field prefactor `ϱ`.
pub fn far_field_prefactor(kappa: f64) -> Complex64 {
    Complex64::from_polar(1.0 / (8.0 * kappa * PI).sqrt(), FRAC_PI_4)
}

/// `M` equispaced angles `2πk/M`.
pub fn observation_angles(m: usize) -> Vec<f64> {
    (0..m).map(|k| TAU * k as f64 / m as f64).collect()
}

/// `M` equispaced points on the circle of radius `radius`.
pub fn circle_points(radius: f64, m: usize) -> Vec<Vec2> {
    observation_angles(m).into_iter().map(|a| [radius * a.cos(), radius * a.sin()]).collect()
}

fn check_densities(densities: &DensityPair, grid: &Discretization) -> Result<()> {
    if densities.psi1.len() != grid.len() || densities.psi2.len() != grid.len() {
        return Err(Error::GridMismatch(format!(
            "densities of length {} and {} for {} nodes",
            densities.psi1.len(),
            densities.psi2.len(),
            grid.len()
        )));
    }
    Ok(())
}

/// Rejects points inside the cavity or within [`NEAR_BOUNDARY`] of it.
pub fn check_exterior(curve: &BoundaryCurve, x: Vec2) -> Result<()> {
    if !x[0].is_finite() || !x[1].is_finite() {
        return Err(Error::Placement { x: x[0], y: x[1], reason: "is not finite" });
    }
    if curve.winding_number(x, WINDING_SAMPLES) != 0 {
        return Err(Error::Placement { x: x[0], y: x[1], reason: "lies inside the cavity" });
    }
    if curve.distance_to(x) < NEAR_BOUNDARY {
        return Err(Error::Placement { x: x[0], y: x[1], reason: "is too close to the boundary" });
    }
    Ok(())
}

fn potentials(densities: &DensityPair, formulation: Formulation, jets: &[CurveJet], kappa: f64, step: f64, x: Vec2) -> FieldSample {
    let mut vh = Complex64::new(0.0, 0.0);
    let mut vm = Complex64::new(0.0, 0.0);
    for (j, jet) in jets.iter().enumerate() {
        let d = [x[0] - jet.point[0], x[1] - jet.point[1]];
        let rho = d[0].hypot(d[1]);
        let z = kappa * rho;
        let jy = jy01(z);
        let ik = ik01(z);
        vh += match formulation {
            Formulation::SingleSingle => I * 0.25 * jy.h0() * densities.psi1[j],
            _ => I * (0.25 * kappa * dot(jet.normal, d) / rho) * jy.h1() * densities.psi1[j],
        };
        vm += densities.psi2[j] * (ik.k0 / TAU);
    }
    vh *= step;
    vm *= step;
    FieldSample { point: x, vh, vm, v: vh + vm }
}

/// Scattered field at an exterior point `x`.
pub fn eval_field(
    densities: &DensityPair,
    formulation: Formulation,
    curve: &BoundaryCurve,
    grid: &Discretization,
    kappa: f64,
    x: Vec2,
) -> Result<FieldSample> {
    eval_fields(densities, formulation, curve, grid, kappa, &[x]).map(|mut v| v.remove(0))
}

/// Scattered field at many exterior points, in parallel.
pub fn eval_fields(
    densities: &DensityPair,
    formulation: Formulation,
    curve: &BoundaryCurve,
    grid: &Discretization,
    kappa: f64,
    points: &[Vec2],
) -> Result<Vec<FieldSample>> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(Error::InvalidParameter(format!("wavenumber {kappa} must be positive")));
    }
    grid.check_matches(curve)?;
    check_densities(densities, grid)?;
    let jets = grid.jets(curve)?;
    let step = grid.step();
    points
        .par_iter()
        .map(|&x| {
            check_exterior(curve, x)?;
            Ok(potentials(densities, formulation, &jets, kappa, step, x))
        })
        .collect()
}

/// Far-field pattern of `v_H` at the given observation angles.
pub fn far_field(
    densities: &DensityPair,
    formulation: Formulation,
    curve: &BoundaryCurve,
    grid: &Discretization,
    kappa: f64,
    angles: &[f64],
) -> Result<FarField> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(Error::InvalidParameter(format!("wavenumber {kappa} must be positive")));
    }
    grid.check_matches(curve)?;
    check_densities(densities, grid)?;
    let jets = grid.jets(curve)?;
    let rho = far_field_prefactor(kappa);
    let step = grid.step();
    let values = angles
        .iter()
        .map(|&a| {
            let xhat = [a.cos(), a.sin()];
            let sum: Complex64 = jets
                .iter()
                .zip(&densities.psi1)
                .map(|(jet, psi)| {
                    let phase = (-I * kappa * dot(xhat, jet.point)).exp();
                    match formulation {
                        Formulation::SingleSingle => phase * psi,
                        _ => -I * kappa * dot(xhat, jet.normal) * phase * psi,
                    }
                })
                .sum();
            rho * step * sum
        })
        .collect();
    Ok(FarField { angles: angles.to_vec(), values, rho })
}

/// Absolute `L²` distance of two fields sampled at `M` equispaced points of
/// the circle `|x| = radius`, by the periodic trapezoid rule in arc length.
pub fn l2_error_on_circle(a: &[Complex64], b: &[Complex64], radius: f64) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::InvalidParameter(format!("sample counts differ: {} and {}", a.len(), b.len())));
    }
    if a.len() < 64 {
        return Err(Error::InvalidParameter(format!("{} samples, at least 64 are needed", a.len())));
    }
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::InvalidParameter(format!("radius {radius} must be positive")));
    }
    let sum: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
    Ok((TAU * radius / a.len() as f64 * sum).sqrt())
}

/// Largest pointwise difference.
pub fn max_error(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// The radiating pair `v_H = H0(κ|x − x̄|)`, `v_M = H0(iκ|x − x̄|)` of a
/// source inside the cavity; an exact exterior solution of the scattering
/// problem with its own traces as boundary data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointSource {
    pub kappa: f64,
    pub source: Vec2,
}

impl PointSource {
    pub fn new(kappa: f64, source: Vec2) -> Self {
        PointSource { kappa, source }
    }

    /// The source must lie strictly inside the cavity.
    pub fn check_inside(&self, curve: &BoundaryCurve) -> Result<()> {
        let [x, y] = self.source;
        if !x.is_finite() || !y.is_finite() {
            return Err(Error::Placement { x, y, reason: "is not finite" });
        }
        if curve.winding_number(self.source, WINDING_SAMPLES) == 0 {
            return Err(Error::Placement { x, y, reason: "is not inside the cavity" });
        }
        if curve.distance_to(self.source) < 1e-8 {
            return Err(Error::Placement { x, y, reason: "lies on the boundary" });
        }
        Ok(())
    }

    fn offset(&self, x: Vec2) -> (Vec2, f64) {
        let d = [x[0] - self.source[0], x[1] - self.source[1]];
        (d, d[0].hypot(d[1]))
    }

    /// `(v_H, v_M)` at `x`.
    pub fn values(&self, x: Vec2) -> (Complex64, Complex64) {
        let (_, rho) = self.offset(x);
        let z = self.kappa * rho;
        // H0(iz) = −(2i/π) K0(z)
        (jy01(z).h0(), Complex64::new(0.0, -2.0 / PI * ik01(z).k0))
    }

    /// `(∇v_H, ∇v_M)` at `x`.
    pub fn gradients(&self, x: Vec2) -> ([Complex64; 2], [Complex64; 2]) {
        let (d, rho) = self.offset(x);
        let z = self.kappa * rho;
        let gh = -self.kappa * jy01(z).h1() / rho;
        let gm = Complex64::new(0.0, 2.0 * self.kappa / PI * ik01(z).k1 / rho);
        ([gh * d[0], gh * d[1]], [gm * d[0], gm * d[1]])
    }

    /// Far-field pattern of `v_H` in the convention `v_H ≈ e^{iκr} v∞ / √r`.
    pub fn far_field(&self, angle: f64) -> Complex64 {
        let xhat = [angle.cos(), angle.sin()];
        Complex64::from_polar((2.0 / (PI * self.kappa)).sqrt(), -FRAC_PI_4) * (-I * self.kappa * dot(xhat, self.source)).exp()
    }
}
