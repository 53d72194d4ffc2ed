//! Periodic trapezoid rule and the trigonometric-interpolation weights for
//! integrals with a logarithmic or Hilbert-type singularity.
//!
//! All weights are functions of `θ = t − ζ_j` only:
//!
//! * `R`: `∫ ln(4 sin²((t−ζ)/2)) f(ζ) dζ`
//! * `T`: `(1/2π) ∫ cot((ζ−t)/2) f'(ζ) dζ`
//! * `V`: `∫ ln(4 sin²((t−ζ)/2)) sin(t−ζ) f(ζ) dζ`
//! * `W`: `∫ ln(4 sin²((t−ζ)/2)) sin²(t−ζ) f(ζ) dζ`

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Discretization;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeightFamily {
    R,
    T,
    V,
    W,
}

/// `(π/n) Σ f(ζ_j)` over `2n` samples.
pub fn trapezoid(samples: &[Complex64]) -> Complex64 {
    let n = samples.len() / 2;
    if n == 0 {
        return Complex64::new(0.0, 0.0);
    }
    samples.iter().sum::<Complex64>() * (PI / n as f64)
}

fn check_n(n: usize) -> Result<()> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("n = {n} is below the minimum of 4")));
    }
    Ok(())
}

/// Weight of `family` at offset `θ = t − ζ_j`, caller guarantees `n >= 4`.
pub(crate) fn weight_at(family: WeightFamily, n: usize, theta: f64) -> f64 {
    let nf = n as f64;
    match family {
        WeightFamily::R => {
            let sum: f64 = (1..n).map(|m| (m as f64 * theta).cos() / m as f64).sum();
            -2.0 * PI / nf * sum - PI / (nf * nf) * (nf * theta).cos()
        }
        WeightFamily::T => {
            let sum: f64 = (1..n).map(|m| m as f64 * (m as f64 * theta).cos()).sum();
            -sum / nf - 0.5 * (nf * theta).cos()
        }
        WeightFamily::V => {
            // written in ζ_j − t as in the closed form
            let u = -theta;
            let sum: f64 = (2..n)
                .map(|m| {
                    let mf = m as f64;
                    (mf * u).sin() / (mf * mf - 1.0)
                })
                .sum();
            -PI / (2.0 * nf) * u.sin() + 2.0 * PI / nf * sum + PI * (nf * u).sin() / (nf * (nf * nf - 1.0))
        }
        WeightFamily::W => {
            let sum: f64 = (3..n)
                .map(|m| {
                    let mf = m as f64;
                    mf / (mf * mf - 4.0) * (mf * theta).cos()
                })
                .sum();
            PI / nf * (0.25 + 2.0 / 3.0 * theta.cos() + 0.125 * (2.0 * theta).cos())
                + 0.5 * weight_at(WeightFamily::R, n, theta)
                + PI / nf * sum
                + PI / (2.0 * (nf * nf - 4.0)) * (nf * theta).cos()
        }
    }
}

/// Weights `family_j(t)` for the `2n` unshifted nodes `ζ_j = πj/n`.
pub fn weights(family: WeightFamily, n: usize, t: f64) -> Result<Vec<f64>> {
    check_n(n)?;
    Ok((0..2 * n).map(|j| weight_at(family, n, t - PI * j as f64 / n as f64)).collect())
}

/// `W_j(t) − R_j(t) sin²(t − ζ_j)` in its four-term closed form.
pub fn remark52_closed_form(n: usize, theta: f64) -> f64 {
    let nf = n as f64;
    PI / (2.0 * nf * nf) * (nf * theta).sin() * (2.0 * theta).sin()
        + PI / (nf * nf - nf) * (nf * theta).sin() * theta.sin()
        - PI / (nf * (nf - 1.0) * (nf + 1.0)) * ((nf - 1.0) * theta).cos()
        - PI / (nf * (nf - 2.0) * (nf + 2.0)) * (nf * theta).cos()
}

/// `W_j(ζ_i) − R_j(ζ_i) sin²(ζ_i − ζ_j)` evaluated directly from the weights.
pub fn remark52_gap(n: usize, i: usize, j: usize) -> Result<f64> {
    check_n(n)?;
    if i >= 2 * n || j >= 2 * n {
        return Err(Error::InvalidParameter(format!("node index out of range for n = {n}")));
    }
    let theta = PI * (i as f64 - j as f64) / n as f64;
    let s = theta.sin();
    Ok(weight_at(WeightFamily::W, n, theta) - weight_at(WeightFamily::R, n, theta) * s * s)
}

/// Weights of one family at every node of a grid, entry `(i, j)` being
/// `weight_j(t_i)`. Nodes and collocation points share the grid, so the table
/// is circulant and stored as one row of offsets.
#[derive(Debug, Clone)]
pub struct WeightTable {
    pub family: WeightFamily,
    pub n: usize,
    offsets: Vec<f64>,
}

impl WeightTable {
    pub fn new(family: WeightFamily, grid: &Discretization) -> Result<Self> {
        check_n(grid.n)?;
        let n = grid.n;
        let offsets = (0..2 * n).map(|k| weight_at(family, n, PI * k as f64 / n as f64)).collect();
        Ok(WeightTable { family, n, offsets })
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let m = 2 * self.n;
        self.offsets[(i + m - j) % m]
    }

    /// Row `i` as a dense vector.
    pub fn row(&self, i: usize) -> Vec<f64> {
        (0..2 * self.n).map(|j| self.get(i, j)).collect()
    }

    /// Applies the quadrature at node `i` to samples `f(ζ_j)`.
    pub fn apply(&self, i: usize, samples: &[Complex64]) -> Complex64 {
        samples.iter().enumerate().map(|(j, f)| f * self.get(i, j)).sum()
    }
}

/// The four tables for one grid.
#[derive(Debug, Clone)]
pub struct WeightSet {
    pub r: WeightTable,
    pub t: WeightTable,
    pub v: WeightTable,
    pub w: WeightTable,
}

impl WeightSet {
    pub fn new(grid: &Discretization) -> Result<Self> {
        Ok(WeightSet {
            r: WeightTable::new(WeightFamily::R, grid)?,
            t: WeightTable::new(WeightFamily::T, grid)?,
            v: WeightTable::new(WeightFamily::V, grid)?,
            w: WeightTable::new(WeightFamily::W, grid)?,
        })
    }
}
