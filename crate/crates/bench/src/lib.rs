//! Fixtures shared by the criterion benches.

use biwave_core::prelude::*;

pub const KAPPA: f64 = 2.0;

/// Log-spaced Bessel arguments on `[1e-3, 100]`.
pub fn bessel_arguments(count: usize) -> Vec<f64> {
    (0..count).map(|k| 1e-3 * 1e5f64.powf(k as f64 / (count - 1) as f64)).collect()
}

/// Apple cavity with a point-source right-hand side, assembled at `n`.
pub fn apple_system(formulation: Formulation, n: usize) -> Result<(BoundaryCurve, Discretization, LinearSystem)> {
    let curve = BoundaryCurve::new(CurveKind::Apple);
    let grid = collocation_nodes(n, false)?;
    let mut system = assemble(formulation, &curve, &grid, KAPPA)?;
    system.rhs = rhs_from_incident(&IncidentField::PointSource { kappa: KAPPA, source: [0.1, 0.2] }, &curve, &grid)?;
    Ok((curve, grid, system))
}
