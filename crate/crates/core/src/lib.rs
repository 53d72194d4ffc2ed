//! Boundary integral solvers for time-harmonic biharmonic (flexural) wave
//! scattering by a clamped cavity in an infinite thin plate.
//!
//! The scattered displacement `v` of `Δ²v − κ⁴v = 0` is split as
//! `v = v_H + v_M`, where `v_H` solves the Helmholtz equation and `v_M` the
//! modified Helmholtz equation. The clamped conditions `u = ∂_ν u = 0` couple
//! the two components on the boundary. Three Nyström discretisations are
//! provided (see [`assembly::Formulation`]):
//!
//! * double layer for `v_H`, single layer for `v_M`, kernels split into a
//!   logarithmic and a smooth part and integrated with trigonometric weights;
//! * the same system with the leading singular operators split off and
//!   integrated exactly;
//! * single layers for both components.
//!
//! ```no_run
//! use biwave_core::prelude::*;
//!
//! let curve = BoundaryCurve::new(CurveKind::Apple);
//! let grid = collocation_nodes(32, false)?;
//! let mut system = assemble(Formulation::SingleSingle, &curve, &grid, 2.0)?;
//! let incident = IncidentField::PlaneWave { kappa: 2.0, theta: std::f64::consts::PI / 6.0 };
//! system.rhs = rhs_from_incident(&incident, &curve, &grid)?;
//! let solved = solve(&system)?;
//! let angles = observation_angles(32);
//! let far = far_field(&solved.densities, Formulation::SingleSingle, &curve, &grid, 2.0, &angles)?;
//! # Ok::<(), biwave_core::Error>(())
//! ```

// `!(x > 0.0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod assembly;
pub mod error;
pub mod geometry;
pub mod kernels;
pub mod postfield;
pub mod quadrature;
pub mod specfun;
pub mod study;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub mod prelude {
    pub use crate::assembly::{
        assemble, rhs_from_incident, solve, DensityPair, Formulation, IncidentField, LinearSystem, Solved,
    };
    pub use crate::error::{Error, Result};
    pub use crate::geometry::{collocation_nodes, graded_map, BoundaryCurve, CurveJet, CurveKind, Discretization};
    pub use crate::kernels::{kernel_direct, kernel_split, remainder_kernel, KernelId, KernelSplitValue};
    pub use crate::postfield::{
        circle_points, eval_field, eval_fields, far_field, l2_error_on_circle, observation_angles, FarField,
        FieldSample,
    };
    pub use crate::quadrature::{trapezoid, weights, WeightFamily, WeightTable};
    pub use crate::study::{emit_report, report_csv, run_convergence, Incident, Preset, ReportFormat, RunConfig, SolveReport};
    pub use num_complex::Complex64;
}
