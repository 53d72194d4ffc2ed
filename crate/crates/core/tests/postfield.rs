use biwave_core::postfield::{max_error, PointSource};
use biwave_core::prelude::*;
use std::f64::consts::PI;

const KAPPA: f64 = 2.0;
const FORMULATIONS: [Formulation; 3] = [Formulation::DoubleSingleA1, Formulation::DoubleSingleA2, Formulation::SingleSingle];

struct Run {
    curve: BoundaryCurve,
    grid: Discretization,
    formulation: Formulation,
    densities: DensityPair,
}

fn run(formulation: Formulation, kind: CurveKind, n: usize, incident: &IncidentField) -> Run {
    let curve = BoundaryCurve::new(kind);
    let grid = collocation_nodes(n, false).unwrap();
    let mut system = assemble(formulation, &curve, &grid, KAPPA).unwrap();
    system.rhs = rhs_from_incident(incident, &curve, &grid).unwrap();
    let densities = solve(&system).unwrap().densities;
    Run { curve, grid, formulation, densities }
}

impl Run {
    fn fields(&self, points: &[[f64; 2]]) -> Vec<FieldSample> {
        eval_fields(&self.densities, self.formulation, &self.curve, &self.grid, KAPPA, points).unwrap()
    }

    fn far(&self, angles: &[f64]) -> Vec<Complex64> {
        far_field(&self.densities, self.formulation, &self.curve, &self.grid, KAPPA, angles).unwrap().values
    }
}

fn point_source() -> IncidentField {
    IncidentField::PointSource { kappa: KAPPA, source: [0.1, 0.2] }
}

fn plane() -> IncidentField {
    IncidentField::PlaneWave { kappa: KAPPA, theta: PI / 6.0 }
}

#[test]
fn helmholtz_part_matches_the_exact_solution() {
    let exact = PointSource::new(KAPPA, [0.1, 0.2]);
    let points = circle_points(1.0, 256);
    for f in FORMULATIONS {
        let r = run(f, CurveKind::Apple, 64, &point_source());
        let worst = r
            .fields(&points)
            .iter()
            .zip(&points)
            .map(|(s, &x)| (s.vh - exact.values(x).0).norm())
            .fold(0.0, f64::max);
        assert!(worst <= 1e-10, "{f:?}: {worst:e}");
    }
}

#[test]
fn modified_part_decays_exponentially() {
    let r = run(Formulation::DoubleSingleA1, CurveKind::Apple, 32, &plane());
    for a in [0.0f64, 1.0, 2.5, 4.0] {
        let d = [a.cos(), a.sin()];
        let f = r.fields(&[[2.0 * d[0], 2.0 * d[1]], [4.0 * d[0], 4.0 * d[1]]]);
        let ratio = f[1].vm.norm() / f[0].vm.norm();
        assert!(ratio <= (-3.0f64).exp(), "angle {a}: ratio {ratio}");
    }
}

#[test]
fn far_region_behaviour() {
    let r = run(Formulation::SingleSingle, CurveKind::Peanut, 32, &plane());
    let d = [0.6f64.cos(), 0.6f64.sin()];
    let at = |radius: f64| r.fields(&[[radius * d[0], radius * d[1]]])[0];
    let scaled: Vec<f64> = [5.0, 10.0, 20.0].iter().map(|&rad| at(rad).vh.norm() * rad.sqrt()).collect();
    let (lo, hi) = scaled.iter().fold((f64::MAX, 0.0f64), |(l, h), &v| (l.min(v), h.max(v)));
    assert!(hi <= 1.2 * lo, "{scaled:?}");
    assert!(at(10.0).vm.norm() < 1e-8);
}

#[test]
fn far_field_is_the_limit_of_the_field() {
    // v_H(R x̂) √R e^{−iκR} → v_∞(x̂) with an O(1/R) remainder; two radii
    // remove the leading remainder term
    for f in FORMULATIONS {
        let r = run(f, CurveKind::Apple, 32, &plane());
        for a in [0.3, 2.0, 4.4] {
            let d = [f64::cos(a), f64::sin(a)];
            let scaled = |rad: f64| {
                let v = r.fields(&[[rad * d[0], rad * d[1]]])[0].vh;
                v * rad.sqrt() * Complex64::from_polar(1.0, -KAPPA * rad)
            };
            let limit = 2.0 * scaled(800.0) - scaled(400.0);
            let far = r.far(&[a])[0];
            assert!((limit - far).norm() <= 1e-4 * far.norm(), "{f:?} at {a}: {limit} vs {far}");
        }
    }
}

#[test]
fn far_fields_agree_across_formulations() {
    let angles = observation_angles(32);
    let far: Vec<Vec<Complex64>> = FORMULATIONS.iter().map(|&f| run(f, CurveKind::Apple, 64, &plane()).far(&angles)).collect();
    for i in 0..3 {
        for j in i + 1..3 {
            let d = max_error(&far[i], &far[j]);
            assert!(d <= 1e-6, "{:?} vs {:?}: {d:e}", FORMULATIONS[i], FORMULATIONS[j]);
        }
    }
}

#[test]
fn point_source_far_field_is_recovered() {
    let exact = PointSource::new(KAPPA, [0.1, 0.2]);
    let angles = observation_angles(32);
    let expected: Vec<Complex64> = angles.iter().map(|&a| exact.far_field(a)).collect();
    for f in FORMULATIONS {
        let got = run(f, CurveKind::Apple, 64, &point_source()).far(&angles);
        assert!(max_error(&got, &expected) <= 1e-10, "{f:?}");
    }
}

#[test]
fn l2_error_is_resolved_by_the_sample_count() {
    let r = run(Formulation::DoubleSingleA1, CurveKind::Apple, 16, &point_source());
    let exact = PointSource::new(KAPPA, [0.1, 0.2]);
    let err = |m: usize| {
        let points = circle_points(1.0, m);
        let vh: Vec<Complex64> = r.fields(&points).iter().map(|s| s.vh).collect();
        let eh: Vec<Complex64> = points.iter().map(|&x| exact.values(x).0).collect();
        l2_error_on_circle(&vh, &eh, 1.0).unwrap()
    };
    let (a, b) = (err(256), err(512));
    assert!((a - b).abs() <= 1e-12, "{a:e} vs {b:e}");
    assert!(a > 0.0);
}

#[test]
fn fields_are_linear_in_the_densities() {
    let base = run(Formulation::DoubleSingleA2, CurveKind::Peach, 16, &plane());
    let c = Complex64::new(0.4, -2.5);
    let scaled = Run { densities: base.densities.scale(c), curve: base.curve.clone(), grid: base.grid.clone(), ..base };
    let points = circle_points(1.5, 64);
    for (a, b) in scaled.fields(&points).iter().zip(base.fields(&points)) {
        assert!((a.v - c * b.v).norm() <= 1e-12 * a.v.norm().max(1.0));
        assert!((a.v - (a.vh + a.vm)).norm() == 0.0);
    }
    let angles = observation_angles(8);
    for (a, b) in scaled.far(&angles).iter().zip(base.far(&angles)) {
        assert!((a - c * b).norm() <= 1e-12 * a.norm().max(1.0));
    }
}

#[test]
fn points_inside_or_near_the_boundary_are_rejected() {
    let r = run(Formulation::SingleSingle, CurveKind::Apple, 16, &plane());
    for x in [[0.1, 0.2], [0.0, 0.0]] {
        let e = eval_field(&r.densities, r.formulation, &r.curve, &r.grid, KAPPA, x);
        assert!(matches!(e, Err(Error::Placement { .. })), "{x:?}");
    }
    let on = r.curve.jet(0.4).unwrap().point;
    assert!(eval_field(&r.densities, r.formulation, &r.curve, &r.grid, KAPPA, on).is_err());
    assert!(eval_field(&r.densities, r.formulation, &r.curve, &r.grid, 0.0, [3.0, 0.0]).is_err());
    let short = DensityPair::zeros(4);
    assert!(eval_field(&short, r.formulation, &r.curve, &r.grid, KAPPA, [3.0, 0.0]).is_err());
}

#[test]
fn l2_error_needs_matching_samples() {
    let a = vec![Complex64::new(1.0, 0.0); 64];
    assert!(l2_error_on_circle(&a, &a[..32], 1.0).is_err());
    assert!(l2_error_on_circle(&a[..32], &a[..32], 1.0).is_err());
    assert_eq!(l2_error_on_circle(&a, &a, 1.0).unwrap(), 0.0);
}
