use biwave_core::kernels::block_kernel;
use biwave_core::prelude::*;
use proptest::prelude::*;

const KAPPA: f64 = 2.0;

fn curves() -> Vec<BoundaryCurve> {
    vec![
        BoundaryCurve::new(CurveKind::Apple),
        BoundaryCurve::new(CurveKind::Peanut),
        BoundaryCurve::circle(0.8),
        BoundaryCurve::graded(CurveKind::Heart, 2.0).unwrap(),
    ]
}

/// Symmetric Richardson extrapolation of one split part towards `ζ = t`;
/// the symmetric average has an even expansion in `h`.
fn extrapolated(id: KernelId, curve: &BoundaryCurve, t: f64, part: fn(KernelSplitValue) -> Complex64) -> Complex64 {
    let avg = |h: f64| {
        let a = part(kernel_split(id, curve, KAPPA, t, t + h).unwrap());
        let b = part(kernel_split(id, curve, KAPPA, t, t - h).unwrap());
        0.5 * (a + b)
    };
    let h = 0.004;
    (4.0 * avg(0.5 * h) - avg(h)) / 3.0
}

#[test]
fn split_recombines_to_direct_values() {
    for curve in curves() {
        for id in KernelId::ALL {
            for &(t, z) in &[(0.3, 2.9), (1.0, 1.05), (4.0, 0.2), (5.5, 5.499)] {
                let split = kernel_split(id, &curve, KAPPA, t, z).unwrap().recombine(t, z);
                let direct = kernel_direct(id, &curve, KAPPA, t, z).unwrap();
                assert!((split - direct).norm() <= 1e-10 * direct.norm().max(1.0), "{id:?} {t} {z}");
            }
        }
    }
}

#[test]
fn diagonal_values_are_limits_of_the_smooth_part() {
    for curve in curves() {
        for id in KernelId::ALL {
            for &t in &[0.4, 2.0, 3.7] {
                let diag = kernel_split(id, &curve, KAPPA, t, t).unwrap().smooth;
                let limit = extrapolated(id, &curve, t, |v| v.smooth);
                assert!((diag - limit).norm() < 1e-6, "{id:?} on {:?} at {t}: {diag} vs {limit}", curve.kind);
            }
        }
    }
}

#[test]
fn diagonal_log_coefficients_are_limits() {
    for curve in curves() {
        for id in KernelId::ALL {
            let t = 1.3;
            let diag = kernel_split(id, &curve, KAPPA, t, t).unwrap().log_coeff;
            let near = extrapolated(id, &curve, t, |v| v.log_coeff);
            assert!((diag - near).norm() < 1e-6, "{id:?}");
        }
    }
}

#[test]
fn modified_helmholtz_kernels_are_real() {
    for curve in curves() {
        for id in KernelId::ALL.into_iter().filter(|k| k.is_modified()) {
            for &(t, z) in &[(0.3, 2.9), (1.0, 1.0), (4.0, 4.1)] {
                let v = kernel_split(id, &curve, KAPPA, t, z).unwrap();
                assert!(v.log_coeff.im.abs() < 1e-13 && v.smooth.im.abs() < 1e-13, "{id:?}");
            }
        }
    }
}

#[test]
fn single_layer_kernels_are_symmetric() {
    let curve = BoundaryCurve::new(CurveKind::Apple);
    for id in [KernelId::S, KernelId::SH, KernelId::SM, KernelId::R, KernelId::H] {
        let a = kernel_direct(id, &curve, KAPPA, 0.7, 2.2).unwrap();
        let b = kernel_direct(id, &curve, KAPPA, 2.2, 0.7).unwrap();
        assert!((a - b).norm() < 1e-12 * a.norm().max(1.0), "{id:?}");
    }
}

#[test]
fn double_layer_kernels_are_adjoint_pairs() {
    // both are the normal derivative at γ(ζ) of the same fundamental solution
    let curve = BoundaryCurve::new(CurveKind::Peanut);
    let l = kernel_direct(KernelId::L, &curve, KAPPA, 0.7, 2.2).unwrap();
    let kh = kernel_direct(KernelId::KH, &curve, KAPPA, 2.2, 0.7).unwrap();
    assert!((l - kh).norm() < 1e-12 * l.norm());
}

#[test]
fn remainder_diagonal_log_coefficient_is_zero() {
    for curve in curves() {
        for (row, col) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let v = remainder_kernel(row, col, &curve, KAPPA, 2.5, 2.5).unwrap();
            assert_eq!(v.log_coeff, Complex64::new(0.0, 0.0));
        }
    }
}

#[test]
fn remainder_log_coefficients_vanish_to_third_order() {
    let curve = BoundaryCurve::new(CurveKind::Apple);
    for (row, col) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let full = block_kernel(row, col, &curve, KAPPA, 1.1, 1.2).unwrap().log_coeff;
        let at = |h: f64| remainder_kernel(row, col, &curve, KAPPA, 1.1, 1.1 + h).unwrap().log_coeff.norm();
        let (a, b) = (at(0.04), at(0.02));
        assert!(b < 1e-3 * full.norm().max(1.0), "({row}, {col}) remainder {b}");
        // third order: halving h divides by about 8
        assert!(a / b > 6.0 || b < 1e-13, "({row}, {col}) ratio {}", a / b);
    }
}

#[test]
fn remainder_plus_extracted_equals_block() {
    // far from the diagonal the remainder differs from the full block only
    // by the extracted closed-form kernels, which are smooth multiples of the log
    let curve = BoundaryCurve::new(CurveKind::Apple);
    let (t, z) = (0.5, 3.0);
    for (row, col) in [(1, 1), (2, 2)] {
        let full = block_kernel(row, col, &curve, KAPPA, t, z).unwrap();
        let rem = remainder_kernel(row, col, &curve, KAPPA, t, z).unwrap();
        assert!((full.smooth - rem.smooth).norm() < 1e-14);
        assert!((full.log_coeff - rem.log_coeff).norm() > 0.0);
    }
}

#[test]
fn invalid_arguments() {
    let curve = BoundaryCurve::new(CurveKind::Apple);
    assert!(kernel_direct(KernelId::S, &curve, KAPPA, 1.0, 1.0).is_err());
    assert!(kernel_split(KernelId::S, &curve, 0.0, 1.0, 2.0).is_err());
    assert!(remainder_kernel(3, 1, &curve, KAPPA, 1.0, 2.0).is_err());
    let heart = BoundaryCurve::new(CurveKind::Heart);
    assert!(matches!(kernel_split(KernelId::S, &heart, KAPPA, 0.0, 1.0), Err(Error::Corner(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn recombination_holds_for_random_pairs(t in 0.0..std::f64::consts::TAU, d in 0.01..6.27f64, idx in 0usize..9) {
        let curve = BoundaryCurve::new(CurveKind::Apple);
        let id = KernelId::ALL[idx];
        let z = t + d;
        let split = kernel_split(id, &curve, KAPPA, t, z).unwrap().recombine(t, z);
        let direct = kernel_direct(id, &curve, KAPPA, t, z).unwrap();
        prop_assert!((split - direct).norm() <= 1e-10 * direct.norm().max(1.0));
    }

    #[test]
    fn kernels_are_periodic(t in 0.0..std::f64::consts::TAU, d in 0.05..6.2f64, idx in 0usize..9) {
        let curve = BoundaryCurve::new(CurveKind::Peanut);
        let id = KernelId::ALL[idx];
        let a = kernel_direct(id, &curve, KAPPA, t, t + d).unwrap();
        let b = kernel_direct(id, &curve, KAPPA, t + std::f64::consts::TAU, t + d - std::f64::consts::TAU).unwrap();
        prop_assert!((a - b).norm() <= 1e-9 * a.norm().max(1.0));
    }
}
