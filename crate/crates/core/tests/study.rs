use biwave_core::study::{emit_far_field, write_outputs, FarFieldSamples, ReportRow, CSV_HEADER};
use biwave_core::prelude::*;
use std::fs;

fn row(n: usize) -> ReportRow {
    ReportRow { n, err_h: Some(1.5e-3 / n as f64), err_m: Some(2e-9), err_far: None, assembly_s: 0.25, solve_s: 0.5, cond: 1.2e4 }
}

fn report() -> SolveReport {
    SolveReport { rows: vec![row(8), row(16), row(32)], far_fields: Vec::new() }
}

fn apple_point_source(sweep: Vec<usize>) -> RunConfig {
    RunConfig::from_json(&format!(
        r#"{{ "curve": "apple", "formulation": "a1", "kappa": 2.0,
             "incident": "point_source", "source": [0.1, 0.2], "sweep": {sweep:?} }}"#
    ))
    .unwrap()
}

#[test]
fn csv_report_has_a_header_and_one_line_per_row() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    emit_report(&report(), ReportFormat::Csv, &path).unwrap();
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], CSV_HEADER);
    assert_eq!(lines[1], "8,1.875e-4,2e-9,,0.250,0.500,1.2e4");
    let mut reader = csv::Reader::from_path(&path).unwrap();
    for (rec, n) in reader.records().zip([8, 16, 32]) {
        let rec = rec.unwrap();
        assert_eq!(rec[0].parse::<usize>().unwrap(), n);
        assert_eq!(rec[1].parse::<f64>().unwrap(), 1.5e-3 / n as f64);
    }
}

#[test]
fn json_report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let mut r = report();
    r.far_fields.push(FarFieldSamples { n: 8, angles: vec![0.0, 1.0], values: vec![Complex64::new(1.0, -2.0); 2] });
    emit_report(&r, ReportFormat::Json, &path).unwrap();
    let back: SolveReport = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(back, r);
    let value: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert!(value["rows"][0]["errH"].is_number());
    assert!(value["rows"][0]["errFar"].is_null());
}

#[test]
fn far_field_samples_are_written_as_angle_re_im() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("far.csv");
    let angles = observation_angles(32);
    let values: Vec<Complex64> = angles.iter().map(|&a| Complex64::new(a.cos(), a.sin())).collect();
    emit_far_field(&FarFieldSamples { n: 16, angles: angles.clone(), values }, &path).unwrap();
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 33);
    assert_eq!(text.lines().next().unwrap(), "angle,re,im");
    let last: Vec<f64> = text.lines().last().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(last[0], angles[31]);
    assert_eq!(last[1], angles[31].cos());
}

#[test]
fn unwritable_paths_and_empty_reports_are_errors() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("no/such/dir/r.csv");
    assert!(emit_report(&report(), ReportFormat::Csv, &missing).is_err());
    let empty = SolveReport { rows: Vec::new(), far_fields: Vec::new() };
    assert!(emit_report(&empty, ReportFormat::Csv, &dir.path().join("e.csv")).is_err());
}

#[test]
fn point_source_sweep_converges() {
    let report = run_convergence(&apple_point_source(vec![64, 8, 32, 16, 16])).unwrap();
    let ns: Vec<usize> = report.rows.iter().map(|r| r.n).collect();
    assert_eq!(ns, vec![8, 16, 32, 64]);
    let err: Vec<f64> = report.rows.iter().map(|r| r.err_h.unwrap()).collect();
    assert!(err[2] < err[1] && err[3] < err[2], "{err:?}");
    assert!(err[3] <= 1e-10, "{err:?}");
    for r in &report.rows {
        assert!(r.err_m.unwrap() <= r.err_h.unwrap() && r.err_far.unwrap() < 1.0);
        assert!(r.cond >= 1.0);
    }
    assert_eq!(report.far_fields.len(), 4);
    assert!(report.far_fields.iter().all(|f| f.values.len() == 32));
}

#[test]
fn reports_are_deterministic_apart_from_timings() {
    let config = apple_point_source(vec![8, 16]);
    let strip = |r: SolveReport| -> Vec<(usize, Option<f64>, Option<f64>, Option<f64>, f64)> {
        r.rows.into_iter().map(|r| (r.n, r.err_h, r.err_m, r.err_far, r.cond)).collect()
    };
    let a = run_convergence(&config).unwrap();
    let b = run_convergence(&config).unwrap();
    assert_eq!(a.far_fields, b.far_fields);
    assert_eq!(strip(a), strip(b));
}

#[test]
fn outputs_are_written_to_a_directory() {
    let dir = tempfile::tempdir().unwrap();
    let report = run_convergence(&apple_point_source(vec![8, 16])).unwrap();
    let out = dir.path().join("out");
    let files = write_outputs(&report, &out).unwrap();
    let names: Vec<String> = files.iter().map(|p| p.file_name().unwrap().to_string_lossy().into_owned()).collect();
    assert_eq!(names, ["report.csv", "report.json", "farfield_n8.csv", "farfield_n16.csv"]);
    assert!(files.iter().all(|p| p.is_file()));
}

#[test]
fn the_failing_resolution_is_reported() {
    // κ times the radius is the first zero of J0: an interior Dirichlet
    // eigenvalue, where the single-single system is singular
    let mut config = apple_point_source(vec![16, 32]);
    config.curve = CurveKind::Circle { radius: 2.404825557695773 / 2.0 };
    config.formulation = Formulation::SingleSingle;
    config.incident = Incident::PlaneWave { theta: 0.3 };
    let err = run_convergence(&config).unwrap_err();
    assert!(err.is_solver_failure());
    match &err {
        Error::Failed { n, source } => {
            assert_eq!(*n, 16);
            assert!(matches!(**source, Error::Residual { .. }));
        }
        other => panic!("unexpected {other}"),
    }
    assert!(err.to_string().contains("n = 16"));
    // the double-layer representation is not affected by Dirichlet eigenvalues
    config.formulation = Formulation::DoubleSingleA1;
    assert!(run_convergence(&config).is_ok());
}

#[test]
fn invalid_configurations_are_rejected_before_solving() {
    let mut c = apple_point_source(vec![8]);
    c.sweep.clear();
    assert!(run_convergence(&c).is_err());
    let mut c = apple_point_source(vec![8]);
    c.incident = Incident::PointSource { source: [3.0, 0.0] };
    assert!(matches!(run_convergence(&c), Err(Error::Placement { .. })));
    assert!(RunConfig::from_json(r#"{ "curve": "apple" }"#).is_err());
    assert!(RunConfig::from_json(r#"{ "curve": "apple", "formulation": "b7", "kappa": 2, "incident": "plane_wave", "theta": 0, "sweep": [8] }"#).is_err());
}

#[test]
fn presets_round_trip_through_json() {
    for p in Preset::ALL {
        let c = p.config();
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(RunConfig::from_json(&text).unwrap(), c, "{}", p.name());
    }
}
