//! Convergence studies: run configurations, named presets, and report
//! emission.

use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::assembly::{assemble, rhs_from_incident, solve, Formulation, IncidentField};
use crate::error::{Error, Result};
use crate::geometry::{collocation_nodes, BoundaryCurve, CurveKind, Vec2};
use crate::postfield::{circle_points, eval_fields, far_field, l2_error_on_circle, max_error, observation_angles, FarField, PointSource};

/// CSV header of a report.
pub const CSV_HEADER: &str = "n,errH,errM,errFar,assembly_s,solve_s,cond";

/// Incident field of a run; the wavenumber lives in [`RunConfig`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "incident", rename_all = "snake_case")]
pub enum Incident {
    PlaneWave { theta: f64 },
    PointSource { source: Vec2 },
}

fn default_radius() -> f64 {
    1.0
}

fn default_samples() -> usize {
    256
}

fn default_angles() -> usize {
    32
}

/// One convergence study. Serialised as a flat JSON object, for example
///
/// ```json
/// { "curve": "apple", "formulation": "a1", "kappa": 2.0,
///   "incident": "point_source", "source": [0.1, 0.2],
///   "sweep": [8, 16, 32, 64] }
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub curve: CurveKind,
    /// Grading exponent `p`; graded runs need `shifted = true`.
    #[serde(default)]
    pub grading: Option<f64>,
    #[serde(default)]
    pub shifted: bool,
    pub formulation: Formulation,
    pub kappa: f64,
    #[serde(flatten)]
    pub incident: Incident,
    pub sweep: Vec<usize>,
    /// Reference resolution for far-field errors of plane-wave runs.
    #[serde(default)]
    pub reference_n: Option<usize>,
    /// Radius of the circle carrying the `L²` field errors.
    #[serde(default = "default_radius")]
    pub radius: f64,
    /// Points on that circle.
    #[serde(default = "default_samples")]
    pub samples: usize,
    /// Far-field observation angles.
    #[serde(default = "default_angles")]
    pub angles: usize,
    /// Output directory.
    #[serde(default)]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn boundary(&self) -> Result<BoundaryCurve> {
        let curve = match self.grading {
            Some(p) => BoundaryCurve::graded(self.curve.clone(), p)?,
            None => BoundaryCurve::new(self.curve.clone()),
        };
        curve.validate()?;
        Ok(curve)
    }

    pub fn incident_field(&self) -> IncidentField {
        match self.incident {
            Incident::PlaneWave { theta } => IncidentField::PlaneWave { kappa: self.kappa, theta },
            Incident::PointSource { source } => IncidentField::PointSource { kappa: self.kappa, source },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.sweep.is_empty() {
            return bad("the n sweep is empty".into());
        }
        if let Some(&n) = self.sweep.iter().find(|&&n| n < 4) {
            return bad(format!("n = {n} in the sweep is below the minimum of 4"));
        }
        let max = *self.sweep.iter().max().expect("non-empty");
        if let Some(r) = self.reference_n {
            if r <= max {
                return bad(format!("reference n = {r} must exceed the largest sweep value {max}"));
            }
        }
        if !(self.kappa > 0.0) || !self.kappa.is_finite() {
            return bad(format!("wavenumber {} must be positive", self.kappa));
        }
        if !(self.radius > 0.0) || !self.radius.is_finite() {
            return bad(format!("error circle radius {} must be positive", self.radius));
        }
        if self.samples < 64 {
            return bad(format!("{} circle samples, at least 64 are needed", self.samples));
        }
        if self.angles == 0 {
            return bad("at least one observation angle is needed".into());
        }
        match (self.grading.is_some(), self.shifted) {
            (true, false) => return Err(Error::GridMismatch("graded curves need shifted nodes".into())),
            (false, true) => return Err(Error::GridMismatch("shifted nodes are only used with graded curves".into())),
            _ => {}
        }
        if self.curve.has_corner() && self.grading.is_none() {
            return bad(format!("the {} curve has a corner and needs a grading", self.curve.name()));
        }
        let curve = self.boundary()?;
        match self.incident {
            Incident::PlaneWave { theta } if !theta.is_finite() => return bad(format!("incident angle {theta}")),
            Incident::PointSource { source } => PointSource::new(self.kappa, source).check_inside(&curve)?,
            _ => {}
        }
        if let Incident::PointSource { .. } = self.incident {
            for x in circle_points(self.radius, self.samples.min(64)) {
                crate::postfield::check_exterior(&curve, x)?;
            }
        }
        Ok(())
    }
}

/// Built-in studies, one per published experiment. Far-field references use
/// `n* = 512`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    Table2,
    Table2Peanut,
    Table3,
    Table3Peanut,
    Table4,
    Table4Peanut,
    Table5,
    Table5Peach,
    Table6,
    Table6Peach,
    Table7,
    Table7Drop,
    Table8,
    Table8Drop,
}

/// Desk-scale stand-in for the published `n* = 2048`.
pub const REFERENCE_N: usize = 512;

impl Preset {
    pub const ALL: [Preset; 14] = [
        Preset::Table2,
        Preset::Table2Peanut,
        Preset::Table3,
        Preset::Table3Peanut,
        Preset::Table4,
        Preset::Table4Peanut,
        Preset::Table5,
        Preset::Table5Peach,
        Preset::Table6,
        Preset::Table6Peach,
        Preset::Table7,
        Preset::Table7Drop,
        Preset::Table8,
        Preset::Table8Drop,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Table2 => "table2",
            Preset::Table2Peanut => "table2-peanut",
            Preset::Table3 => "table3",
            Preset::Table3Peanut => "table3-peanut",
            Preset::Table4 => "table4",
            Preset::Table4Peanut => "table4-peanut",
            Preset::Table5 => "table5",
            Preset::Table5Peach => "table5-peach",
            Preset::Table6 => "table6",
            Preset::Table6Peach => "table6-peach",
            Preset::Table7 => "table7",
            Preset::Table7Drop => "table7-drop",
            Preset::Table8 => "table8",
            Preset::Table8Drop => "table8-drop",
        }
    }

    pub fn parse(name: &str) -> Option<Preset> {
        Preset::ALL.into_iter().find(|p| p.name() == name)
    }

    pub fn config(self) -> RunConfig {
        use Preset::*;
        let curve = match self {
            Table2 | Table3 | Table4 | Table5 | Table6 => CurveKind::Apple,
            Table2Peanut | Table3Peanut | Table4Peanut => CurveKind::Peanut,
            Table5Peach | Table6Peach => CurveKind::Peach,
            Table7 | Table8 => CurveKind::Heart,
            Table7Drop | Table8Drop => CurveKind::Drop,
        };
        let formulation = match self {
            Table2 | Table2Peanut | Table3 | Table3Peanut => Formulation::DoubleSingleA1,
            Table4 | Table4Peanut => Formulation::DoubleSingleA2,
            _ => Formulation::SingleSingle,
        };
        let plane = matches!(self, Table3 | Table3Peanut | Table6 | Table6Peach | Table8 | Table8Drop);
        let corner = curve.has_corner();
        let source = if curve == CurveKind::Heart { [-0.5, 0.2] } else { [0.1, 0.2] };
        let sweep = if corner { vec![8, 16, 32, 64, 128, 256] } else { vec![8, 16, 32, 64, 128] };
        RunConfig {
            curve,
            grading: corner.then_some(2.0),
            shifted: corner,
            formulation,
            kappa: 2.0,
            incident: if plane { Incident::PlaneWave { theta: PI / 6.0 } } else { Incident::PointSource { source } },
            sweep,
            reference_n: plane.then_some(REFERENCE_N),
            radius: if corner { 2.0 } else { 1.0 },
            samples: 256,
            angles: 32,
            out: None,
        }
    }
}

/// One row of a convergence table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub n: usize,
    #[serde(rename = "errH")]
    pub err_h: Option<f64>,
    #[serde(rename = "errM")]
    pub err_m: Option<f64>,
    #[serde(rename = "errFar")]
    pub err_far: Option<f64>,
    pub assembly_s: f64,
    pub solve_s: f64,
    pub cond: f64,
}

/// Far-field samples of one resolution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FarFieldSamples {
    pub n: usize,
    pub angles: Vec<f64>,
    pub values: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub rows: Vec<ReportRow>,
    #[serde(default)]
    pub far_fields: Vec<FarFieldSamples>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

fn seconds(start: Instant) -> f64 {
    (start.elapsed().as_secs_f64() * 1000.0).round() / 1000.0
}

struct Outcome {
    row: ReportRow,
    far: FarField,
}

fn run_one(config: &RunConfig, curve: &BoundaryCurve, n: usize, reference: Option<&FarField>) -> Result<Outcome> {
    let grid = collocation_nodes(n, config.shifted)?;
    let incident = config.incident_field();
    let start = Instant::now();
    let mut system = assemble(config.formulation, curve, &grid, config.kappa)?;
    system.rhs = rhs_from_incident(&incident, curve, &grid)?;
    let assembly_s = seconds(start);
    let start = Instant::now();
    let solved = solve(&system)?;
    let solve_s = seconds(start);
    let angles = observation_angles(config.angles);
    let far = far_field(&solved.densities, config.formulation, curve, &grid, config.kappa, &angles)?;
    let (mut err_h, mut err_m, mut err_far) = (None, None, None);
    match config.incident {
        Incident::PointSource { source } => {
            let exact = PointSource::new(config.kappa, source);
            let points = circle_points(config.radius, config.samples);
            let fields = eval_fields(&solved.densities, config.formulation, curve, &grid, config.kappa, &points)?;
            let (vh, vm): (Vec<Complex64>, Vec<Complex64>) = fields.iter().map(|f| (f.vh, f.vm)).unzip();
            let (eh, em): (Vec<Complex64>, Vec<Complex64>) = points.iter().map(|&x| exact.values(x)).unzip();
            err_h = Some(l2_error_on_circle(&vh, &eh, config.radius)?);
            err_m = Some(l2_error_on_circle(&vm, &em, config.radius)?);
            let exact_far: Vec<Complex64> = angles.iter().map(|&a| exact.far_field(a)).collect();
            err_far = Some(max_error(&far.values, &exact_far));
        }
        Incident::PlaneWave { .. } => {
            if let Some(r) = reference {
                err_far = Some(max_error(&far.values, &r.values));
            }
        }
    }
    let row = ReportRow { n, err_h, err_m, err_far, assembly_s, solve_s, cond: solved.condition };
    Ok(Outcome { row, far })
}

/// Runs the sweep in increasing `n`. For point sources the errors are
/// against the exact solution; for plane waves the far-field error is
/// against a solve at `reference_n` when one is configured.
pub fn run_convergence(config: &RunConfig) -> Result<SolveReport> {
    config.validate()?;
    let curve = config.boundary()?;
    let mut sweep = config.sweep.clone();
    sweep.sort_unstable();
    sweep.dedup();
    let reference = match (config.incident, config.reference_n) {
        (Incident::PlaneWave { .. }, Some(r)) => {
            log::info!("reference solve at n = {r}");
            let out = run_one(config, &curve, r, None).map_err(|e| Error::Failed { n: r, source: Box::new(e) })?;
            Some(out.far)
        }
        _ => None,
    };
    let mut report = SolveReport { rows: Vec::new(), far_fields: Vec::new() };
    for n in sweep {
        let out = run_one(config, &curve, n, reference.as_ref()).map_err(|e| Error::Failed { n, source: Box::new(e) })?;
        log::info!(
            "n = {n}: errH {:?} errM {:?} errFar {:?} cond {:.3e}",
            out.row.err_h,
            out.row.err_m,
            out.row.err_far,
            out.row.cond
        );
        report.rows.push(out.row);
        report.far_fields.push(FarFieldSamples { n, angles: out.far.angles, values: out.far.values });
    }
    Ok(report)
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:e}")).unwrap_or_default()
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

/// The report as CSV text, one line per `n` after the header.
pub fn report_csv(report: &SolveReport) -> String {
    let mut out = format!("{CSV_HEADER}\n");
    for r in &report.rows {
        out += &format!(
            "{},{},{},{},{:.3},{:.3},{:e}\n",
            r.n,
            opt(r.err_h),
            opt(r.err_m),
            opt(r.err_far),
            r.assembly_s,
            r.solve_s,
            r.cond
        );
    }
    out
}

/// Writes the report as CSV (one row per `n`) or as JSON.
pub fn emit_report(report: &SolveReport, format: ReportFormat, path: &Path) -> Result<()> {
    if report.rows.is_empty() {
        return Err(Error::InvalidParameter("the report has no rows".into()));
    }
    let mut w = create(path)?;
    match format {
        ReportFormat::Csv => w.write_all(report_csv(report).as_bytes())?,
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut w, report)?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Writes `angle,re,im` rows.
pub fn emit_far_field(samples: &FarFieldSamples, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["angle", "re", "im"])?;
    for (a, v) in samples.angles.iter().zip(&samples.values) {
        w.write_record([format!("{a:e}"), format!("{:e}", v.re), format!("{:e}", v.im)])?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `report.csv`, `report.json` and `farfield_n<k>.csv` into `dir`.
pub fn write_outputs(report: &SolveReport, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = vec![dir.join("report.csv"), dir.join("report.json")];
    emit_report(report, ReportFormat::Csv, &written[0])?;
    emit_report(report, ReportFormat::Json, &written[1])?;
    for f in &report.far_fields {
        let path = dir.join(format!("farfield_n{}.csv", f.n));
        emit_far_field(f, &path)?;
        written.push(path);
    }
    Ok(written)
}
