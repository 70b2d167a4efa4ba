//! CSV, JSON and SVG output for sweeps.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{DistortionRow, ExperimentConfig, Topology};
use crate::error::{MagError, Result};

pub const CSV_HEADER: &str = "p,ones,n_vertices,n_possible_edges,c_x,c_edgeset,c_tau,c_edgeset_given_x,c_graph_edgeset";

/// JSON Schema describing the report files written by [`write_reports`].
pub const REPORT_SCHEMA: &str = include_str!("../../schema/report.schema.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportKind {
    DistortionSweep,
    UniformControl,
}

impl ReportKind {
    /// File stem used for this kind of report.
    pub fn stem(self) -> &'static str {
        match self {
            ReportKind::DistortionSweep => "sweep",
            ReportKind::UniformControl => "control_uniform",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Complete,
    Failed,
}

/// The configuration echo stored with every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportConfig {
    pub seed: u64,
    pub effective_seed: Option<u64>,
    pub p_values: Vec<usize>,
    pub topology: Topology,
    pub compressor: String,
    pub ones_cap: u64,
    pub size_cap_bits: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepReport {
    pub kind: ReportKind,
    pub crate_version: String,
    pub config: ReportConfig,
    /// `w` at the largest `p`, as a 0/1 string.
    pub signature: Option<String>,
    pub status: Status,
    pub failure: Option<String>,
    pub rows: Vec<DistortionRow>,
    /// Uniform control only: the sweep `p` each row stands in for.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub paired_p: Option<Vec<u64>>,
}

impl SweepReport {
    pub(crate) fn new(kind: ReportKind, cfg: &ExperimentConfig) -> Self {
        SweepReport {
            kind,
            crate_version: env!("CARGO_PKG_VERSION").to_string(),
            config: ReportConfig {
                seed: cfg.seed,
                effective_seed: None,
                p_values: cfg.p_values.clone(),
                topology: cfg.topology,
                compressor: cfg.compressor.clone(),
                ones_cap: cfg.ones_cap,
                size_cap_bits: cfg.size_cap_bits,
            },
            signature: None,
            status: Status::Complete,
            failure: None,
            rows: Vec::new(),
            paired_p: (kind == ReportKind::UniformControl).then(Vec::new),
        }
    }

    pub(crate) fn push(&mut self, row: DistortionRow, p: usize) {
        self.rows.push(row);
        if let Some(paired) = &mut self.paired_p {
            paired.push(p as u64);
        }
    }

    pub(crate) fn fail(&mut self, e: &MagError) {
        self.status = Status::Failed;
        self.failure = Some(e.to_string());
    }

    /// The sweep `p` of each row: `paired_p` for the uniform control, the
    /// row's own `p` otherwise.
    pub fn sweep_p(&self) -> Vec<u64> {
        match &self.paired_p {
            Some(paired) => paired.clone(),
            None => self.rows.iter().map(|r| r.p).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn write_csv<W: Write>(rows: &[DistortionRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    let to_io = |e: csv::Error| MagError::Io(e.into());
    w.write_record(CSV_HEADER.split(',')).map_err(to_io)?;
    for r in rows {
        w.serialize(r).map_err(to_io)?;
    }
    w.flush()?;
    Ok(())
}

/// Parses and validates a report written by [`write_reports`].
pub fn read_report_json(text: &str) -> Result<SweepReport> {
    let report: SweepReport = serde_json::from_str(text).map_err(|e| MagError::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    validate_report(&report)?;
    Ok(report)
}

/// Checks the constraints the type system cannot: row arithmetic, status
/// consistency and row/config agreement.
pub fn validate_report(r: &SweepReport) -> Result<()> {
    let bad = |msg: String| Err(MagError::Malformed(msg));
    for row in &r.rows {
        row.check_invariants()?;
    }
    match (r.status, &r.failure) {
        (Status::Complete, None) | (Status::Failed, Some(_)) => {}
        _ => return bad("status and failure disagree".into()),
    }
    if r.status == Status::Complete && r.rows.len() != r.config.p_values.len() {
        return bad(format!(
            "complete report has {} rows for {} p values",
            r.rows.len(),
            r.config.p_values.len()
        ));
    }
    if r.rows.len() > r.config.p_values.len() {
        return bad("more rows than p values".into());
    }
    let expected: Vec<u64> = r.config.p_values.iter().take(r.rows.len()).map(|&p| p as u64).collect();
    match (r.kind, &r.paired_p) {
        (ReportKind::DistortionSweep, None) => {
            if r.rows.iter().map(|row| row.p).ne(expected.iter().copied()) {
                return bad("row p values do not follow the config".into());
            }
        }
        (ReportKind::UniformControl, Some(paired)) => {
            if *paired != expected {
                return bad("paired_p does not follow the config".into());
            }
            if r.rows.iter().any(|row| row.p != row.ones) {
                return bad("uniform rows must have p = ones".into());
            }
        }
        _ => return bad("paired_p is present exactly for the uniform control".into()),
    }
    Ok(())
}

type Series = (&'static str, &'static str, fn(&DistortionRow) -> u64);

const SERIES: [Series; 4] = [
    ("c_x", "#1b9e77", |r| r.c_x),
    ("c_edgeset", "#d95f02", |r| r.c_edgeset),
    ("c_tau", "#7570b3", |r| r.c_tau),
    ("c_graph_edgeset", "#e7298a", |r| r.c_graph_edgeset),
];

/// Line chart of the four compressed sizes against the sweep `p`, with a
/// log₂ vertical axis.
pub fn render_svg(report: &SweepReport) -> String {
    let (w, h) = (720.0, 440.0);
    let (left, right, top, bottom) = (70.0, 170.0, 30.0, 50.0);
    let xs: Vec<f64> = report.sweep_p().iter().map(|&p| p as f64).collect();
    let log = |v: u64| (v.max(1) as f64).log2();
    let ys = report
        .rows
        .iter()
        .flat_map(|r| SERIES.iter().map(move |s| log((s.2)(r))));
    let y_max = ys.fold(1.0f64, f64::max).ceil();
    let (x_min, x_max) = xs.iter().fold((f64::MAX, f64::MIN), |(a, b), &x| (a.min(x), b.max(x)));
    let x_span = if x_max > x_min { x_max - x_min } else { 1.0 };
    let px = |x: f64| left + (x - x_min) / x_span * (w - left - right);
    let py = |y: f64| h - bottom - y / y_max * (h - top - bottom);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#
    );
    let title = match report.kind {
        ReportKind::DistortionSweep => "distortion sweep",
        ReportKind::UniformControl => "uniform control",
    };
    let _ = writeln!(
        s,
        r#"<text x="{left}" y="18">{title}, compressor {}, seed {}</text>"#,
        report.config.compressor, report.config.seed
    );
    let _ = writeln!(
        s,
        r#"<path d="M{left} {top} V{:.2} H{:.2}" fill="none" stroke="black"/>"#,
        h - bottom,
        w - right
    );
    let step = (y_max / 8.0).ceil().max(1.0);
    let mut y = 0.0;
    while y <= y_max {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">2^{y}</text>"#,
            left - 6.0,
            py(y) + 4.0
        );
        y += step;
    }
    for &x in &xs {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{x}</text>"#,
            px(x),
            h - bottom + 18.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">p</text>"#,
        (left + w - right) / 2.0,
        h - 8.0
    );
    for (i, (name, color, get)) in SERIES.iter().enumerate() {
        let points: Vec<String> = xs
            .iter()
            .zip(&report.rows)
            .map(|(&x, r)| format!("{:.2},{:.2}", px(x), py(log(get(r)))))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline data-series="{name}" points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
            points.join(" ")
        );
        let ly = top + 20.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{ly}" x2="{:.2}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{:.2}" y="{:.2}">{name}</text>"#,
            w - right + 15.0,
            w - right + 35.0,
            w - right + 40.0,
            ly + 4.0
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Writes `<stem>.csv`, `<stem>.json` and, when there are rows, `<stem>.svg`
/// into `dir`. A failed report also leaves a `FAILED` marker holding the
/// error message; a complete one removes any stale marker.
pub fn write_reports(report: &SweepReport, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    let stem = report.kind.stem();
    write_csv(&report.rows, fs::File::create(dir.join(format!("{stem}.csv")))?)?;
    fs::write(dir.join(format!("{stem}.json")), report.to_json())?;
    if !report.rows.is_empty() {
        fs::write(dir.join(format!("{stem}.svg")), render_svg(report))?;
    }
    let marker = dir.join("FAILED");
    match &report.failure {
        Some(msg) => fs::write(marker, format!("{stem}: {msg}\n"))?,
        None if marker.exists() => fs::remove_file(marker)?,
        None => {}
    }
    Ok(())
}
