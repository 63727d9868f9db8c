//! Output rows and their CSV/JSON renderings.
//!
//! Machine output prints 6 decimals; absent fields render as empty CSV
//! cells. Rendering is fully deterministic so identical runs produce
//! identical bytes.

use sampled_metrics::{consistency::ComparisonReport, MetricSpec};
use serde::Serialize;

use crate::args::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exact,
    Expected,
    Simulated,
}

impl Mode {
    fn name(&self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Expected => "expected",
            Mode::Simulated => "simulated",
        }
    }
}

/// One evaluated cell: an algorithm under a metric in one mode.
#[derive(Debug, Clone, Serialize)]
pub struct MetricReport {
    pub algorithm: String,
    pub metric: &'static str,
    pub k: Option<u64>,
    pub mode: Mode,
    pub m: Option<u64>,
    pub scheme: Option<&'static str>,
    pub reps: Option<u64>,
    pub mean: f64,
    pub std: Option<f64>,
}

impl MetricReport {
    pub fn new(algorithm: &str, spec: &MetricSpec, mode: Mode, mean: f64) -> Self {
        Self {
            algorithm: algorithm.to_string(),
            metric: spec.kind().name(),
            k: spec.cutoff(),
            mode,
            m: None,
            scheme: None,
            reps: None,
            mean,
            std: None,
        }
    }

    pub fn sampled(mut self, m: u64, scheme: &'static str) -> Self {
        self.m = Some(m);
        self.scheme = Some(scheme);
        self
    }

    pub fn simulated(mut self, reps: u64, std: f64) -> Self {
        self.reps = Some(reps);
        self.std = Some(std);
        self
    }
}

/// One point of a metric-versus-rank curve.
#[derive(Debug, Clone, Serialize)]
pub struct CurvePoint {
    pub r: u64,
    pub metric: &'static str,
    pub k: Option<u64>,
    pub mode: Mode,
    pub m: Option<u64>,
    pub scheme: Option<&'static str>,
    pub value: f64,
}

fn opt_num<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

fn fixed(v: f64) -> String {
    format!("{v:.6}")
}

/// Rounds to the printed precision so JSON and CSV agree.
fn round6(v: f64) -> f64 {
    (v * 1e6).round() / 1e6
}

pub const REPORT_HEADER: &str = "algorithm,metric,k,mode,m,scheme,reps,mean,std";

pub fn render_reports(reports: &[MetricReport], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::from(REPORT_HEADER);
            out.push('\n');
            for r in reports {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    r.algorithm,
                    r.metric,
                    opt_num(&r.k),
                    r.mode.name(),
                    opt_num(&r.m),
                    r.scheme.unwrap_or(""),
                    opt_num(&r.reps),
                    fixed(r.mean),
                    r.std.map(fixed).unwrap_or_default(),
                ));
            }
            out
        }
        Format::Json => {
            let rounded: Vec<MetricReport> = reports
                .iter()
                .map(|r| MetricReport {
                    mean: round6(r.mean),
                    std: r.std.map(round6),
                    ..r.clone()
                })
                .collect();
            let mut out = serde_json::to_string_pretty(&rounded).expect("serializable reports");
            out.push('\n');
            out
        }
    }
}

pub const CURVE_HEADER: &str = "r,metric,k,mode,m,scheme,value";

pub fn render_curve(points: &[CurvePoint], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::from(CURVE_HEADER);
            out.push('\n');
            for p in points {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    p.r,
                    p.metric,
                    opt_num(&p.k),
                    p.mode.name(),
                    opt_num(&p.m),
                    p.scheme.unwrap_or(""),
                    fixed(p.value),
                ));
            }
            out
        }
        Format::Json => {
            let rounded: Vec<CurvePoint> = points
                .iter()
                .map(|p| CurvePoint {
                    value: round6(p.value),
                    ..p.clone()
                })
                .collect();
            let mut out = serde_json::to_string_pretty(&rounded).expect("serializable curve");
            out.push('\n');
            out
        }
    }
}

pub const CONSISTENCY_HEADER: &str = "metric,k,first,second,exact_order,sampled_order,consistent";

/// Pair-level consistency table; JSON carries the full reports including
/// the per-algorithm means.
pub fn render_consistency(reports: &[ComparisonReport], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::from(CONSISTENCY_HEADER);
            out.push('\n');
            for report in reports {
                for p in &report.pairs {
                    out.push_str(&format!(
                        "{},{},{},{},{},{},{}\n",
                        report.spec.kind().name(),
                        opt_num(&report.spec.cutoff()),
                        p.first,
                        p.second,
                        p.exact.symbol(),
                        p.sampled.symbol(),
                        p.consistent,
                    ));
                }
            }
            out
        }
        Format::Json => {
            let mut out = serde_json::to_string_pretty(reports).expect("serializable comparison");
            out.push('\n');
            out
        }
    }
}
