//! Report types and file emission (JSON, CSV, SVG).
//!
//! Field names are the serialization contract. Every report carries a
//! schema number, the tool version, and the resolved config echo;
//! `timestamp` is filled in by the CLI unless deterministic mode is on,
//! in which case the field is omitted and repeated runs are byte-identical.

use crate::config::ExperimentConfig;
use crate::Result;
use dimlab_core::boxdim::BoxDimEstimate;
use dimlab_core::energy::{Boundedness, EnergyValue, FubiniReport};
use serde::Serialize;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

pub const SCHEMA: u32 = 1;
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize)]
pub struct LambdaRecord {
    pub lambda: f64,
    pub slope: f64,
    pub r_squared: f64,
    pub energy: EnergyValue,
    pub collapse: bool,
    pub atom_count: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrevalenceSummary {
    pub median_slope: f64,
    pub slope_threshold: f64,
    pub frac_above_threshold: f64,
    pub collapse_lambdas: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrevalenceReport {
    pub schema: u32,
    pub version: String,
    pub config: ExperimentConfig,
    pub records: Vec<LambdaRecord>,
    pub summary: PrevalenceSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FubiniRunReport {
    pub schema: u32,
    pub version: String,
    pub config: ExperimentConfig,
    pub cases: Vec<FubiniReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SandwichChecks {
    pub tol: f64,
    /// Whether the lower and product checks were enforced (generic f)
    /// rather than only recorded (degenerate f).
    pub enforced_beyond_upper: bool,
    pub upper_ok: bool,
    pub lower_ok: bool,
    pub product_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphReport {
    pub schema: u32,
    pub version: String,
    pub config: ExperimentConfig,
    pub est_x: BoxDimEstimate,
    pub est_image: BoxDimEstimate,
    pub est_graph: BoxDimEstimate,
    pub est_product: BoxDimEstimate,
    pub checks: SandwichChecks,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProfilePoint {
    pub depth: u32,
    pub energy: EnergyValue,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProfileEntry {
    pub t: f64,
    pub classification: Boundedness,
    pub energies: Vec<ProfilePoint>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProfileReport {
    pub schema: u32,
    pub version: String,
    pub config: ExperimentConfig,
    pub profiles: Vec<ProfileEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelInfo {
    pub level: u32,
    pub intervals: u64,
    pub length: f64,
    pub total_length: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstructReport {
    pub schema: u32,
    pub version: String,
    pub config: ExperimentConfig,
    pub levels: Vec<LevelInfo>,
    /// (left, length) of each depth-level interval, left to right.
    pub intervals: Vec<(f64, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

fn fmt_energy(e: &EnergyValue) -> String {
    if e.infinite {
        "inf".into()
    } else {
        format!("{}", e.value)
    }
}

pub fn prevalence_csv(report: &PrevalenceReport) -> String {
    let mut out = String::from("lambda,slope,r2,energy,collapse\n");
    for r in &report.records {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.lambda,
            r.slope,
            r.r_squared,
            fmt_energy(&r.energy),
            r.collapse
        );
    }
    out
}

pub fn fubini_csv(report: &FubiniRunReport) -> String {
    let mut out = String::from("t,n,lhs,rhs_tight,rhs_paper,ratio_tight\n");
    for c in &report.cases {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            c.t, c.n, c.lhs, c.rhs_tight, c.rhs_paper, c.ratio_tight
        );
    }
    out
}

pub fn profile_csv(report: &ProfileReport) -> String {
    let mut out = String::from("depth,s,energy\n");
    for entry in &report.profiles {
        for p in &entry.energies {
            let _ = writeln!(out, "{},{},{}", p.depth, entry.t, fmt_energy(&p.energy));
        }
    }
    out
}

pub fn graph_csv(report: &GraphReport) -> String {
    let mut out = String::from("set,epsilon,count\n");
    for (name, est) in [
        ("x", &report.est_x),
        ("image", &report.est_image),
        ("graph", &report.est_graph),
        ("product", &report.est_product),
    ] {
        for &(eps, count) in &est.scales_used {
            let _ = writeln!(out, "{name},{eps},{count}");
        }
    }
    out
}

pub fn construct_csv(report: &ConstructReport) -> String {
    let mut out = String::from("left,length\n");
    for &(left, length) in &report.intervals {
        let _ = writeln!(out, "{left},{length}");
    }
    out
}

/// Self-contained scatter of slope against lambda; collapse records are
/// drawn as crosses.
pub fn prevalence_svg(report: &PrevalenceReport) -> String {
    let width = 640.0;
    let height = 420.0;
    let (ml, mr, mt, mb) = (60.0, 20.0, 20.0, 50.0);
    let pw = width - ml - mr;
    let ph = height - mt - mb;
    let n = report.config.lambda_range;
    let y_max = report
        .records
        .iter()
        .map(|r| r.slope)
        .fold(1.0f64, f64::max)
        * 1.1;
    let x_of = |lam: f64| ml + (lam + n) / (2.0 * n) * pw;
    let y_of = |s: f64| mt + (1.0 - s / y_max) * ph;

    let mut svg = String::new();
    let _ = write!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n\
         <rect width=\"{width}\" height=\"{height}\" fill=\"white\"/>\n"
    );
    // axes
    let _ = write!(
        svg,
        "<line x1=\"{ml}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\n\
         <line x1=\"{ml}\" y1=\"{mt}\" x2=\"{ml}\" y2=\"{:.2}\" stroke=\"black\"/>\n",
        mt + ph,
        ml + pw,
        mt + ph,
        mt + ph
    );
    for (lam, label) in [(-n, format!("{:.1}", -n)), (0.0, "0".into()), (n, format!("{:.1}", n))] {
        let x = x_of(lam);
        let _ = write!(
            svg,
            "<line x1=\"{x:.2}\" y1=\"{:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\n\
             <text x=\"{x:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"middle\">{label}</text>\n",
            mt + ph,
            mt + ph + 6.0,
            mt + ph + 22.0
        );
    }
    for s in [0.0, 0.5, 1.0] {
        let y = y_of(s);
        let _ = write!(
            svg,
            "<line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{ml}\" y2=\"{y:.2}\" stroke=\"black\"/>\n\
             <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"end\">{s:.1}</text>\n",
            ml - 6.0,
            ml - 10.0,
            y + 4.0
        );
    }
    let _ = write!(
        svg,
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"13\" text-anchor=\"middle\">lambda</text>\n\
         <text x=\"16\" y=\"{:.2}\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.2})\">image slope</text>\n",
        ml + pw / 2.0,
        height - 12.0,
        mt + ph / 2.0,
        mt + ph / 2.0
    );
    for r in &report.records {
        let x = x_of(r.lambda);
        let y = y_of(r.slope);
        if r.collapse {
            let _ = write!(
                svg,
                "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"red\" stroke-width=\"2\"/>\n\
                 <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"red\" stroke-width=\"2\"/>\n",
                x - 4.0, y - 4.0, x + 4.0, y + 4.0,
                x - 4.0, y + 4.0, x + 4.0, y - 4.0
            );
        } else {
            let _ = write!(
                svg,
                "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"steelblue\"/>\n"
            );
        }
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::FSpec;
    use crate::experiments::run_prevalence;

    fn small_report() -> PrevalenceReport {
        let cfg = ExperimentConfig {
            depth: 6,
            f: FSpec::ScalePhi { factor: -1.0 },
            lambda_samples: 5,
            box_j_max: 8,
            ..ExperimentConfig::default()
        };
        run_prevalence(&cfg).unwrap()
    }

    #[test]
    fn csv_row_count_matches_samples() {
        let report = small_report();
        let csv = prevalence_csv(&report);
        assert_eq!(csv.lines().count(), 1 + report.records.len());
        assert!(csv.starts_with("lambda,slope,r2,energy,collapse\n"));
    }

    #[test]
    fn svg_is_self_contained() {
        let report = small_report();
        let svg = prevalence_svg(&report);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(!svg.contains("href"));
        // collapse marker present
        assert!(svg.contains("stroke=\"red\""));
    }

    #[test]
    fn json_omits_timestamp_only_when_absent() {
        let mut report = small_report();
        let plain = serde_json::to_string_pretty(&report).unwrap();
        assert!(!plain.contains("timestamp"));
        report.timestamp = Some(123);
        let stamped = serde_json::to_string_pretty(&report).unwrap();
        assert!(stamped.contains("\"timestamp\": 123"));
        // identical except the timestamp line
        let diff: Vec<&str> = stamped
            .lines()
            .filter(|l| !plain.contains(l.trim_end_matches(',')))
            .collect();
        assert!(diff.len() <= 2, "unexpected diff {diff:?}");
    }
}
