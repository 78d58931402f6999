//! Report files and the summary table.

use gk_core::verify::IdentityReport;
use serde::Serialize;
use std::fmt::Write as _;
use std::path::Path;

/// One row of the summary.
#[derive(Debug, Serialize)]
pub struct SummaryRow<'a> {
    pub suite: &'a str,
    pub kind: gk_core::verify::SuiteKind,
    pub verdict: gk_core::verify::Verdict,
    pub max_rel_error: f64,
    pub threshold: f64,
    pub n_points: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<&'a str>,
}

pub fn rows(reports: &[IdentityReport]) -> Vec<SummaryRow<'_>> {
    reports
        .iter()
        .map(|r| SummaryRow {
            suite: &r.suite,
            kind: r.kind,
            verdict: r.verdict,
            max_rel_error: r.max_rel_error,
            threshold: r.threshold,
            n_points: r.n_points,
            label: r.label.as_deref(),
            error: r.error.as_deref(),
        })
        .collect()
}

pub fn summary_table(reports: &[IdentityReport]) -> String {
    let width = reports.iter().map(|r| r.suite.len()).max().unwrap_or(5).max(5);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:width$}  {:10}  {:7}  {:>9}  {:>9}  {:>6}",
        "suite", "kind", "verdict", "max_err", "threshold", "points"
    );
    for r in rows(reports) {
        let kind = serde_json::to_value(r.kind).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default();
        let verdict =
            serde_json::to_value(r.verdict).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default();
        let _ = write!(
            out,
            "{:width$}  {:10}  {:7}  {:>9.2e}  {:>9.0e}  {:>6}",
            r.suite, kind, verdict, r.max_rel_error, r.threshold, r.n_points
        );
        if let Some(l) = r.label {
            let _ = write!(out, "  [{l}]");
        }
        if let Some(e) = r.error {
            let _ = write!(out, "  error: {e}");
        }
        out.push('\n');
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    let _ = writeln!(out, "{passed}/{} suites passed", reports.len());
    out
}

/// Writes `<suite>.json` for every report, `summary.txt` and `metadata.json`.
/// The reports themselves carry no timestamps, so reruns are byte-identical.
pub fn write_all(dir: &Path, reports: &[IdentityReport], metadata: &serde_json::Value) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    for r in reports {
        let mut json = serde_json::to_string_pretty(r)?;
        json.push('\n');
        std::fs::write(dir.join(format!("{}.json", r.suite)), json)?;
    }
    std::fs::write(dir.join("summary.txt"), summary_table(reports))?;
    let mut meta = serde_json::to_string_pretty(metadata)?;
    meta.push('\n');
    std::fs::write(dir.join("metadata.json"), meta)
}
