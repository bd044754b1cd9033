//! Text and JSON renderings of a [`ValidationReport`].

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use crate::validate::{RuleResults, ValidationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "json" => Ok(ReportFormat::Json),
            other => Err(format!("unknown format `{other}`; expected `text` or `json`")),
        }
    }
}

#[derive(Serialize)]
struct ReportDoc<'a> {
    warnings: Vec<WarningDoc<'a>>,
    summary: BTreeMap<&'static str, usize>,
    #[serde(rename = "ruleResults")]
    rule_results: RuleResults,
}

#[derive(Serialize)]
struct WarningDoc<'a> {
    kind: &'static str,
    subject: &'a str,
    access: &'static str,
    resource: &'a str,
    message: &'a str,
}

pub fn render_report(report: &ValidationReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => render_text(report),
        ReportFormat::Json => render_json(report),
    }
}

fn render_text(report: &ValidationReport) -> String {
    let mut out = String::new();
    for w in &report.warnings {
        writeln!(out, "{}: {}", w.kind, w.triple).unwrap();
    }
    if !report.warnings.is_empty() {
        out.push('\n');
    }
    writeln!(out, "warnings: {}", report.warnings.len()).unwrap();
    for (label, violated) in report.rule_results.rows() {
        writeln!(out, "{label} {}", if violated { "Y" } else { "N" }).unwrap();
    }
    out
}

fn render_json(report: &ValidationReport) -> String {
    let doc = ReportDoc {
        warnings: report
            .warnings
            .iter()
            .map(|w| WarningDoc {
                kind: w.kind.as_str(),
                subject: &w.triple.subject,
                access: w.triple.access.as_str(),
                resource: &w.triple.resource,
                message: &w.message,
            })
            .collect(),
        summary: report.summary.iter().map(|(k, n)| (k.as_str(), *n)).collect(),
        rule_results: report.rule_results,
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("reports always serialize");
    out.push('\n');
    out
}
