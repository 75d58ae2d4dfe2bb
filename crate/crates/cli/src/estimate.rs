//! `estimate`: theta, AUC and Youden summaries per method.

use std::fmt::Write as _;

use resroc::empirical::{dominance_check, DominanceReport};
use resroc::estimators::{estimate, InferenceReport, Method};
use resroc::TwoSampleData;
use serde::{Deserialize, Serialize};

use crate::{
    cell, csv_string, full, json_string, prepare, CliError, CommandOutput, Format, InputSummary,
    RunConfig, TransformInfo, EXIT_ESTIMATION, SCHEMA_VERSION,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum MethodResult {
    Ok { method: Method, report: InferenceReport },
    Error { method: Method, error: String },
}

impl MethodResult {
    pub fn method(&self) -> Method {
        match self {
            MethodResult::Ok { method, .. } | MethodResult::Error { method, .. } => *method,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateDocument {
    pub schema_version: u32,
    pub command: &'static str,
    pub alpha: f64,
    pub enforce_family: bool,
    pub input: InputSummary,
    pub transform: Option<TransformInfo>,
    pub dominance: DominanceReport,
    pub results: Vec<MethodResult>,
    /// Data-level warnings; estimator warnings sit inside each report.
    pub warnings: Vec<String>,
}

pub fn estimate_document(data: &TwoSampleData, config: &RunConfig) -> Result<EstimateDocument, CliError> {
    config.validate()?;
    let (data, transform) = prepare(data, config.transform)?;
    let input = InputSummary::of(&data);
    let dominance = dominance_check(&data);
    let mut warnings = Vec::new();
    if dominance.fraction_satisfied < 1.0 {
        warnings.push(format!(
            "stochastic dominance fails at {:.1}% of knots (largest violation {:.4}); the resilience model may not fit",
            100.0 * (1.0 - dominance.fraction_satisfied),
            dominance.max_violation
        ));
    }
    if let Some(t) = transform.filter(|t| t.at_boundary) {
        warnings.push(format!("Yeo-Johnson lambda {} sits on the search boundary", t.lambda));
    }
    let results = config
        .unique_methods()
        .into_iter()
        .map(|method| match estimate(&data, method, config.alpha, config.enforce_family) {
            Ok(report) => MethodResult::Ok { method, report },
            Err(e) => MethodResult::Error { method, error: e.to_string() },
        })
        .collect();
    Ok(EstimateDocument {
        schema_version: SCHEMA_VERSION,
        command: "estimate",
        alpha: config.alpha,
        enforce_family: config.enforce_family,
        input,
        transform,
        dominance,
        results,
        warnings,
    })
}

pub fn cmd_estimate(data: &TwoSampleData, config: &RunConfig) -> Result<CommandOutput, CliError> {
    let doc = estimate_document(data, config)?;
    let stdout = match config.format.unwrap_or(Format::Table) {
        Format::Json => json_string(&doc)?,
        Format::Csv => render_csv(&doc)?,
        Format::Table => render_table(&doc),
    };
    let failed = doc.results.iter().any(|r| matches!(r, MethodResult::Error { .. }));
    let mut stderr = String::new();
    if config.format.is_some_and(|f| f != Format::Table) {
        for r in &doc.results {
            if let MethodResult::Error { method, error } = r {
                let _ = writeln!(stderr, "error [{method}]: {error}");
            }
        }
    }
    Ok(CommandOutput { stdout, stderr, exit_code: if failed { EXIT_ESTIMATION } else { 0 } })
}

const CSV_HEADER: [&str; 21] = [
    "method", "status", "theta_hat", "se_theta", "theta_lo", "theta_hi", "tau_hat", "se_tau",
    "tau_lo", "tau_hi", "youden_hat", "youden_lo", "youden_hi", "cutpoint_fpr", "cutpoint_tpr",
    "wald_z", "wald_p", "clamped", "m", "n", "message",
];

fn render_csv(doc: &EstimateDocument) -> Result<String, CliError> {
    csv_string(|w| {
        w.write_record(CSV_HEADER)?;
        for r in &doc.results {
            let row: Vec<String> = match r {
                MethodResult::Ok { method, report } => {
                    let e = &report.estimate;
                    let mut notes = doc.warnings.clone();
                    notes.extend(e.warnings.iter().cloned());
                    vec![
                        method.label().into(),
                        "ok".into(),
                        full(Some(e.theta_hat)),
                        full(Some(e.se_theta)),
                        full(Some(e.ci_theta.lo)),
                        full(Some(e.ci_theta.hi)),
                        full(Some(report.tau_hat)),
                        full(Some(report.se_tau)),
                        full(Some(report.ci_tau.lo)),
                        full(Some(report.ci_tau.hi)),
                        full(report.youden_hat),
                        full(report.ci_youden.map(|c| c.lo)),
                        full(report.ci_youden.map(|c| c.hi)),
                        full(report.cutpoint.map(|c| c.fpr)),
                        full(report.cutpoint.map(|c| c.tpr)),
                        full(Some(report.wald_z)),
                        full(Some(report.wald_p)),
                        e.clamped.to_string(),
                        e.m.to_string(),
                        e.n.to_string(),
                        notes.join(" | "),
                    ]
                }
                MethodResult::Error { method, error } => {
                    let mut row = vec![method.label().to_string(), "error".into()];
                    row.extend(std::iter::repeat_n(String::new(), 16));
                    row.push(doc.input.m.to_string());
                    row.push(doc.input.n.to_string());
                    row.push(error.clone());
                    row
                }
            };
            w.write_record(&row)?;
        }
        Ok(())
    })
}

fn render_table(doc: &EstimateDocument) -> String {
    let mut s = String::new();
    let level = format!("{:.0}%", 100.0 * (1.0 - doc.alpha));
    let _ = writeln!(
        s,
        "m = {}, n = {}; {} tied values, {} cross-group ties",
        doc.input.m, doc.input.n, doc.input.tied_values, doc.input.cross_group_ties
    );
    if let Some(t) = &doc.transform {
        let _ = writeln!(s, "transform: {} (lambda = {:.4})", t.kind, t.lambda);
    }
    let _ = writeln!(
        s,
        "dominance: satisfied at {:.4} of knots, max violation {:.4}",
        doc.dominance.fraction_satisfied, doc.dominance.max_violation
    );
    let _ = writeln!(s);
    let _ = writeln!(
        s,
        "{:<6} {:>8} {:>20} {:>8} {:>20} {:>8} {:>18} {:>9} {:>8}",
        "method", "theta",
        format!("{level} CI"),
        "AUC",
        format!("{level} CI"),
        "Youden",
        "cutpoint (FPR,TPR)",
        "Wald z",
        "p"
    );
    let pair = |lo: f64, hi: f64| format!("({lo:.4}, {hi:.4})");
    for r in &doc.results {
        match r {
            MethodResult::Ok { method, report } => {
                let e = &report.estimate;
                let _ = writeln!(
                    s,
                    "{:<6} {:>8} {:>20} {:>8} {:>20} {:>8} {:>18} {:>9} {:>8}",
                    method.label(),
                    cell(Some(e.theta_hat)),
                    pair(e.ci_theta.lo, e.ci_theta.hi),
                    cell(Some(report.tau_hat)),
                    pair(report.ci_tau.lo, report.ci_tau.hi),
                    cell(report.youden_hat),
                    report.cutpoint.map_or("-".to_string(), |c| pair(c.fpr, c.tpr)),
                    cell(Some(report.wald_z)),
                    cell(Some(report.wald_p)),
                );
            }
            MethodResult::Error { method, error } => {
                let _ = writeln!(s, "{:<6} error: {error}", method.label());
            }
        }
    }
    let notes: Vec<String> = doc
        .warnings
        .iter()
        .map(|w| format!("warning: {w}"))
        .chain(doc.results.iter().flat_map(|r| match r {
            MethodResult::Ok { method, report } => report
                .estimate
                .warnings
                .iter()
                .map(|w| format!("warning [{method}]: {w}"))
                .collect(),
            MethodResult::Error { .. } => Vec::new(),
        }))
        .collect();
    if !notes.is_empty() {
        let _ = writeln!(s);
        for n in notes {
            let _ = writeln!(s, "{n}");
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture() -> TwoSampleData {
        TwoSampleData::new(vec![1.0, 3.0], vec![2.0, 4.0]).unwrap()
    }

    fn theta_of(doc: &EstimateDocument, method: Method) -> f64 {
        match doc.results.iter().find(|r| r.method() == method).unwrap() {
            MethodResult::Ok { report, .. } => report.estimate.theta_hat,
            MethodResult::Error { error, .. } => panic!("{error}"),
        }
    }

    #[test]
    fn fixture_values() {
        let doc = estimate_document(&fixture(), &RunConfig::default()).unwrap();
        assert!((theta_of(&doc, Method::PartialLikelihood) - (1.0 + 17f64.sqrt()) / 2.0).abs() < 1e-8);
        assert_eq!(theta_of(&doc, Method::MannWhitney), 3.0);
        assert_eq!(theta_of(&doc, Method::Rojo), 3.0);
        assert!(doc.warnings.is_empty() || doc.dominance.fraction_satisfied < 1.0);
    }

    #[test]
    fn separation_sets_exit_status() {
        let d = TwoSampleData::new(vec![1.0, 2.0], vec![3.0, 4.0]).unwrap();
        let out = cmd_estimate(&d, &RunConfig::default()).unwrap();
        assert_eq!(out.exit_code, EXIT_ESTIMATION);
        assert!(out.stdout.contains("error"));
    }

    #[test]
    fn csv_has_one_row_per_method() {
        let cfg = RunConfig { format: Some(Format::Csv), ..RunConfig::default() };
        let out = cmd_estimate(&fixture(), &cfg).unwrap();
        let lines: Vec<&str> = out.stdout.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[2].starts_with("MW,ok,3,"));
        let fields = lines[1].split(',').count();
        assert!(fields >= CSV_HEADER.len());
    }

    #[test]
    fn table_uses_four_decimals() {
        let out = cmd_estimate(&fixture(), &RunConfig::default()).unwrap();
        assert!(out.stdout.contains("2.5616"));
        assert!(out.stdout.contains("3.0000"));
        assert_eq!(out.exit_code, 0);
    }
}
