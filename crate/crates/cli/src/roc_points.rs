//! `roc-points`: fitted and empirical ROC curves on a fixed grid.

use std::fmt::Write as _;

use resroc::comparators::{binormal_fit, binormal_roc, lehmann_estimate, lehmann_roc};
use resroc::empirical::empirical_roc;
use resroc::estimators::{estimate, Method};
use resroc::model::roc_value;
use resroc::{ResilienceTheta, RocPoint, TwoSampleData};
use serde::Serialize;

use crate::{
    csv_string, full, json_string, prepare, CliError, CommandOutput, Format, RunConfig,
    TransformInfo, EXIT_ESTIMATION, SCHEMA_VERSION,
};

/// Number of grid intervals; the grid has `GRID_STEPS + 1` points.
pub const GRID_STEPS: usize = 1000;

pub fn grid() -> Vec<f64> {
    (0..=GRID_STEPS).map(|k| k as f64 / GRID_STEPS as f64).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Curve {
    pub name: String,
    /// Fitted parameter(s) by name, empty for the empirical curve.
    pub parameters: Vec<(String, f64)>,
    pub values: Option<Vec<f64>>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RocPointsDocument {
    pub schema_version: u32,
    pub command: &'static str,
    pub transform: Option<TransformInfo>,
    pub t: Vec<f64>,
    pub curves: Vec<Curve>,
}

/// Right-continuous staircase read-off: the highest TPR reachable with FPR at most `t`.
pub fn empirical_at(points: &[RocPoint], t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    if t >= 1.0 {
        return 1.0;
    }
    points.iter().filter(|p| p.fpr <= t).map(|p| p.tpr).fold(0.0, f64::max)
}

type Fitted = (Vec<(String, f64)>, Vec<f64>);

fn curve(name: impl Into<String>, fitted: Result<Fitted, String>) -> Curve {
    match fitted {
        Ok((parameters, values)) => Curve { name: name.into(), parameters, values: Some(values), error: None },
        Err(error) => Curve { name: name.into(), parameters: Vec::new(), values: None, error: Some(error) },
    }
}

fn on_grid(ts: &[f64], f: impl Fn(f64) -> resroc::Result<f64>) -> resroc::Result<Vec<f64>> {
    ts.iter().map(|&t| f(t)).collect()
}

pub fn roc_points_document(data: &TwoSampleData, config: &RunConfig) -> Result<(RocPointsDocument, bool), CliError> {
    config.validate()?;
    let (data, transform) = prepare(data, config.transform)?;
    let ts = grid();
    let mut curves = Vec::new();
    let mut method_failed = false;

    for method in config.unique_methods() {
        let fitted = estimate(&data, method, config.alpha, config.enforce_family).and_then(|r| {
            let theta = ResilienceTheta::new(r.estimate.theta_hat)?;
            Ok((vec![("theta".to_string(), theta.get())], on_grid(&ts, |t| roc_value(theta, t))?))
        });
        method_failed |= fitted.is_err();
        curves.push(curve(format!("resilience_{}", column_tag(method)), fitted.map_err(|e| e.to_string())));
    }

    let staircase = empirical_roc(&data);
    curves.push(curve("empirical", Ok((Vec::new(), ts.iter().map(|&t| empirical_at(&staircase, t)).collect()))));

    let binormal = binormal_fit(&data).and_then(|fit| {
        let params = vec![("a".to_string(), fit.a), ("b".to_string(), fit.b)];
        Ok((params, on_grid(&ts, |t| binormal_roc(&fit, t))?))
    });
    curves.push(curve("binormal", binormal.map_err(|e| e.to_string())));

    let lehmann = lehmann_estimate(&data).and_then(|g| {
        Ok((vec![("gamma".to_string(), g.gamma)], on_grid(&ts, |t| lehmann_roc(g.gamma, t))?))
    });
    curves.push(curve("lehmann", lehmann.map_err(|e| e.to_string())));

    Ok((
        RocPointsDocument { schema_version: SCHEMA_VERSION, command: "roc-points", transform, t: ts, curves },
        method_failed,
    ))
}

fn column_tag(method: Method) -> String {
    method.label().to_lowercase()
}

pub fn cmd_roc_points(data: &TwoSampleData, config: &RunConfig) -> Result<CommandOutput, CliError> {
    let (doc, method_failed) = roc_points_document(data, config)?;
    let stdout = match config.format.unwrap_or(Format::Csv) {
        Format::Json => json_string(&doc)?,
        Format::Csv => render_csv(&doc)?,
        Format::Table => {
            return Err(CliError::Config("roc-points writes csv or json".into()));
        }
    };
    let mut stderr = String::new();
    for c in &doc.curves {
        if let Some(e) = &c.error {
            let _ = writeln!(stderr, "warning: {} curve unavailable: {e}", c.name);
        }
    }
    Ok(CommandOutput { stdout, stderr, exit_code: if method_failed { EXIT_ESTIMATION } else { 0 } })
}

/// Columns `t` then one per curve; a curve that could not be fit is left blank.
fn render_csv(doc: &RocPointsDocument) -> Result<String, CliError> {
    csv_string(|w| {
        let mut header = vec!["t".to_string()];
        header.extend(doc.curves.iter().map(|c| c.name.clone()));
        w.write_record(&header)?;
        for (k, &t) in doc.t.iter().enumerate() {
            let mut row = vec![t.to_string()];
            row.extend(doc.curves.iter().map(|c| full(c.values.as_ref().map(|v| v[k]))));
            w.write_record(&row)?;
        }
        Ok(())
    })
}
