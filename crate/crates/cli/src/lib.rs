//! Command implementations behind the `resroc` binary.
//!
//! Every command takes parsed data plus a [`RunConfig`] and returns a
//! [`CommandOutput`]; the binary only handles argument parsing and writing.

pub mod diagnose;
pub mod estimate;
pub mod input;
pub mod roc_points;
pub mod simulate;

use resroc::comparators::{yeo_johnson, yeo_johnson_fit};
use resroc::estimators::Method;
use resroc::TwoSampleData;
use serde::Serialize;

pub use diagnose::cmd_diagnose;
pub use estimate::cmd_estimate;
pub use input::{parse_scores, parse_scores_file, parse_two_files, InputError, InputSummary};
pub use roc_points::cmd_roc_points;
pub use simulate::cmd_simulate;

/// Version tag written at the top of every JSON document.
pub const SCHEMA_VERSION: u32 = 1;

/// Exit status when a selected estimator fails.
pub const EXIT_ESTIMATION: u8 = 2;
/// Exit status for unreadable input or invalid options.
pub const EXIT_USAGE: u8 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Transform {
    #[default]
    None,
    YeoJohnson,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Analysis(#[from] resroc::Error),
    #[error("cannot write output: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Analysis(resroc::Error::Config(_)) => EXIT_USAGE,
            CliError::Analysis(_) => EXIT_ESTIMATION,
            _ => EXIT_USAGE,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

/// Options shared by the data-driven commands.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub alpha: f64,
    pub methods: Vec<Method>,
    pub enforce_family: bool,
    pub transform: Transform,
    /// `None` picks the command's default.
    pub format: Option<Format>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            alpha: 0.05,
            methods: Method::ALL.to_vec(),
            enforce_family: false,
            transform: Transform::None,
            format: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(CliError::Config(format!("alpha must lie in (0, 1), got {}", self.alpha)));
        }
        if self.methods.is_empty() {
            return Err(CliError::Config("at least one method is required".into()));
        }
        Ok(())
    }

    /// Selected methods in first-mention order without repeats.
    pub fn unique_methods(&self) -> Vec<Method> {
        let mut out: Vec<Method> = Vec::new();
        for &m in &self.methods {
            if !out.contains(&m) {
                out.push(m);
            }
        }
        out
    }
}

/// What a command produced: text for stdout, text for stderr and the exit status.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CommandOutput {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransformInfo {
    pub kind: &'static str,
    pub lambda: f64,
    pub at_boundary: bool,
}

/// Applies the requested monotone transform to both groups.
///
/// Yeo-Johnson is fit on the pooled sample so the same map is used for both groups.
pub fn prepare(data: &TwoSampleData, transform: Transform) -> Result<(TwoSampleData, Option<TransformInfo>), CliError> {
    match transform {
        Transform::None => Ok((data.clone(), None)),
        Transform::YeoJohnson => {
            let pooled: Vec<f64> = data.negative().iter().chain(data.positive()).copied().collect();
            let fit = yeo_johnson_fit(&pooled)?;
            let mapped = data.map(|v| yeo_johnson(v, fit.lambda))?;
            Ok((
                mapped,
                Some(TransformInfo { kind: "yeo-johnson", lambda: fit.lambda, at_boundary: fit.at_boundary }),
            ))
        }
    }
}

/// Formats an optional number for a 4-decimal table cell.
pub(crate) fn cell(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.4}"))
}

/// Full-precision text for CSV; empty when absent.
pub(crate) fn full(v: Option<f64>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

pub(crate) fn csv_string(write: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> Result<(), csv::Error>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    write(&mut w)?;
    let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}

pub(crate) fn json_string<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}
