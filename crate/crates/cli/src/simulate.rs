//! `simulate`: the Monte Carlo estimator comparison study.

use std::fmt::Write as _;
use std::time::Instant;

use resroc::simulation::{run_study, SimulationReport, StudyConfig};
use serde::Serialize;

use crate::{csv_string, json_string, CliError, CommandOutput, Format, SCHEMA_VERSION};

#[derive(Serialize)]
struct SimulateDocument<'a> {
    schema_version: u32,
    command: &'static str,
    #[serde(flatten)]
    report: &'a SimulationReport,
}

/// Writes the report as CSV or JSON on stdout and a 4-decimal table plus
/// wall-clock time on stderr, so stdout depends only on the configuration.
pub fn cmd_simulate(config: &StudyConfig, format: Option<Format>) -> Result<CommandOutput, CliError> {
    let start = Instant::now();
    let report = run_study(config)?;
    let elapsed = start.elapsed().as_secs_f64();
    let stdout = match format.unwrap_or(Format::Csv) {
        Format::Csv => render_csv(&report)?,
        Format::Json => json_string(&SimulateDocument { schema_version: SCHEMA_VERSION, command: "simulate", report: &report })?,
        Format::Table => render_table(&report),
    };
    let mut stderr = render_table(&report);
    let _ = writeln!(
        stderr,
        "{} replications per cell, seed {}, {:.2} s wall-clock",
        config.replications, config.seed, elapsed
    );
    Ok(CommandOutput { stdout, stderr, exit_code: 0 })
}

pub fn render_csv(report: &SimulationReport) -> Result<String, CliError> {
    csv_string(|w| {
        w.write_record([
            "theta", "m", "n", "method", "replications", "failures", "avg_theta", "sd_theta",
            "rmse_theta", "coverage", "avg_tau", "avg_youden", "mean_tau_hat", "sd_tau",
            "mean_youden_hat",
        ])?;
        for r in &report.rows {
            w.write_record([
                r.theta.to_string(),
                r.m.to_string(),
                r.n.to_string(),
                r.method.label().to_string(),
                r.replications.to_string(),
                r.failures.to_string(),
                r.avg_theta.to_string(),
                r.sd_theta.to_string(),
                r.rmse_theta.to_string(),
                r.coverage.to_string(),
                r.avg_tau.to_string(),
                r.avg_youden.to_string(),
                r.mean_tau_hat.to_string(),
                r.sd_tau.to_string(),
                r.mean_youden_hat.to_string(),
            ])?;
        }
        Ok(())
    })
}

/// Layout of the published comparison table: one block per theta.
pub fn render_table(report: &SimulationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:>5} {:>10} {:<6} {:>9} {:>8} {:>8} {:>8} {:>9} {:>8} {:>8}",
        "theta", "(m, n)", "method", "Avg", "SD", "RMSE", "Coverage", "Avg tau", "Avg J", "failures"
    );
    let mut last_theta = None;
    for r in &report.rows {
        if last_theta.is_some() && last_theta != Some(r.theta) {
            let _ = writeln!(s);
        }
        last_theta = Some(r.theta);
        let _ = writeln!(
            s,
            "{:>5} {:>10} {:<6} {:>9.4} {:>8.4} {:>8.4} {:>8.4} {:>9.4} {:>8.4} {:>8}",
            r.theta,
            format!("({}, {})", r.m, r.n),
            r.method.label(),
            r.avg_theta,
            r.sd_theta,
            r.rmse_theta,
            r.coverage,
            r.avg_tau,
            r.avg_youden,
            r.failures
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> StudyConfig {
        StudyConfig { replications: 20, size_pairs: vec![(15, 15)], ..StudyConfig::default() }
    }

    #[test]
    fn csv_one_row_per_cell_method() {
        let out = cmd_simulate(&small(), None).unwrap();
        assert_eq!(out.stdout.lines().count(), 1 + 3 * 3);
        assert!(out.stderr.contains("wall-clock"));
        assert!(!out.stdout.contains("wall-clock"));
    }

    #[test]
    fn invalid_config_is_usage_error() {
        let bad = StudyConfig { replications: 0, ..small() };
        let err = cmd_simulate(&bad, None).unwrap_err();
        assert_eq!(err.exit_code(), crate::EXIT_USAGE);
    }

    #[test]
    fn json_carries_schema_version() {
        let out = cmd_simulate(&small(), Some(Format::Json)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["rows"].as_array().unwrap().len(), 9);
    }
}
