//! `diagnose`: graphical checks of the resilience assumption.

use std::fmt::Write as _;

use resroc::empirical::{
    dominance_check, ecdf, loglog_constancy, loglog_series, DiagnosticSeries, DominanceReport,
    Group, LogLogConstancy,
};
use resroc::TwoSampleData;
use serde::Serialize;

use crate::{
    csv_string, json_string, prepare, CliError, CommandOutput, Format, InputSummary, RunConfig,
    TransformInfo, SCHEMA_VERSION,
};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagnoseDocument {
    pub schema_version: u32,
    pub command: &'static str,
    pub input: InputSummary,
    pub transform: Option<TransformInfo>,
    pub dominance: DominanceReport,
    pub negative: DiagnosticSeries,
    pub positive: DiagnosticSeries,
    pub constancy: LogLogConstancy,
}

pub fn diagnose_document(data: &TwoSampleData, config: &RunConfig) -> Result<DiagnoseDocument, CliError> {
    config.validate()?;
    let (data, transform) = prepare(data, config.transform)?;
    let negative = loglog_series(&ecdf(data.negative())?, Group::Negative)?;
    let positive = loglog_series(&ecdf(data.positive())?, Group::Positive)?;
    Ok(DiagnoseDocument {
        schema_version: SCHEMA_VERSION,
        command: "diagnose",
        input: InputSummary::of(&data),
        transform,
        dominance: dominance_check(&data),
        negative,
        positive,
        constancy: loglog_constancy(&data)?,
    })
}

pub fn cmd_diagnose(data: &TwoSampleData, config: &RunConfig) -> Result<CommandOutput, CliError> {
    let doc = diagnose_document(data, config)?;
    let stdout = match config.format.unwrap_or(Format::Json) {
        Format::Json => json_string(&doc)?,
        Format::Csv => render_csv(&doc)?,
        Format::Table => render_table(&doc),
    };
    Ok(CommandOutput { stdout, ..CommandOutput::default() })
}

/// Long format: `series,t,value`. Scalar summaries leave `t` empty.
fn render_csv(doc: &DiagnoseDocument) -> Result<String, CliError> {
    csv_string(|w| {
        w.write_record(["series", "t", "value"])?;
        let scalars = [
            ("dominance_fraction_satisfied", doc.dominance.fraction_satisfied),
            ("dominance_max_violation", doc.dominance.max_violation),
            ("loglog_difference_mean", doc.constancy.mean_difference),
            ("loglog_difference_sd", doc.constancy.sd_difference),
            ("implied_theta", doc.constancy.implied_theta),
        ];
        for (name, v) in scalars {
            w.write_record([name, "", &v.to_string()])?;
        }
        let series = [
            ("loglog_negative", &doc.negative.points),
            ("loglog_positive", &doc.positive.points),
            ("loglog_difference", &doc.constancy.points),
        ];
        for (name, points) in series {
            for (t, v) in points {
                w.write_record([name, &t.to_string(), &v.to_string()])?;
            }
        }
        Ok(())
    })
}

fn render_table(doc: &DiagnoseDocument) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "m = {}, n = {}", doc.input.m, doc.input.n);
    let _ = writeln!(s, "dominance fraction satisfied  {:.4}", doc.dominance.fraction_satisfied);
    let _ = writeln!(s, "dominance max violation       {:.4}", doc.dominance.max_violation);
    let _ = writeln!(s, "log-log difference mean       {:.4}", doc.constancy.mean_difference);
    let _ = writeln!(s, "log-log difference sd         {:.4}", doc.constancy.sd_difference);
    let _ = writeln!(s, "implied theta                 {:.4}", doc.constancy.implied_theta);
    let _ = writeln!(
        s,
        "series points: negative {}, positive {}, difference {}",
        doc.negative.points.len(),
        doc.positive.points.len(),
        doc.constancy.points.len()
    );
    s
}
