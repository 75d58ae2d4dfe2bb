//! Score file ingestion.

use std::fs::File;
use std::io::Read;
use std::path::{Path, PathBuf};

use resroc::estimators::combined_counts;
use resroc::TwoSampleData;
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("expected header `score,label`, found `{found}`")]
    BadHeader { found: String },
    #[error("malformed row at line {line}: {reason}")]
    MalformedRow { line: u64, reason: String },
    #[error("label at line {line} is `{label}`; labels must be 0 or 1")]
    NonBinaryLabel { line: u64, label: String },
    #[error("{0} group has no records")]
    EmptyGroup(&'static str),
}

/// One labelled classifier output.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoreRecord {
    pub score: f64,
    /// `false` for the negative (label 0) group.
    pub positive: bool,
}

/// Group sizes and tie diagnostics for parsed data.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InputSummary {
    pub m: usize,
    pub n: usize,
    /// Distinct values shared by more than one observation.
    pub tied_values: usize,
    /// Negative/positive pairs with equal scores.
    pub cross_group_ties: u64,
}

impl InputSummary {
    pub fn of(data: &TwoSampleData) -> Self {
        let counts = combined_counts(data);
        Self {
            m: data.m(),
            n: data.n(),
            tied_values: counts.entries().iter().filter(|e| e.multiplicity() > 1).count(),
            cross_group_ties: data.cross_group_ties(),
        }
    }
}

fn malformed(line: u64, reason: impl Into<String>) -> InputError {
    InputError::MalformedRow { line, reason: reason.into() }
}

fn parse_score(field: &str, line: u64) -> Result<f64, InputError> {
    let v: f64 = field
        .trim()
        .parse()
        .map_err(|_| malformed(line, format!("score `{field}` is not a number")))?;
    if !v.is_finite() {
        return Err(malformed(line, format!("score `{field}` is not finite")));
    }
    Ok(v)
}

/// Reads `score,label` records. Line numbers count the header as line 1.
pub fn read_records<R: Read>(reader: R) -> Result<Vec<ScoreRecord>, InputError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut records = Vec::new();
    let mut header_seen = false;
    for row in rdr.records() {
        let row = row.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            malformed(line, e.to_string())
        })?;
        let line = row.position().map_or(0, |p| p.line());
        if !header_seen {
            let fields: Vec<&str> = row.iter().collect();
            if fields != ["score", "label"] {
                return Err(InputError::BadHeader { found: fields.join(",") });
            }
            header_seen = true;
            continue;
        }
        if row.len() != 2 {
            return Err(malformed(line, format!("expected 2 fields, found {}", row.len())));
        }
        let score = parse_score(&row[0], line)?;
        let positive = match &row[1] {
            "0" => false,
            "1" => true,
            other => {
                if other.parse::<f64>().is_ok() {
                    return Err(InputError::NonBinaryLabel { line, label: other.to_string() });
                }
                return Err(malformed(line, format!("label `{other}` is not a number")));
            }
        };
        records.push(ScoreRecord { score, positive });
    }
    if !header_seen {
        return Err(InputError::BadHeader { found: String::new() });
    }
    Ok(records)
}

/// Splits records by label into negative and positive samples.
pub fn split_records(records: &[ScoreRecord]) -> Result<TwoSampleData, InputError> {
    let (pos, neg): (Vec<ScoreRecord>, Vec<ScoreRecord>) = records.iter().partition(|r| r.positive);
    if neg.is_empty() {
        return Err(InputError::EmptyGroup("negative (label 0)"));
    }
    if pos.is_empty() {
        return Err(InputError::EmptyGroup("positive (label 1)"));
    }
    let x = neg.iter().map(|r| r.score).collect();
    let y = pos.iter().map(|r| r.score).collect();
    Ok(TwoSampleData::new(x, y).expect("scores are finite and groups nonempty"))
}

pub fn parse_scores<R: Read>(reader: R) -> Result<TwoSampleData, InputError> {
    split_records(&read_records(reader)?)
}

fn open(path: &Path) -> Result<File, InputError> {
    File::open(path).map_err(|source| InputError::Io { path: path.to_path_buf(), source })
}

pub fn parse_scores_file(path: &Path) -> Result<TwoSampleData, InputError> {
    parse_scores(open(path)?)
}

/// One score per line, with an optional `score` header.
pub fn read_score_column(path: &Path) -> Result<Vec<f64>, InputError> {
    let mut text = String::new();
    open(path)?
        .read_to_string(&mut text)
        .map_err(|source| InputError::Io { path: path.to_path_buf(), source })?;
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let field = raw.trim();
        if field.is_empty() || (i == 0 && field == "score") {
            continue;
        }
        out.push(parse_score(field, i as u64 + 1)?);
    }
    Ok(out)
}

/// Two-file mode: negative scores in one file, positive scores in another.
pub fn parse_two_files(negative: &Path, positive: &Path) -> Result<TwoSampleData, InputError> {
    let x = read_score_column(negative)?;
    let y = read_score_column(positive)?;
    if x.is_empty() {
        return Err(InputError::EmptyGroup("negative"));
    }
    if y.is_empty() {
        return Err(InputError::EmptyGroup("positive"));
    }
    Ok(TwoSampleData::new(x, y).expect("scores are finite and groups nonempty"))
}
