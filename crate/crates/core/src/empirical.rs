//! Empirical distribution machinery: ECDFs, the pooled ECDF, the
//! order-restricted (Rojo) pair, the empirical ROC curve and the graphical
//! PRHR diagnostics.

use serde::{Deserialize, Serialize};

use crate::data::TwoSampleData;
use crate::error::{Error, Result};
use crate::model::RocPoint;

/// Right-continuous step function, zero before the first knot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepFunction {
    knots: Vec<f64>,
    values: Vec<f64>,
}

impl StepFunction {
    /// Builds a step function from strictly increasing knots and nondecreasing values.
    pub fn new(knots: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if knots.len() != values.len() {
            return Err(Error::Domain("knots and values differ in length".into()));
        }
        if knots.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Domain("knots must be strictly increasing".into()));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Domain("values must be nondecreasing".into()));
        }
        Ok(Self { knots, values })
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self.knots.partition_point(|&k| k <= t) {
            0 => 0.0,
            i => self.values[i - 1],
        }
    }
}

/// Sorted distinct values with the multiplicity of each.
pub(crate) fn distinct_counts(sample: &[f64]) -> Vec<(f64, usize)> {
    let mut sorted = sample.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut out: Vec<(f64, usize)> = Vec::new();
    for v in sorted {
        match out.last_mut() {
            Some((k, c)) if *k == v => *c += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

pub fn ecdf(sample: &[f64]) -> Result<StepFunction> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    let size = sample.len() as f64;
    let mut cum = 0usize;
    let (knots, values) = distinct_counts(sample)
        .into_iter()
        .map(|(k, c)| {
            cum += c;
            (k, cum as f64 / size)
        })
        .unzip();
    Ok(StepFunction { knots, values })
}

/// ECDF of the concatenated sample, i.e. `m/(m+n) F0m + n/(m+n) Fn`.
pub fn pooled_ecdf(data: &TwoSampleData) -> StepFunction {
    let all: Vec<f64> = data.negative().iter().chain(data.positive()).copied().collect();
    ecdf(&all).expect("validated data is nonempty")
}

/// Order-restricted estimates `F0mn = max(F0m, Pmn)` and `Fmn = min(Fn, Pmn)`
/// together with the pooled ECDF, all on the combined knots.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RestrictedEcdfPair {
    pub f0mn: StepFunction,
    pub fmn: StepFunction,
    pub pmn: StepFunction,
}

pub fn rojo_pair(data: &TwoSampleData) -> RestrictedEcdfPair {
    let f0m = ecdf(data.negative()).expect("validated");
    let fn_ = ecdf(data.positive()).expect("validated");
    let pmn = pooled_ecdf(data);
    let knots = pmn.knots().to_vec();
    let (f0, f1): (Vec<f64>, Vec<f64>) = knots
        .iter()
        .zip(pmn.values())
        .map(|(&t, &p)| (f0m.eval(t).max(p), fn_.eval(t).min(p)))
        .unzip();
    RestrictedEcdfPair {
        f0mn: StepFunction { knots: knots.clone(), values: f0 },
        fmn: StepFunction { knots, values: f1 },
        pmn,
    }
}

/// Empirical ROC staircase from `(1, 1)` to `(0, 0)`.
///
/// One point `(1 - F0m(w), 1 - Fn(w))` per distinct combined value `w`.
pub fn empirical_roc(data: &TwoSampleData) -> Vec<RocPoint> {
    let (m, n) = (data.m(), data.n());
    let counts = crate::estimators::combined_counts(data);
    let mut points = Vec::with_capacity(counts.entries().len() + 1);
    points.push(RocPoint { fpr: 1.0, tpr: 1.0 });
    for e in counts.entries() {
        points.push(RocPoint {
            fpr: (m - e.x) as f64 / m as f64,
            tpr: (n - e.y) as f64 / n as f64,
        });
    }
    points
}

/// Trapezoidal area under a ROC polyline ordered by decreasing FPR.
pub fn polyline_area(points: &[RocPoint]) -> f64 {
    points
        .windows(2)
        .map(|w| (w[0].fpr - w[1].fpr) * (w[0].tpr + w[1].tpr) / 2.0)
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Negative,
    Positive,
}

/// `(t, log(-log F(t)))` at the knots where `0 < F(t) < 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticSeries {
    pub group: Group,
    pub points: Vec<(f64, f64)>,
}

fn loglog(v: f64) -> f64 {
    (-v.ln()).ln()
}

pub fn loglog_series(f: &StepFunction, group: Group) -> Result<DiagnosticSeries> {
    let points: Vec<(f64, f64)> = f
        .knots
        .iter()
        .zip(&f.values)
        .filter(|(_, &v)| v > 0.0 && v < 1.0)
        .map(|(&t, &v)| (t, loglog(v)))
        .collect();
    if points.len() < 2 {
        return Err(Error::DegenerateSeries(points.len()));
    }
    Ok(DiagnosticSeries { group, points })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DominanceReport {
    /// Fraction of combined knots where `F0m(t) >= Fn(t)`.
    pub fraction_satisfied: f64,
    /// Largest `Fn(t) - F0m(t)`, zero if never violated.
    pub max_violation: f64,
}

pub fn dominance_check(data: &TwoSampleData) -> DominanceReport {
    let (m, n) = (data.m() as u128, data.n() as u128);
    let counts = crate::estimators::combined_counts(data);
    let mut satisfied = 0usize;
    let mut worst = 0.0f64;
    for e in counts.entries() {
        // compare x/m >= y/n exactly
        let (lhs, rhs) = (e.x as u128 * n, e.y as u128 * m);
        if lhs >= rhs {
            satisfied += 1;
        } else {
            worst = worst.max(e.y as f64 / n as f64 - e.x as f64 / m as f64);
        }
    }
    DominanceReport {
        fraction_satisfied: satisfied as f64 / counts.entries().len() as f64,
        max_violation: worst,
    }
}

/// Heuristic constancy score for the log-log difference.
///
/// Under `F = F0^theta` the difference `log(-log Fn) - log(-log F0m)` is the
/// constant `log theta`. The curves are compared at every combined knot where
/// both ECDFs lie strictly inside (0, 1). This is a descriptive summary, not a
/// goodness-of-fit test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogLogConstancy {
    pub points: Vec<(f64, f64)>,
    pub mean_difference: f64,
    pub sd_difference: f64,
    /// `exp(mean_difference)`, a rough theta reading off the plot.
    pub implied_theta: f64,
}

pub fn loglog_constancy(data: &TwoSampleData) -> Result<LogLogConstancy> {
    let f0m = ecdf(data.negative())?;
    let fn_ = ecdf(data.positive())?;
    let pmn = pooled_ecdf(data);
    let points: Vec<(f64, f64)> = pmn
        .knots()
        .iter()
        .filter_map(|&t| {
            let (a, b) = (f0m.eval(t), fn_.eval(t));
            (a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0).then(|| (t, loglog(b) - loglog(a)))
        })
        .collect();
    if points.len() < 2 {
        return Err(Error::DegenerateSeries(points.len()));
    }
    let k = points.len() as f64;
    let mean = points.iter().map(|p| p.1).sum::<f64>() / k;
    let var = points.iter().map(|p| (p.1 - mean).powi(2)).sum::<f64>() / (k - 1.0);
    Ok(LogLogConstancy {
        points,
        mean_difference: mean,
        sd_difference: var.sqrt(),
        implied_theta: mean.exp(),
    })
}
