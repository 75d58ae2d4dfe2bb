use super::mann_whitney::{plugin_theta, ratio};
use super::{combined_counts, InferenceReport, Method, ThetaEstimate};
use crate::data::TwoSampleData;
use crate::error::Result;

/// AUC `integral F0mn dFmn` of the order-restricted ECDF pair.
///
/// `F0mn` is evaluated right-continuously at each jump of `Fmn`. The sum is
/// accumulated in integers: `F0mn` is scaled by `m(m+n)` and `Fmn` by `n(m+n)`,
/// so the result is the exact rational rounded once.
pub fn rojo_auc(data: &TwoSampleData) -> f64 {
    let (m, n) = (data.m() as u128, data.n() as u128);
    let total = m + n;
    let mut acc: u128 = 0;
    let mut prev_b: u128 = 0;
    for e in combined_counts(data).entries() {
        let (cx, cy) = (e.x as u128, e.y as u128);
        let a = (cx * total).max((cx + cy) * m);
        let b = (cy * total).min((cx + cy) * n);
        acc += a * (b - prev_b);
        prev_b = b;
    }
    ratio(acc, m * n * total * total)
}

pub fn rojo_theta(data: &TwoSampleData, alpha: f64) -> Result<ThetaEstimate> {
    let counts = combined_counts(data);
    let mut warnings = Vec::new();
    if counts.has_cross_group_ties() {
        warnings.push("cross-group ties: restricted ECDFs evaluated right-continuously".to_string());
    }
    plugin_theta(Method::Rojo, rojo_auc(data), data, alpha, warnings)
}

pub fn rojo_estimate(data: &TwoSampleData, alpha: f64) -> Result<InferenceReport> {
    InferenceReport::from_estimate(rojo_theta(data, alpha)?)
}
