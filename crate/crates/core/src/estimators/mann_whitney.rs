use serde::{Deserialize, Serialize};

use super::{combined_counts, plugin_se, InferenceReport, Method, ThetaEstimate};
use crate::data::TwoSampleData;
use crate::error::{Error, Result};

/// Mann-Whitney AUC with midrank (half) credit for tied pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MwAuc {
    pub auc: f64,
    /// Number of `(i, j)` pairs with `x_i == y_j`.
    pub tie_count: u64,
}

pub(crate) fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `num / den` after cancelling common factors, so equal rationals map to equal floats.
pub(crate) fn ratio(num: u128, den: u128) -> f64 {
    let g = gcd(num, den).max(1);
    (num / g) as f64 / (den / g) as f64
}

/// `(1/mn) [#{x_i < y_j} + 0.5 #{x_i = y_j}]` from a single merge of the sorted groups.
pub fn mw_auc(data: &TwoSampleData) -> MwAuc {
    let counts = combined_counts(data);
    let mut twice_wins: u128 = 0;
    let mut ties: u64 = 0;
    for e in counts.entries() {
        let below = (e.x - e.dx) as u128;
        twice_wins += e.dy as u128 * (2 * below + e.dx as u128);
        ties += (e.dx * e.dy) as u64;
    }
    let den = 2 * data.m() as u128 * data.n() as u128;
    MwAuc { auc: ratio(twice_wins, den), tie_count: ties }
}

/// Plug-in theta, standard error and Wald interval from an AUC estimate.
pub(crate) fn plugin_theta(
    method: Method,
    tau: f64,
    data: &TwoSampleData,
    alpha: f64,
    warnings: Vec<String>,
) -> Result<ThetaEstimate> {
    if tau >= 1.0 {
        return Err(Error::InfiniteTheta);
    }
    if tau <= 0.0 {
        return Err(Error::DegenerateTau);
    }
    let theta = tau / (1.0 - tau);
    let se = plugin_se(theta, data.m(), data.n())?;
    ThetaEstimate::new(method, theta, se, alpha, data, warnings)
}

pub fn mw_theta(data: &TwoSampleData, alpha: f64) -> Result<ThetaEstimate> {
    let MwAuc { auc, tie_count } = mw_auc(data);
    let mut warnings = Vec::new();
    if tie_count > 0 {
        warnings.push(format!("{tie_count} cross-group tied pairs counted with half credit"));
    }
    plugin_theta(Method::MannWhitney, auc, data, alpha, warnings)
}

pub fn mw_estimate(data: &TwoSampleData, alpha: f64) -> Result<InferenceReport> {
    InferenceReport::from_estimate(mw_theta(data, alpha)?)
}
