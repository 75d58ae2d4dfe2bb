//! Maximum partial likelihood under the proportional reversed hazard model
//! with a single binary group indicator.
//!
//! With cumulative counts `(x_p, y_p)` at each distinct combined value the log
//! partial likelihood is
//!
//! ```text
//! l(theta) = n ln theta - sum_p d_p ln(x_p + y_p theta)
//! ```
//!
//! where `d_p` is the number of observations tied at `W(p)` (1 for untied
//! data). `l` is concave in `beta = ln theta`, so the root of the score is
//! unique; the solver works on that scale.

use super::{CombinedCounts, Method, ThetaEstimate, InferenceReport};
use super::combined_counts;
use crate::data::TwoSampleData;
use crate::error::{Error, Result};

/// Search interval for theta.
pub const BRACKET: (f64, f64) = (1e-6, 1e6);

const MAX_ITER: usize = 200;

/// Score `n/theta - sum_p d_p y_p / (x_p + y_p theta)`.
pub fn pl_score(theta: f64, counts: &CombinedCounts) -> f64 {
    let s: f64 = counts
        .entries()
        .iter()
        .map(|e| e.multiplicity() as f64 * e.y as f64 / (e.x as f64 + e.y as f64 * theta))
        .sum();
    counts.n() as f64 / theta - s
}

/// Observed information `n/theta^2 - sum_p d_p y_p^2 / (x_p + y_p theta)^2`.
pub fn pl_information(theta: f64, counts: &CombinedCounts) -> f64 {
    let s: f64 = counts
        .entries()
        .iter()
        .map(|e| {
            let y = e.y as f64;
            e.multiplicity() as f64 * y * y / (e.x as f64 + y * theta).powi(2)
        })
        .sum();
    counts.n() as f64 / (theta * theta) - s
}

/// Score on the log scale, `theta * pl_score(theta)`, and its derivative in `ln theta`.
fn log_scale_score(beta: f64, counts: &CombinedCounts) -> (f64, f64) {
    let theta = beta.exp();
    let mut g = counts.n() as f64;
    let mut dg = 0.0;
    for e in counts.entries() {
        let (x, y, d) = (e.x as f64, e.y as f64, e.multiplicity() as f64);
        let denom = x + y * theta;
        g -= d * y * theta / denom;
        dg -= d * x * y * theta / (denom * denom);
    }
    (g, dg)
}

/// Root of the score by Newton's method on `ln theta`, safeguarded by bisection.
pub(crate) fn solve_score(counts: &CombinedCounts) -> Result<f64> {
    if counts.entries().len() < 2 {
        return Err(Error::DegenerateData);
    }
    let (mut lo, mut hi) = (BRACKET.0.ln(), BRACKET.1.ln());
    if log_scale_score(hi, counts).0 > 0.0 {
        return Err(Error::NoFiniteRoot { cap: BRACKET.1 });
    }
    if log_scale_score(lo, counts).0 < 0.0 {
        return Err(Error::ZeroRoot { floor: BRACKET.0 });
    }

    let mut beta = 0.0;
    for _ in 0..MAX_ITER {
        let (g, dg) = log_scale_score(beta, counts);
        let theta = beta.exp();
        if (g / theta).abs() < 1e-12 {
            return Ok(theta);
        }
        if g > 0.0 {
            lo = beta;
        } else {
            hi = beta;
        }
        let newton = beta - g / dg;
        let next = if dg < 0.0 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        let next_theta = next.exp();
        beta = next;
        if (next_theta - theta).abs() < 1e-12 * (1.0 + theta) {
            return Ok(next_theta);
        }
    }
    Ok(beta.exp())
}

pub fn pl_theta(data: &TwoSampleData, alpha: f64) -> Result<ThetaEstimate> {
    let counts = combined_counts(data);
    let theta = solve_score(&counts)?;
    let info = pl_information(theta, &counts);
    if !(info > 0.0) {
        return Err(Error::DegenerateData);
    }
    let mut warnings = Vec::new();
    if counts.has_ties() {
        warnings.push("tied scores: partial likelihood terms weighted by tie multiplicity".to_string());
    }
    ThetaEstimate::new(Method::PartialLikelihood, theta, 1.0 / info.sqrt(), alpha, data, warnings)
}

pub fn pl_estimate(data: &TwoSampleData, alpha: f64) -> Result<InferenceReport> {
    InferenceReport::from_estimate(pl_theta(data, alpha)?)
}
