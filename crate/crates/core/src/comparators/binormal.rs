use serde::{Deserialize, Serialize};

use super::normal::{normal_cdf, normal_quantile};
use crate::data::TwoSampleData;
use crate::error::{domain, Error, Result};

/// Moment fit of the binormal model, `R(t) = Phi(a + b Phi^-1(t))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BinormalFit {
    pub mu0: f64,
    pub sigma0: f64,
    pub mu1: f64,
    pub sigma1: f64,
    /// `(mu1 - mu0) / sigma1`
    pub a: f64,
    /// `sigma0 / sigma1`
    pub b: f64,
}

fn mean_sd(v: &[f64], group: &'static str) -> Result<(f64, f64)> {
    if v.len() < 2 {
        return Err(Error::ZeroVariance(group));
    }
    let k = v.len() as f64;
    let mean = v.iter().sum::<f64>() / k;
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0);
    if !(var > 0.0) {
        return Err(Error::ZeroVariance(group));
    }
    Ok((mean, var.sqrt()))
}

pub fn binormal_fit(data: &TwoSampleData) -> Result<BinormalFit> {
    let (mu0, sigma0) = mean_sd(data.negative(), "negative")?;
    let (mu1, sigma1) = mean_sd(data.positive(), "positive")?;
    BinormalFit::from_moments(mu0, sigma0, mu1, sigma1)
}

impl BinormalFit {
    pub fn from_moments(mu0: f64, sigma0: f64, mu1: f64, sigma1: f64) -> Result<Self> {
        if !(sigma0 > 0.0 && sigma1 > 0.0) {
            return Err(domain("binormal standard deviations must be positive"));
        }
        Ok(Self { mu0, sigma0, mu1, sigma1, a: (mu1 - mu0) / sigma1, b: sigma0 / sigma1 })
    }
}

pub fn binormal_roc(fit: &BinormalFit, t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(domain(format!("t must lie in [0, 1], got {t}")));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    if t == 1.0 {
        return Ok(1.0);
    }
    Ok(normal_cdf(fit.a + fit.b * normal_quantile(t)?))
}

/// `Phi((mu1 - mu0) / sqrt(sigma0^2 + sigma1^2))`.
pub fn binormal_auc(fit: &BinormalFit) -> f64 {
    normal_cdf((fit.mu1 - fit.mu0) / (fit.sigma0.powi(2) + fit.sigma1.powi(2)).sqrt())
}
