//! Estimators of the resilience parameter: maximum partial likelihood,
//! Mann-Whitney plug-in and the Rojo order-restricted plug-in, each with a
//! standard error, Wald test and derived AUC / Youden inference.

mod counts;
mod mann_whitney;
mod partial_likelihood;
mod rojo;

use serde::{Deserialize, Serialize};

pub use counts::{combined_counts, CombinedCounts, CountEntry};
pub use mann_whitney::{mw_auc, mw_estimate, mw_theta, MwAuc};
pub use partial_likelihood::{pl_estimate, pl_information, pl_score, pl_theta, BRACKET};
pub use rojo::{rojo_auc, rojo_estimate, rojo_theta};

use crate::comparators::normal::{normal_sf, z_critical};
use crate::data::TwoSampleData;
use crate::error::Result;
use crate::model::{
    optimal_cutpoint, sigma2_theta, youden_derivative, youden_from_theta, ResilienceTheta,
    RocPoint, SampleProportion,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "PL")]
    PartialLikelihood,
    #[serde(rename = "MW")]
    MannWhitney,
    #[serde(rename = "Rojo")]
    Rojo,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::PartialLikelihood, Method::MannWhitney, Method::Rojo];

    pub fn label(self) -> &'static str {
        match self {
            Method::PartialLikelihood => "PL",
            Method::MannWhitney => "MW",
            Method::Rojo => "Rojo",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "pl" => Ok(Method::PartialLikelihood),
            "mw" => Ok(Method::MannWhitney),
            "rojo" => Ok(Method::Rojo),
            other => Err(format!("unknown method `{other}` (expected pl, mw or rojo)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn symmetric(center: f64, half_width: f64) -> Self {
        Self { lo: center - half_width, hi: center + half_width }
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Point estimate of theta with its standard error and Wald interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaEstimate {
    pub method: Method,
    pub theta_hat: f64,
    /// Standard error of `theta_hat` itself.
    pub se_theta: f64,
    pub ci_theta: Interval,
    pub alpha: f64,
    pub m: usize,
    pub n: usize,
    pub clamped: bool,
    pub warnings: Vec<String>,
}

impl ThetaEstimate {
    pub(crate) fn new(
        method: Method,
        theta_hat: f64,
        se_theta: f64,
        alpha: f64,
        data: &TwoSampleData,
        warnings: Vec<String>,
    ) -> Result<Self> {
        let z = z_critical(alpha)?;
        Ok(Self {
            method,
            theta_hat,
            se_theta,
            ci_theta: Interval::symmetric(theta_hat, z * se_theta),
            alpha,
            m: data.m(),
            n: data.n(),
            clamped: false,
            warnings,
        })
    }
}

/// Standard error of the AUC plug-in estimators, `sqrt(sigma^2(theta) / (m+n))`.
pub(crate) fn plugin_se(theta_hat: f64, m: usize, n: usize) -> Result<f64> {
    let p = SampleProportion::from_sizes(m, n)?;
    let th = ResilienceTheta::new(theta_hat)?;
    Ok((sigma2_theta(th, p) / (m + n) as f64).sqrt())
}

/// Restricts an estimate to the sensible family `theta >= 1` when `enforce` is set.
///
/// Without `enforce` an estimate below 1 is left as is and a warning is recorded.
pub fn clamp_to_family(mut est: ThetaEstimate, enforce: bool) -> ThetaEstimate {
    if est.theta_hat >= 1.0 {
        return est;
    }
    if enforce {
        est.warnings.push(format!(
            "theta_hat = {} is below 1; replaced by max(1, theta_hat)",
            est.theta_hat
        ));
        est.theta_hat = 1.0;
        est.ci_theta = Interval { lo: est.ci_theta.lo.max(1.0), hi: est.ci_theta.hi.max(1.0) };
        est.clamped = true;
    } else {
        est.warnings.push(format!(
            "theta_hat = {} is below 1; the fitted curve lies under the chance diagonal",
            est.theta_hat
        ));
    }
    est
}

/// Estimate plus derived AUC, Youden index, optimal cutpoint and Wald test of `theta = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InferenceReport {
    pub estimate: ThetaEstimate,
    pub tau_hat: f64,
    pub se_tau: f64,
    pub ci_tau: Interval,
    /// Absent when `theta_hat < 1`.
    pub youden_hat: Option<f64>,
    /// Absent when `theta_hat <= 1`.
    pub ci_youden: Option<Interval>,
    pub cutpoint: Option<RocPoint>,
    pub wald_z: f64,
    pub wald_p: f64,
}

impl InferenceReport {
    /// Derives AUC and Youden inference from a theta estimate by the delta method.
    pub fn from_estimate(estimate: ThetaEstimate) -> Result<Self> {
        let z = z_critical(estimate.alpha)?;
        let th = estimate.theta_hat;
        let se = estimate.se_theta;
        let theta = ResilienceTheta::new(th)?;

        let tau_hat = th / (1.0 + th);
        let se_tau = se / (1.0 + th).powi(2);
        let ci_tau = Interval::symmetric(tau_hat, z * se_tau);

        let youden_hat = if th >= 1.0 { Some(youden_from_theta(theta)?) } else { None };
        let (ci_youden, cutpoint) = if th > 1.0 {
            let se_j = youden_derivative(theta)?.abs() * se;
            (
                Some(Interval::symmetric(youden_hat.unwrap_or(0.0), z * se_j)),
                Some(optimal_cutpoint(theta)?),
            )
        } else {
            (None, None)
        };

        let wald_z = (th - 1.0) / se;
        let wald_p = (2.0 * normal_sf(wald_z.abs())).min(1.0);

        Ok(Self {
            estimate,
            tau_hat,
            se_tau,
            ci_tau,
            youden_hat,
            ci_youden,
            cutpoint,
            wald_z,
            wald_p,
        })
    }
}

pub fn theta_estimate(data: &TwoSampleData, method: Method, alpha: f64) -> Result<ThetaEstimate> {
    match method {
        Method::PartialLikelihood => pl_theta(data, alpha),
        Method::MannWhitney => mw_theta(data, alpha),
        Method::Rojo => rojo_theta(data, alpha),
    }
}

/// Runs one estimator, applies the optional family restriction and derives the summary indices.
pub fn estimate(
    data: &TwoSampleData,
    method: Method,
    alpha: f64,
    enforce_family: bool,
) -> Result<InferenceReport> {
    let est = theta_estimate(data, method, alpha)?;
    InferenceReport::from_estimate(clamp_to_family(est, enforce_family))
}
