//! Closed-form mathematics of the resilience ROC family.
//!
//! Under `F = F0^theta` the ROC curve is `R(t) = 1 - (1 - t)^theta`, the AUC is
//! `theta / (1 + theta)` and the Youden index has a closed form in `theta`.
//! The asymptotic variances of the AUC-based estimators are also here since
//! they depend on `theta` alone.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Resilience parameter `theta > 0` (the ratio of reversed hazard rates).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ResilienceTheta(f64);

impl ResilienceTheta {
    pub fn new(theta: f64) -> Result<Self> {
        if theta.is_finite() && theta > 0.0 {
            Ok(Self(theta))
        } else {
            Err(domain(format!("theta must be finite and positive, got {theta}")))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// True when the curve lies above the chance diagonal.
    pub fn is_sensible(self) -> bool {
        self.0 > 1.0
    }
}

/// Limit fraction `p = m / (m + n)` of negative-group observations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SampleProportion(f64);

impl SampleProportion {
    pub fn new(p: f64) -> Result<Self> {
        if p > 0.0 && p < 1.0 {
            Ok(Self(p))
        } else {
            Err(domain(format!("sample proportion must lie in (0, 1), got {p}")))
        }
    }

    pub fn from_sizes(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(domain("both group sizes must be positive"));
        }
        Self::new(m as f64 / (m + n) as f64)
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RocPoint {
    pub fpr: f64,
    pub tpr: f64,
}

impl RocPoint {
    pub fn new(fpr: f64, tpr: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&fpr) && (0.0..=1.0).contains(&tpr) {
            Ok(Self { fpr, tpr })
        } else {
            Err(domain(format!("ROC point ({fpr}, {tpr}) outside the unit square")))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummaryIndices {
    pub auc: f64,
    pub youden: f64,
    pub cutpoint: RocPoint,
}

impl SummaryIndices {
    /// AUC, Youden index and optimal cutpoint for `theta > 1`.
    pub fn from_theta(theta: ResilienceTheta) -> Result<Self> {
        let cutpoint = optimal_cutpoint(theta)?;
        Ok(Self {
            auc: auc_from_theta(theta),
            youden: cutpoint.tpr - cutpoint.fpr,
            cutpoint,
        })
    }
}

/// `R(t) = 1 - (1 - t)^theta`.
pub fn roc_value(theta: ResilienceTheta, t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(domain(format!("t must lie in [0, 1], got {t}")));
    }
    Ok(1.0 - (1.0 - t).powf(theta.get()))
}

pub fn auc_from_theta(theta: ResilienceTheta) -> f64 {
    let th = theta.get();
    th / (1.0 + th)
}

/// Inverse of [`auc_from_theta`].
pub fn theta_from_auc(tau: f64) -> Result<ResilienceTheta> {
    if tau.is_nan() || tau <= 0.0 {
        return Err(Error::DegenerateTau);
    }
    if tau >= 1.0 {
        return Err(Error::InfiniteTheta);
    }
    ResilienceTheta::new(tau / (1.0 - tau))
}

const NEAR_ONE: f64 = 1e-8;

/// `ln a` where `a = (1/theta)^(1/(theta-1))`, continuous through `theta = 1`.
fn log_base(th: f64) -> f64 {
    let d = th - 1.0;
    if d.abs() < NEAR_ONE {
        // -ln(1+d)/d = -1 + d/2 - d^2/3 + ...
        -1.0 + d / 2.0
    } else {
        -th.ln() / d
    }
}

/// Youden index `J = a - a^theta` with `a = (1/theta)^(1/(theta-1))`.
///
/// At `theta = 1` the formula is indeterminate and the limit `J = 0` is returned.
pub fn youden_from_theta(theta: ResilienceTheta) -> Result<f64> {
    let th = theta.get();
    if th < 1.0 {
        return Err(domain(format!("Youden index requires theta >= 1, got {th}")));
    }
    if th == 1.0 {
        return Ok(0.0);
    }
    let la = log_base(th);
    // a - a^theta = a * (1 - a^(theta-1)) = a * -expm1((theta-1) ln a)
    Ok(-la.exp() * ((th - 1.0) * la).exp_m1())
}

/// Derivative of the Youden index with respect to theta, for `theta >= 1`.
pub fn youden_derivative(theta: ResilienceTheta) -> Result<f64> {
    let th = theta.get();
    if th < 1.0 {
        return Err(domain(format!("Youden index requires theta >= 1, got {th}")));
    }
    let d = th - 1.0;
    if d.abs() < 1e-6 {
        // J(1 + d) = e^-1 d + O(d^2)
        return Ok((-1.0f64).exp());
    }
    let la = log_base(th);
    let dla = (th.ln() - d / th) / (d * d);
    let a = la.exp();
    let a_th = (th * la).exp();
    Ok(a * dla - a_th * (la + th * dla))
}

/// FPR/TPR coordinates of the Youden-optimal threshold.
pub fn optimal_cutpoint(theta: ResilienceTheta) -> Result<RocPoint> {
    let th = theta.get();
    if th <= 1.0 {
        return Err(domain(format!(
            "optimal cutpoint requires theta > 1, got {th}"
        )));
    }
    let la = log_base(th);
    let fpr = -la.exp_m1();
    let tpr = -(th * la).exp_m1();
    Ok(RocPoint { fpr, tpr })
}

/// `sigma^2_10 = theta / ((2 + theta)(1 + theta)^2)`.
pub fn sigma2_10(theta: ResilienceTheta) -> f64 {
    let th = theta.get();
    th / ((2.0 + th) * (1.0 + th).powi(2))
}

/// `sigma^2_01 = theta^2 / ((1 + 2 theta)(1 + theta)^2)`.
pub fn sigma2_01(theta: ResilienceTheta) -> f64 {
    let th = theta.get();
    th * th / ((1.0 + 2.0 * th) * (1.0 + th).powi(2))
}

/// Asymptotic variance of `sqrt(m+n) (tau_hat - tau)` for the U-statistic AUC.
pub fn sigma2_tau(theta: ResilienceTheta, p: SampleProportion) -> f64 {
    let p = p.get();
    sigma2_10(theta) / p + sigma2_01(theta) / (1.0 - p)
}

/// Same variance written in terms of `tau`, using `sigma^2_01 = tau^2 (1 - tau) / (1 + tau)`.
pub fn sigma2_tau_in_tau(tau: f64, p: SampleProportion) -> f64 {
    let p = p.get();
    tau * (1.0 - tau).powi(2) / (2.0 - tau) / p + tau * tau * (1.0 - tau) / (1.0 + tau) / (1.0 - p)
}

/// Asymptotic variance of `sqrt(m+n) (theta_hat - theta)` for the AUC plug-in estimators.
pub fn sigma2_theta(theta: ResilienceTheta, p: SampleProportion) -> f64 {
    let th = theta.get();
    let p = p.get();
    let sq = (1.0 + th).powi(2);
    th * sq / (2.0 + th) / p + th * th * sq / (1.0 + 2.0 * th) / (1.0 - p)
}
