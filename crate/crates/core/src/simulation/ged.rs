use serde::{Deserialize, Serialize};

use super::rng::RngStream;
use crate::error::{domain, Result};

/// Generalized exponential distribution, `F(t) = (1 - exp(-lambda t))^theta` on `t > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GedParams {
    pub lambda: f64,
    pub theta: f64,
}

impl GedParams {
    pub fn new(lambda: f64, theta: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(domain(format!("GED scale must be positive, got {lambda}")));
        }
        if !(theta > 0.0 && theta.is_finite()) {
            return Err(domain(format!("GED resilience must be positive, got {theta}")));
        }
        Ok(Self { lambda, theta })
    }
}

pub fn ged_cdf(params: GedParams, t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    (params.theta * (-(-params.lambda * t).exp_m1()).ln()).exp()
}

/// `t = -ln(1 - u^(1/theta)) / lambda`.
pub fn ged_quantile(params: GedParams, u: f64) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(domain(format!("GED quantile requires u in (0, 1), got {u}")));
    }
    // 1 - u^(1/theta) = -expm1(ln(u) / theta)
    Ok(-(-(u.ln() / params.theta).exp_m1()).ln() / params.lambda)
}

/// Inverse-CDF draws from the stream.
pub fn ged_sample(params: GedParams, size: usize, stream: &mut RngStream) -> Vec<f64> {
    (0..size)
        .map(|_| ged_quantile(params, stream.next_open01()).expect("open-interval uniform"))
        .collect()
}
