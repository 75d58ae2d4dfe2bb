use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Search range for the transformation parameter.
pub const LAMBDA_RANGE: (f64, f64) = (-3.0, 3.0);
const TOL: f64 = 1e-5;

/// Yeo-Johnson power transform; strictly increasing in `y` for every `lambda`.
pub fn yeo_johnson(y: f64, lambda: f64) -> f64 {
    if y >= 0.0 {
        // ((1+y)^lambda - 1) / lambda, with ln(1+y) at lambda = 0
        let l = y.ln_1p();
        if lambda == 0.0 {
            l
        } else {
            (lambda * l).exp_m1() / lambda
        }
    } else {
        let l = (-y).ln_1p();
        let k = 2.0 - lambda;
        if k == 0.0 {
            -l
        } else {
            -(k * l).exp_m1() / k
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct YeoJohnsonLambda {
    pub lambda: f64,
    /// Profile log-likelihood at `lambda`.
    pub loglik: f64,
    /// The optimum sits on the edge of the search range.
    pub at_boundary: bool,
}

/// Normal profile log-likelihood of the transformed sample, including the Jacobian.
pub fn profile_loglik(sample: &[f64], lambda: f64) -> f64 {
    let k = sample.len() as f64;
    let z: Vec<f64> = sample.iter().map(|&y| yeo_johnson(y, lambda)).collect();
    let mean = z.iter().sum::<f64>() / k;
    let var = z.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / k;
    let jac: f64 = sample.iter().map(|&y| y.signum() * y.abs().ln_1p()).sum();
    -0.5 * k * var.ln() + (lambda - 1.0) * jac
}

/// Maximizes [`profile_loglik`] over `LAMBDA_RANGE` by golden-section search.
pub fn yeo_johnson_fit(sample: &[f64]) -> Result<YeoJohnsonLambda> {
    if sample.len() < 2 {
        return Err(Error::ZeroVariance("pooled"));
    }
    if let Some(&value) = sample.iter().find(|v| !v.is_finite()) {
        return Err(Error::NonFinite { group: "pooled", value });
    }
    if sample.iter().all(|&v| v == sample[0]) {
        return Err(Error::ZeroVariance("pooled"));
    }
    let f = |l: f64| profile_loglik(sample, l);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = LAMBDA_RANGE;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > TOL {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let lambda = 0.5 * (a + b);
    Ok(YeoJohnsonLambda {
        lambda,
        loglik: f(lambda),
        at_boundary: lambda - LAMBDA_RANGE.0 < 10.0 * TOL || LAMBDA_RANGE.1 - lambda < 10.0 * TOL,
    })
}
