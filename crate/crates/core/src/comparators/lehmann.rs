use serde::{Deserialize, Serialize};

use crate::data::TwoSampleData;
use crate::error::{domain, Error, Result};
use crate::estimators::mw_auc;

/// Lehmann (proportional hazards) ROC parameter: `1 - F = (1 - F0)^gamma`, `R(t) = t^gamma`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LehmannGamma {
    pub gamma: f64,
    pub clamped: bool,
    pub warnings: Vec<String>,
}

impl LehmannGamma {
    pub fn auc(&self) -> f64 {
        1.0 / (1.0 + self.gamma)
    }
}

/// Upper clamp for gamma when the AUC estimate does not exceed 1/2.
pub const GAMMA_MAX: f64 = 1.0 - 1e-9;

/// Moment estimate `gamma = (1 - tau) / tau` from the Mann-Whitney AUC.
pub fn lehmann_estimate(data: &TwoSampleData) -> Result<LehmannGamma> {
    let tau = mw_auc(data).auc;
    if tau >= 1.0 {
        return Err(Error::InfiniteTheta);
    }
    if tau <= 0.0 {
        return Err(Error::DegenerateTau);
    }
    let raw = (1.0 - tau) / tau;
    if raw >= 1.0 {
        return Ok(LehmannGamma {
            gamma: GAMMA_MAX,
            clamped: true,
            warnings: vec![format!("gamma = {raw} outside (0, 1); clamped to {GAMMA_MAX}")],
        });
    }
    Ok(LehmannGamma { gamma: raw, clamped: false, warnings: Vec::new() })
}

pub fn lehmann_roc(gamma: f64, t: f64) -> Result<f64> {
    if !(gamma > 0.0) {
        return Err(domain(format!("gamma must be positive, got {gamma}")));
    }
    if !(0.0..=1.0).contains(&t) {
        return Err(domain(format!("t must lie in [0, 1], got {t}")));
    }
    Ok(t.powf(gamma))
}

/// `t^gamma - (1 - (1 - t)^theta)`, positive where the Lehmann curve is above.
fn gap(theta: f64, gamma: f64, t: f64) -> f64 {
    t.powf(gamma) + (theta * (-t).ln_1p()).exp_m1()
}

/// First interior `t` where the Lehmann curve `t^gamma` meets the resilience
/// curve `1 - (1 - t)^theta`, or `None` if no sign change is found.
///
/// The scan combines a uniform grid with log-spaced points near zero, where
/// the first crossing sits when `gamma` is close to 1.
pub fn resilience_vs_lehmann_crossing(theta: f64, gamma: f64) -> Result<Option<f64>> {
    if !(theta > 1.0) {
        return Err(domain(format!("crossing requires theta > 1, got {theta}")));
    }
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(domain(format!("crossing requires gamma in (0, 1), got {gamma}")));
    }
    let mut grid: Vec<f64> = (1..=300).map(|k| 10f64.powf(-(k as f64) / 10.0)).collect();
    grid.extend((1..10_000).map(|k| k as f64 / 10_000.0));
    grid.sort_by(f64::total_cmp);
    grid.dedup();

    let mut prev: Option<(f64, f64)> = None;
    for &t in &grid {
        let g = gap(theta, gamma, t);
        if let Some((t0, g0)) = prev {
            if g0 != 0.0 && g0.signum() != g.signum() {
                return Ok(Some(bisect(theta, gamma, t0, t, g0)));
            }
        }
        if g == 0.0 {
            return Ok(Some(t));
        }
        prev = Some((t, g));
    }
    Ok(None)
}

fn bisect(theta: f64, gamma: f64, mut lo: f64, mut hi: f64, g_lo: f64) -> f64 {
    for _ in 0..200 {
        if hi - lo <= 1e-12 * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let g = gap(theta, gamma, mid);
        if g == 0.0 {
            return mid;
        }
        if g.signum() == g_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{auc_from_theta, ResilienceTheta};

    /// Sign changes of the gap on a uniform grid of `k` cells.
    fn sign_scan(theta: f64, gamma: f64, k: usize) -> Vec<(f64, f64)> {
        let h = |t: f64| t.powf(gamma) - (1.0 - (1.0 - t).powf(theta));
        (1..k - 1)
            .map(|i| (i as f64 / k as f64, (i + 1) as f64 / k as f64))
            .filter(|&(a, b)| h(a).signum() != h(b).signum())
            .collect()
    }

    #[test]
    fn roc_examples() {
        assert_eq!(lehmann_roc(0.5, 0.25).unwrap(), 0.5);
        assert_eq!(lehmann_roc(1.0, 0.37).unwrap(), 0.37);
        assert!(lehmann_roc(0.5, 1.5).is_err());
    }

    #[test]
    fn estimate_examples() {
        let d = TwoSampleData::new(vec![1.0, 3.0], vec![2.0, 4.0]).unwrap();
        let g = lehmann_estimate(&d).unwrap();
        assert!((g.gamma - 1.0 / 3.0).abs() < 1e-15);
        assert!((g.auc() - 0.75).abs() < 1e-15);
        let rev = TwoSampleData::new(vec![2.0, 4.0], vec![1.0, 3.0]).unwrap();
        let g = lehmann_estimate(&rev).unwrap();
        assert!(g.clamped && g.gamma < 1.0);
        let sep = TwoSampleData::new(vec![1.0], vec![2.0]).unwrap();
        assert_eq!(lehmann_estimate(&sep).unwrap_err(), Error::InfiniteTheta);
    }

    #[test]
    fn matched_auc_formulas_agree() {
        for th in [1.2, 2.0, 3.0, 7.5] {
            let g = LehmannGamma { gamma: 1.0 / th, clamped: false, warnings: vec![] };
            let r = auc_from_theta(ResilienceTheta::new(th).unwrap());
            assert!((g.auc() - r).abs() < 1e-15);
        }
    }

    #[test]
    fn crossing_matched_pair() {
        let t = resilience_vs_lehmann_crossing(3.0, 1.0 / 3.0).unwrap().unwrap();
        let cells = sign_scan(3.0, 1.0 / 3.0, 10_000);
        assert_eq!(cells.len(), 1);
        assert!(cells[0].0 <= t && t <= cells[0].1);
        assert!(gap(3.0, 1.0 / 3.0, t - 1e-6) > 0.0 && gap(3.0, 1.0 / 3.0, t + 1e-6) < 0.0);
    }

    #[test]
    fn crossing_near_boundary() {
        let eps = 0.05;
        let t = resilience_vs_lehmann_crossing(1.0 + eps, 1.0 - eps).unwrap().unwrap();
        let cells = sign_scan(1.0 + eps, 1.0 - eps, 10_000);
        assert!(!cells.is_empty());
        assert!(cells[0].0 <= t && t <= cells[0].1);
    }

    #[test]
    fn crossing_agrees_with_scan_when_lehmann_is_weaker() {
        // Lehmann AUC 0.526 < resilience AUC 0.667; the crossing is tiny
        let found = resilience_vs_lehmann_crossing(2.0, 0.9).unwrap();
        let cells = sign_scan(2.0, 0.9, 10_000);
        assert_eq!(found.is_some(), !cells.is_empty());
        let t = found.unwrap();
        // analytic location satisfies t^(gamma-1) ~ theta for small t
        assert!(t < 1e-3 && t > 9e-4);
        assert!(gap(2.0, 0.9, t).abs() < 1e-12);
    }

    #[test]
    fn crossing_domain() {
        assert!(resilience_vs_lehmann_crossing(1.0, 0.5).is_err());
        assert!(resilience_vs_lehmann_crossing(2.0, 1.0).is_err());
    }
}
