//! Deterministic Monte Carlo engine for the estimator comparison study.
//!
//! Each replication of each `(theta, m, n)` cell draws `X ~ GED(lambda, 1)`
//! and `Y ~ GED(lambda, theta)` from its own counter-based stream, runs every
//! selected estimator on the same data and records theta, tau, Youden and
//! whether the theta interval covers the truth. Replications run in parallel
//! and are reduced in index order, so reports do not depend on thread count.

mod ged;
mod rng;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use ged::{ged_cdf, ged_quantile, ged_sample, GedParams};
pub use rng::{rng_stream, RngStream};

use crate::data::TwoSampleData;
use crate::error::{Error, Result};
use crate::estimators::{estimate, Method};
use crate::model::{auc_from_theta, youden_from_theta, ResilienceTheta};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyConfig {
    pub theta_values: Vec<f64>,
    pub size_pairs: Vec<(usize, usize)>,
    pub replications: usize,
    pub alpha: f64,
    pub seed: u64,
    pub methods: Vec<Method>,
    /// GED scale shared by both groups.
    pub lambda: f64,
    pub enforce_family: bool,
    /// Worker threads; `None` uses the global rayon pool.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
}

impl Default for StudyConfig {
    fn default() -> Self {
        Self {
            theta_values: vec![2.0, 4.0, 6.0],
            size_pairs: vec![(60, 60), (60, 80), (60, 100)],
            replications: 10_000,
            alpha: 0.05,
            seed: 20_240_601,
            methods: Method::ALL.to_vec(),
            lambda: 1.0,
            enforce_family: false,
            threads: None,
        }
    }
}

impl StudyConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(m.to_string()));
        if self.theta_values.is_empty() || self.theta_values.iter().any(|&t| !(t > 0.0 && t.is_finite())) {
            return bad("theta values must be a nonempty list of positive numbers");
        }
        if self.size_pairs.is_empty() || self.size_pairs.iter().any(|&(m, n)| m < 2 || n < 2) {
            return bad("size pairs must be nonempty with every size >= 2");
        }
        if self.replications == 0 {
            return bad("replications must be at least 1");
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return bad("alpha must lie in (0, 1)");
        }
        if self.methods.is_empty() {
            return bad("at least one method is required");
        }
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return bad("lambda must be positive");
        }
        if self.threads == Some(0) {
            return bad("threads must be at least 1");
        }
        Ok(())
    }

    /// `(cell_index, theta, m, n)` in report order.
    pub fn cells(&self) -> Vec<(u64, f64, usize, usize)> {
        self.theta_values
            .iter()
            .flat_map(|&t| self.size_pairs.iter().map(move |&(m, n)| (t, m, n)))
            .enumerate()
            .map(|(i, (t, m, n))| (i as u64, t, m, n))
            .collect()
    }
}

/// Summary of one `(theta, m, n, method)` cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationRow {
    pub theta: f64,
    pub m: usize,
    pub n: usize,
    pub method: Method,
    pub replications: usize,
    /// Replications where the estimator raised an error; excluded from the moments.
    pub failures: usize,
    pub avg_theta: f64,
    /// Sample standard deviation, divisor `R - 1`.
    pub sd_theta: f64,
    /// Root mean squared error about the true theta, divisor `R`.
    pub rmse_theta: f64,
    pub coverage: f64,
    /// AUC of the curve at `avg_theta`.
    pub avg_tau: f64,
    /// Youden index at `avg_theta`, 0 when it is at or below 1.
    pub avg_youden: f64,
    /// Mean of the per-replication AUC estimates.
    pub mean_tau_hat: f64,
    /// Standard deviation of the per-replication AUC estimates, divisor `R - 1`.
    pub sd_tau: f64,
    /// Mean of the per-replication Youden estimates, counting `J = 0` when `theta_hat <= 1`.
    pub mean_youden_hat: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub config: StudyConfig,
    pub rows: Vec<SimulationRow>,
}

impl SimulationReport {
    pub fn row(&self, theta: f64, m: usize, n: usize, method: Method) -> Option<&SimulationRow> {
        self.rows
            .iter()
            .find(|r| r.theta == theta && r.m == m && r.n == n && r.method == method)
    }
}

#[derive(Debug, Clone, Copy)]
struct Outcome {
    theta: f64,
    tau: f64,
    youden: f64,
    covered: bool,
}

fn replicate(config: &StudyConfig, cell: u64, theta: f64, m: usize, n: usize, rep: u64) -> Vec<Option<Outcome>> {
    let mut stream = rng_stream(config.seed, cell, rep);
    let neg = GedParams { lambda: config.lambda, theta: 1.0 };
    let pos = GedParams { lambda: config.lambda, theta };
    let x = ged_sample(neg, m, &mut stream);
    let y = ged_sample(pos, n, &mut stream);
    let data = TwoSampleData::new(x, y).expect("GED draws are finite");
    config
        .methods
        .iter()
        .map(|&method| {
            estimate(&data, method, config.alpha, config.enforce_family).ok().map(|r| Outcome {
                theta: r.estimate.theta_hat,
                tau: r.tau_hat,
                youden: r.youden_hat.unwrap_or(0.0),
                covered: r.estimate.ci_theta.contains(theta),
            })
        })
        .collect()
}

fn curve_tau(theta: f64) -> f64 {
    ResilienceTheta::new(theta).map_or(f64::NAN, auc_from_theta)
}

fn curve_youden(theta: f64) -> f64 {
    match ResilienceTheta::new(theta) {
        Ok(t) if theta > 1.0 => youden_from_theta(t).unwrap_or(0.0),
        Ok(_) => 0.0,
        Err(_) => f64::NAN,
    }
}

fn summarize(theta: f64, m: usize, n: usize, method: Method, outcomes: &[Option<Outcome>]) -> SimulationRow {
    let ok: Vec<Outcome> = outcomes.iter().flatten().copied().collect();
    let r = ok.len() as f64;
    let mean = |f: fn(&Outcome) -> f64| ok.iter().map(f).sum::<f64>() / r;
    let avg_theta = mean(|o| o.theta);
    let mean_tau_hat = mean(|o| o.tau);
    let sd = |f: fn(&Outcome) -> f64, center: f64| {
        if ok.len() < 2 {
            0.0
        } else {
            (ok.iter().map(|o| (f(o) - center).powi(2)).sum::<f64>() / (r - 1.0)).sqrt()
        }
    };
    SimulationRow {
        theta,
        m,
        n,
        method,
        replications: outcomes.len(),
        failures: outcomes.len() - ok.len(),
        avg_theta,
        sd_theta: sd(|o| o.theta, avg_theta),
        rmse_theta: (ok.iter().map(|o| (o.theta - theta).powi(2)).sum::<f64>() / r).sqrt(),
        coverage: ok.iter().filter(|o| o.covered).count() as f64 / r,
        avg_tau: curve_tau(avg_theta),
        avg_youden: curve_youden(avg_theta),
        mean_tau_hat,
        sd_tau: sd(|o| o.tau, mean_tau_hat),
        mean_youden_hat: mean(|o| o.youden),
    }
}

fn run_cells(config: &StudyConfig) -> Vec<SimulationRow> {
    let mut rows = Vec::new();
    for (cell, theta, m, n) in config.cells() {
        let per_rep: Vec<Vec<Option<Outcome>>> = (0..config.replications as u64)
            .into_par_iter()
            .map(|rep| replicate(config, cell, theta, m, n, rep))
            .collect();
        for (k, &method) in config.methods.iter().enumerate() {
            let column: Vec<Option<Outcome>> = per_rep.iter().map(|v| v[k]).collect();
            rows.push(summarize(theta, m, n, method, &column));
        }
    }
    rows
}

pub fn run_study(config: &StudyConfig) -> Result<SimulationReport> {
    config.validate()?;
    let rows = match config.threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(|| run_cells(config)),
        None => run_cells(config),
    };
    Ok(SimulationReport { config: config.clone(), rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(reps: usize, threads: Option<usize>) -> StudyConfig {
        StudyConfig {
            theta_values: vec![2.0, 4.0],
            size_pairs: vec![(20, 25)],
            replications: reps,
            seed: 42,
            threads,
            ..StudyConfig::default()
        }
    }

    #[test]
    fn validation() {
        assert!(StudyConfig::default().validate().is_ok());
        let mut c = small(10, None);
        c.replications = 0;
        assert!(run_study(&c).is_err());
        let mut c = small(10, None);
        c.size_pairs = vec![(1, 5)];
        assert!(c.validate().is_err());
        let mut c = small(10, None);
        c.alpha = 1.0;
        assert!(c.validate().is_err());
        let mut c = small(10, None);
        c.methods.clear();
        assert!(c.validate().is_err());
    }

    #[test]
    fn default_grid_has_27_rows_worth_of_cells() {
        let c = StudyConfig::default();
        assert_eq!(c.cells().len() * c.methods.len(), 27);
    }

    #[test]
    fn single_replication() {
        let rep = run_study(&small(1, None)).unwrap();
        for r in &rep.rows {
            assert_eq!(r.failures, 0);
            assert_eq!(r.sd_theta, 0.0);
            assert!((r.rmse_theta - (r.avg_theta - r.theta).abs()).abs() < 1e-15);
            assert!(r.coverage == 0.0 || r.coverage == 1.0);
        }
    }

    #[test]
    fn independent_of_thread_count() {
        let a = run_study(&small(200, Some(1))).unwrap();
        let b = run_study(&small(200, Some(4))).unwrap();
        assert_eq!(a.rows, b.rows);
    }

    #[test]
    fn rmse_decomposition() {
        let rep = run_study(&small(300, None)).unwrap();
        for r in &rep.rows {
            let k = (r.replications - r.failures) as f64;
            let lhs = r.rmse_theta.powi(2);
            let rhs = (r.avg_theta - r.theta).powi(2) + r.sd_theta.powi(2) * (k - 1.0) / k;
            assert!((lhs - rhs).abs() < 1e-10 * lhs.max(1.0));
            assert!((0.0..=1.0).contains(&r.coverage));
        }
    }

    #[test]
    fn curve_summaries_follow_average_theta() {
        let rep = run_study(&small(200, None)).unwrap();
        for r in &rep.rows {
            assert!((r.avg_tau - r.avg_theta / (1.0 + r.avg_theta)).abs() < 1e-15);
            let a = r.avg_theta.powf(-1.0 / (r.avg_theta - 1.0));
            assert!((r.avg_youden - (a - a.powf(r.avg_theta))).abs() < 1e-12);
            assert!(r.mean_tau_hat > 0.5 && r.mean_tau_hat < 1.0);
            assert!(r.mean_youden_hat > 0.0 && r.mean_youden_hat < 1.0);
        }
    }

    #[test]
    fn rows_in_cell_order() {
        let rep = run_study(&small(5, None)).unwrap();
        let keys: Vec<(f64, Method)> = rep.rows.iter().map(|r| (r.theta, r.method)).collect();
        assert_eq!(keys[0], (2.0, Method::PartialLikelihood));
        assert_eq!(keys[3], (4.0, Method::PartialLikelihood));
        assert!(rep.row(4.0, 20, 25, Method::Rojo).is_some());
    }
}
