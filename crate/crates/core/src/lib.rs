//! Resilience (proportional reversed hazard) family of ROC curves.
//!
//! If the positive-group score distribution is a power of the negative-group
//! one, `F = F0^theta`, the ROC curve is `R(t) = 1 - (1 - t)^theta` whatever
//! `F0` is. This crate provides:
//!
//! - [`model`]: the closed-form curve, AUC, Youden index, optimal cutpoint and
//!   asymptotic variances;
//! - [`empirical`]: ECDFs, the order-restricted ECDF pair, the empirical ROC
//!   curve and graphical model-checking series;
//! - [`estimators`]: maximum partial likelihood, Mann-Whitney and Rojo
//!   estimators of `theta` with Wald inference;
//! - [`comparators`]: binormal and Lehmann reference models, Yeo-Johnson
//!   normalization and normal distribution utilities;
//! - [`simulation`]: a deterministic, parallel Monte Carlo study engine.
//!
//! ```
//! use resroc::{estimators::{estimate, Method}, TwoSampleData};
//!
//! let data = TwoSampleData::new(vec![1.0, 3.0], vec![2.0, 4.0])?;
//! let report = estimate(&data, Method::MannWhitney, 0.05, false)?;
//! assert_eq!(report.estimate.theta_hat, 3.0);
//! assert_eq!(report.tau_hat, 0.75);
//! # Ok::<(), resroc::Error>(())
//! ```

pub mod comparators;
pub mod data;
pub mod empirical;
pub mod error;
pub mod estimators;
pub mod model;
pub mod simulation;

pub use data::TwoSampleData;
pub use error::{Error, Result};
pub use model::{ResilienceTheta, RocPoint, SampleProportion, SummaryIndices};
