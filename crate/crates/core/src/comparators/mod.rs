//! Reference ROC models used for comparison (empirical, binormal, Lehmann),
//! the Yeo-Johnson normalizing transform and normal distribution utilities.

pub mod binormal;
pub mod lehmann;
pub mod normal;
pub mod yeo_johnson;

pub use binormal::{binormal_auc, binormal_fit, binormal_roc, BinormalFit};
pub use lehmann::{lehmann_estimate, lehmann_roc, resilience_vs_lehmann_crossing, LehmannGamma};
pub use normal::{normal_cdf, normal_quantile};
pub use yeo_johnson::{yeo_johnson, yeo_johnson_fit, YeoJohnsonLambda};
