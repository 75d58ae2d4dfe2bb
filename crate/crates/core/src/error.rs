use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("sample is empty")]
    EmptySample,

    #[error("{0} group has no observations")]
    EmptyGroup(&'static str),

    #[error("non-finite score {value} in {group} group")]
    NonFinite { group: &'static str, value: f64 },

    #[error("all observations are tied; theta is not identifiable")]
    DegenerateData,

    #[error("partial likelihood score stays positive up to theta = {cap:e}; the estimate is infinite (perfect or near-perfect separation)")]
    NoFiniteRoot { cap: f64 },

    #[error("partial likelihood score stays negative down to theta = {floor:e}; the estimate collapses to zero")]
    ZeroRoot { floor: f64 },

    #[error("estimated AUC is 1; theta is infinite (perfect separation)")]
    InfiniteTheta,

    #[error("estimated AUC is 0; theta is zero")]
    DegenerateTau,

    #[error("{0} group has zero variance or fewer than two observations")]
    ZeroVariance(&'static str),

    #[error("log-log series has {0} valid points; at least 2 are required")]
    DegenerateSeries(usize),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
