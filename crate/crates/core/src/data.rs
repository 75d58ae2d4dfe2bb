use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Scores of the negative group (`x`, distribution `F0`) and of the positive
/// group (`y`, distribution `F`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoSampleData {
    x: Vec<f64>,
    y: Vec<f64>,
}

impl TwoSampleData {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::EmptyGroup("negative"));
        }
        if y.is_empty() {
            return Err(Error::EmptyGroup("positive"));
        }
        if let Some(&value) = x.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite { group: "negative", value });
        }
        if let Some(&value) = y.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite { group: "positive", value });
        }
        Ok(Self { x, y })
    }

    pub fn negative(&self) -> &[f64] {
        &self.x
    }

    pub fn positive(&self) -> &[f64] {
        &self.y
    }

    /// Size `m` of the negative group.
    pub fn m(&self) -> usize {
        self.x.len()
    }

    /// Size `n` of the positive group.
    pub fn n(&self) -> usize {
        self.y.len()
    }

    /// Applies the same map to every score of both groups.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(
            self.x.iter().map(|&v| f(v)).collect(),
            self.y.iter().map(|&v| f(v)).collect(),
        )
    }

    /// Number of `(i, j)` pairs with `x_i == y_j`.
    pub fn cross_group_ties(&self) -> u64 {
        crate::estimators::combined_counts(self)
            .entries()
            .iter()
            .map(|e| (e.dx * e.dy) as u64)
            .sum()
    }
}
