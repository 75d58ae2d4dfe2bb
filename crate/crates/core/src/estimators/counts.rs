use serde::{Deserialize, Serialize};

use crate::data::TwoSampleData;
use crate::empirical::distinct_counts;

/// One distinct value `W(p)` of the combined sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CountEntry {
    pub value: f64,
    /// Number of negative scores `<= value`.
    pub x: usize,
    /// Number of positive scores `<= value`.
    pub y: usize,
    /// Negative scores equal to `value`.
    pub dx: usize,
    /// Positive scores equal to `value`.
    pub dy: usize,
}

impl CountEntry {
    /// Observations collapsed into this entry.
    pub fn multiplicity(&self) -> usize {
        self.dx + self.dy
    }
}

/// Cumulative group counts at each distinct value of the ordered combined sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CombinedCounts {
    entries: Vec<CountEntry>,
    m: usize,
    n: usize,
}

impl CombinedCounts {
    pub fn entries(&self) -> &[CountEntry] {
        &self.entries
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `(x_p, y_p)` pairs.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.entries.iter().map(|e| (e.x, e.y)).collect()
    }

    pub fn has_ties(&self) -> bool {
        self.entries.iter().any(|e| e.multiplicity() > 1)
    }

    pub fn has_cross_group_ties(&self) -> bool {
        self.entries.iter().any(|e| e.dx > 0 && e.dy > 0)
    }
}

/// Merges the two sorted groups; tied values collapse to a single entry
/// carrying both increments.
pub fn combined_counts(data: &TwoSampleData) -> CombinedCounts {
    let xs = distinct_counts(data.negative());
    let ys = distinct_counts(data.positive());
    let mut entries = Vec::with_capacity(xs.len() + ys.len());
    let (mut i, mut j) = (0, 0);
    let (mut cx, mut cy) = (0, 0);
    while i < xs.len() || j < ys.len() {
        let take_x = j == ys.len() || (i < xs.len() && xs[i].0 <= ys[j].0);
        let take_y = i == xs.len() || (j < ys.len() && ys[j].0 <= xs[i].0);
        let (mut dx, mut dy, mut value) = (0, 0, 0.0);
        if take_x {
            value = xs[i].0;
            dx = xs[i].1;
            i += 1;
        }
        if take_y {
            value = ys[j].0;
            dy = ys[j].1;
            j += 1;
        }
        cx += dx;
        cy += dy;
        entries.push(CountEntry { value, x: cx, y: cy, dx, dy });
    }
    CombinedCounts { entries, m: data.m(), n: data.n() }
}
