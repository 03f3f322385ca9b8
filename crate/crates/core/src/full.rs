//! Exact full-matrix DTW. Keeps the whole cumulative matrix so the optimal
//! path can be recovered; it is the reference every other aligner is checked
//! against.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::series::{local_distance, min3, AlignmentResult, Params, TimeSeries, WarpingPath};

/// Largest dense matrix `dtw_full` agrees to allocate (512 MiB of `f64`).
pub const DEFAULT_DENSE_LIMIT: usize = 64 * 1024 * 1024;

/// Dense cumulative cost matrix, row-major, 1-based accessors.
#[derive(Debug, Clone)]
pub struct CostMatrix {
    n: usize,
    m: usize,
    cells: Vec<f64>,
}

impl CostMatrix {
    pub fn rows(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.cells[(i - 1) * self.m + (j - 1)]
    }

    /// Column `j` as a vector over rows `1..=n`.
    pub fn column(&self, j: usize) -> Vec<f64> {
        (1..=self.n).map(|i| self.get(i, j)).collect()
    }
}

/// Fills the cumulative matrix with cumulative first row and column.
pub fn cost_matrix(s: &[f64], q: &[f64]) -> CostMatrix {
    let (n, m) = (s.len(), q.len());
    let mut cells = vec![0.0; n * m];
    let mut acc = 0.0;
    for (j, &qj) in q.iter().enumerate() {
        acc += local_distance(s[0], qj);
        cells[j] = acc;
    }
    for i in 1..n {
        let (done, rest) = cells.split_at_mut(i * m);
        let prev = &done[(i - 1) * m..];
        let row = &mut rest[..m];
        let si = s[i];
        row[0] = prev[0] + local_distance(si, q[0]);
        for j in 1..m {
            let best = min3(prev[j - 1], prev[j], row[j - 1]);
            row[j] = local_distance(si, q[j]) + best;
        }
    }
    CostMatrix { n, m, cells }
}

/// Walks from `(n, m)` to `(1, 1)` taking the cheapest predecessor.
/// Ties prefer the diagonal, then `(i-1, j)`, then `(i, j-1)`.
pub fn backtrack(d: &CostMatrix) -> WarpingPath {
    let (mut i, mut j) = (d.n, d.m);
    let mut steps = Vec::with_capacity(d.n + d.m);
    steps.push((i, j));
    while (i, j) != (1, 1) {
        (i, j) = if i == 1 {
            (1, j - 1)
        } else if j == 1 {
            (i - 1, 1)
        } else {
            let diag = d.get(i - 1, j - 1);
            let up = d.get(i - 1, j);
            let left = d.get(i, j - 1);
            if diag <= up && diag <= left {
                (i - 1, j - 1)
            } else if up <= left {
                (i - 1, j)
            } else {
                (i, j - 1)
            }
        };
        steps.push((i, j));
    }
    steps.reverse();
    WarpingPath::new(steps)
}

pub fn dtw_full(s: &TimeSeries, q: &TimeSeries) -> Result<AlignmentResult> {
    dtw_full_with_limit(s, q, DEFAULT_DENSE_LIMIT)
}

/// Like [`dtw_full`] but refuses matrices larger than `limit` cells.
pub fn dtw_full_with_limit(
    s: &TimeSeries,
    q: &TimeSeries,
    limit: usize,
) -> Result<AlignmentResult> {
    let start = Instant::now();
    let cells = s.len().saturating_mul(q.len());
    if cells > limit {
        return Err(Error::DenseBudgetExceeded { cells, limit });
    }
    let d = cost_matrix(s.values(), q.values());
    let path = backtrack(&d);
    let raw_cost = d.get(d.n, d.m);
    Ok(AlignmentResult::new(
        path,
        raw_cost,
        cells,
        start.elapsed(),
        Params::new(),
    ))
}
