//! Divide-and-conquer alignment in linear space.
//!
//! The matrix is split at the middle column of `q`; the split row is the one
//! minimising forward cost-so-far plus backward cost-to-go at that column, and
//! both halves are solved recursively until one side has at most two samples.
//! Both halves share the split cell. The two column costs each count the split
//! cell's own local distance, so the chosen split is not always on an optimal
//! path and the result can be worse than full DTW.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::full::{backtrack, cost_matrix};
use crate::series::{local_distance, min3, AlignmentResult, Params, TimeSeries, WarpingPath};

/// How the middle column of `q` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Midpoint {
    /// `ceil(m / 2)`; always terminates.
    #[default]
    Ceil,
    /// `floor(m / 2)`; can re-split the same subproblem forever.
    Floor,
}

#[derive(Debug, Clone, Copy)]
pub struct DcOptions {
    pub midpoint: Midpoint,
    pub max_depth: usize,
}

impl Default for DcOptions {
    fn default() -> Self {
        Self {
            midpoint: Midpoint::Ceil,
            max_depth: 256,
        }
    }
}

/// A recorded split cell, 1-based in the full matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitPoint {
    pub q_row: usize,
    pub mid_col: usize,
}

/// Alignment plus the divide-and-conquer bookkeeping.
#[derive(Debug, Clone)]
pub struct DcAlignment {
    pub result: AlignmentResult,
    /// Split points in the order they were found (pre-order).
    pub splits: Vec<SplitPoint>,
    /// Largest number of DP cells held at once.
    pub peak_cells: usize,
}

/// Live/peak DP cell accounting.
#[derive(Debug, Default)]
struct Meter {
    live: usize,
    peak: usize,
    computed: usize,
}

impl Meter {
    fn alloc(&mut self, cells: usize) {
        self.live += cells;
        self.peak = self.peak.max(self.live);
    }

    fn free(&mut self, cells: usize) {
        self.live -= cells;
    }
}

fn forward_metered(s: &[f64], q: &[f64], meter: &mut Meter) -> Vec<f64> {
    let n = s.len();
    meter.alloc(2 * n);
    let mut prev = vec![0.0; n];
    let mut cur = vec![0.0; n];
    let mut acc = 0.0;
    for (i, &si) in s.iter().enumerate() {
        acc += local_distance(si, q[0]);
        prev[i] = acc;
    }
    for &qj in &q[1..] {
        cur[0] = prev[0] + local_distance(s[0], qj);
        for i in 1..n {
            cur[i] = local_distance(s[i], qj) + min3(prev[i - 1], prev[i], cur[i - 1]);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    meter.computed += n * q.len();
    drop(cur);
    meter.free(n);
    prev
}

fn backward_metered(s: &[f64], q: &[f64], meter: &mut Meter) -> Vec<f64> {
    let rs: Vec<f64> = s.iter().rev().copied().collect();
    let rq: Vec<f64> = q.iter().rev().copied().collect();
    let mut g = forward_metered(&rs, &rq, meter);
    g.reverse();
    g
}

/// Last column of the cumulative matrix of `(s, q)`, using two columns of storage.
pub fn forward_space_efficient(s: &[f64], q: &[f64]) -> Vec<f64> {
    forward_metered(s, q, &mut Meter::default())
}

/// Cost-to-go from each row of the first column of `q` to the bottom-right corner.
pub fn backward_space_efficient(s: &[f64], q: &[f64]) -> Vec<f64> {
    backward_metered(s, q, &mut Meter::default())
}

struct Solver<'a> {
    s: &'a [f64],
    q: &'a [f64],
    opts: DcOptions,
    meter: Meter,
    splits: Vec<SplitPoint>,
    steps: Vec<(usize, usize)>,
}

impl Solver<'_> {
    /// Aligns `s[r0..r1]` with `q[c0..c1]` (0-based, half-open), appending to `steps`.
    fn solve(&mut self, r0: usize, r1: usize, c0: usize, c1: usize, depth: usize) -> Result<()> {
        if depth > self.opts.max_depth {
            return Err(Error::RecursionLimit(self.opts.max_depth));
        }
        let s = &self.s[r0..r1];
        let q = &self.q[c0..c1];
        let (n, m) = (s.len(), q.len());
        if n <= 2 || m <= 2 {
            self.meter.alloc(n * m);
            let d = cost_matrix(s, q);
            self.meter.computed += n * m;
            let path = backtrack(&d);
            drop(d);
            self.meter.free(n * m);
            self.append(path.steps().iter().map(|&(i, j)| (i + r0, j + c0)));
            return Ok(());
        }
        let mid = match self.opts.midpoint {
            Midpoint::Ceil => m.div_ceil(2),
            Midpoint::Floor => m / 2,
        };
        let f = forward_metered(s, &q[..mid], &mut self.meter);
        let g = backward_metered(s, &q[mid - 1..], &mut self.meter);
        let mut best = 0;
        for k in 1..n {
            if f[k] + g[k] < f[best] + g[best] {
                best = k;
            }
        }
        self.meter.free(2 * n);
        drop((f, g));
        let row = best + 1;
        self.splits.push(SplitPoint {
            q_row: r0 + row,
            mid_col: c0 + mid,
        });
        self.solve(r0, r0 + row, c0, c0 + mid, depth + 1)?;
        self.solve(r0 + best, r1, c0 + mid - 1, c1, depth + 1)
    }

    /// Appends 1-based steps, dropping the seam cell shared with the previous half.
    fn append(&mut self, steps: impl Iterator<Item = (usize, usize)>) {
        for step in steps {
            if self.steps.last() != Some(&step) {
                self.steps.push(step);
            }
        }
    }
}

pub fn dc_align(s: &TimeSeries, q: &TimeSeries) -> Result<DcAlignment> {
    dc_align_with(s, q, DcOptions::default())
}

pub fn dc_align_with(s: &TimeSeries, q: &TimeSeries, opts: DcOptions) -> Result<DcAlignment> {
    let start = Instant::now();
    let mut solver = Solver {
        s: s.values(),
        q: q.values(),
        opts,
        meter: Meter::default(),
        splits: Vec::new(),
        steps: Vec::with_capacity(s.len() + q.len()),
    };
    solver.solve(0, s.len(), 0, q.len(), 0)?;
    let path = WarpingPath::new(solver.steps);
    let raw_cost = path.cost(s.values(), q.values());
    let mut params = Params::new();
    params.insert(
        "midpoint".into(),
        match opts.midpoint {
            Midpoint::Ceil => "ceil",
            Midpoint::Floor => "floor",
        }
        .into(),
    );
    Ok(DcAlignment {
        result: AlignmentResult::new(
            path,
            raw_cost,
            solver.meter.computed,
            start.elapsed(),
            params,
        ),
        splits: solver.splits,
        peak_cells: solver.meter.peak,
    })
}
