//! Sparse dynamic time warping.
//!
//! Both series are quantized into `[0, 1]` and bucketed into overlapping bins
//! of width `res`. Only cells whose two samples share a bin are opened. The
//! cumulative pass visits open cells in column-major linear order and, when a
//! reachable cell has no open upper neighbour, opens all of them so that a
//! corner-to-corner path always exists. The path is recovered by walking back
//! through open cells only.
//!
//! Linear indices are column-major and 1-based: `index(i, j) = (j - 1) * n + i`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io;
use std::ops::Range;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::series::{
    local_distance, min3, quantize, AlignmentResult, Params, QuantizedSeries, TimeSeries,
    WarpingPath,
};

/// Bin width used when none is given.
pub const DEFAULT_RESOLUTION: f64 = 0.5;

/// Overlapping quantization bins: width `res`, stride `res / 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinSet {
    res: f64,
    bins: Vec<(f64, f64)>,
}

impl BinSet {
    pub fn resolution(&self) -> f64 {
        self.res
    }

    /// `(lower, upper)` bounds, both inclusive.
    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bins
    }

    pub fn len(&self) -> usize {
        self.bins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }

    /// Indices of the bins whose closed interval holds `v`. Always contiguous.
    pub fn containing(&self, v: f64) -> Range<usize> {
        let first = self.bins.partition_point(|&(_, hi)| hi < v);
        let end = self.bins.partition_point(|&(lo, _)| lo <= v);
        first..end.max(first)
    }
}

pub fn build_bins(res: f64) -> Result<BinSet> {
    if !(res > 0.0 && res <= 1.0) {
        return Err(Error::InvalidResolution(res));
    }
    let stride = res / 2.0;
    // lower bounds k * stride for as long as they stay <= 1 - stride
    let count = ((1.0 - stride) / stride + 1e-9).floor() as usize + 1;
    let bins = (0..count)
        .map(|k| {
            let lo = k as f64 * stride;
            (lo, lo + res)
        })
        .collect();
    Ok(BinSet { res, bins })
}

/// One open cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellRecord {
    pub local_cost: f64,
    /// `+inf` until the forward pass reaches the cell, or when it is unreachable.
    pub accumulated_cost: f64,
}

/// A run of consecutive open rows in one column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Run {
    /// First 0-based row.
    start: u32,
    len: u32,
    /// Storage slot of the first cell.
    slot: usize,
}

impl Run {
    fn end(&self) -> u32 {
        self.start + self.len
    }
}

/// Open cells of an `n x m` warping matrix, stored column by column as runs
/// of consecutive rows, so storage order is ascending linear index. Local
/// costs are recomputed from the two series on demand.
#[derive(Debug, Clone)]
pub struct SparseMatrix {
    s: Vec<f64>,
    q: Vec<f64>,
    col_ptr: Vec<usize>,
    runs: Vec<Run>,
    cells: usize,
    /// Accumulated cost per storage slot; empty until the forward pass has run.
    acc: Vec<f64>,
}

impl SparseMatrix {
    fn empty(s: &[f64], q: &[f64], cap: usize, with_acc: bool) -> Self {
        let mut col_ptr = Vec::with_capacity(q.len() + 1);
        col_ptr.push(0);
        Self {
            s: s.to_vec(),
            q: q.to_vec(),
            col_ptr,
            runs: Vec::new(),
            cells: 0,
            acc: if with_acc {
                Vec::with_capacity(cap)
            } else {
                Vec::new()
            },
        }
    }

    /// Appends `len` rows from `start` to the open column, coalescing with
    /// the previous run when adjacent.
    fn push_run(&mut self, start: u32, len: u32) {
        let col_first = *self.col_ptr.last().expect("col_ptr starts non-empty");
        if self.runs.len() > col_first {
            let last = self.runs.last_mut().expect("checked non-empty");
            if last.end() == start {
                last.len += len;
                self.cells += len as usize;
                return;
            }
        }
        self.runs.push(Run {
            start,
            len,
            slot: self.cells,
        });
        self.cells += len as usize;
    }

    fn close_column(&mut self) {
        self.col_ptr.push(self.runs.len());
    }

    fn column_runs(&self, col: usize) -> &[Run] {
        &self.runs[self.col_ptr[col]..self.col_ptr[col + 1]]
    }

    /// Storage slot of 0-based `(row, col)`.
    fn slot(&self, row: usize, col: usize) -> Option<usize> {
        let runs = self.column_runs(col);
        let k = runs.partition_point(|r| r.start as usize <= row);
        let run = runs.get(k.checked_sub(1)?)?;
        ((row as u32) < run.end()).then(|| run.slot + row - run.start as usize)
    }

    fn acc_at(&self, slot: usize) -> f64 {
        self.acc.get(slot).copied().unwrap_or(f64::INFINITY)
    }

    fn record(&self, row: usize, col: usize, slot: usize) -> CellRecord {
        CellRecord {
            local_cost: local_distance(self.s[row], self.q[col]),
            accumulated_cost: self.acc_at(slot),
        }
    }

    pub fn rows(&self) -> usize {
        self.s.len()
    }

    pub fn cols(&self) -> usize {
        self.q.len()
    }

    pub fn open_cells(&self) -> usize {
        self.cells
    }

    pub fn linear_index(&self, i: usize, j: usize) -> usize {
        (j - 1) * self.rows() + i
    }

    /// 1-based `(i, j)` of a linear index.
    pub fn cell_of(&self, c: usize) -> (usize, usize) {
        let n = self.rows();
        ((c - 1) % n + 1, (c - 1) / n + 1)
    }

    /// Record of the cell at linear index `c`, `None` when blocked.
    pub fn get(&self, c: usize) -> Option<CellRecord> {
        if c == 0 || c > self.rows() * self.cols() {
            return None;
        }
        let (i, j) = self.cell_of(c);
        self.slot(i - 1, j - 1)
            .map(|k| self.record(i - 1, j - 1, k))
    }

    pub fn is_open(&self, c: usize) -> bool {
        self.get(c).is_some()
    }

    /// Accumulated cost at the bottom-right corner.
    pub fn corner_cost(&self) -> f64 {
        self.acc.last().copied().unwrap_or(f64::INFINITY)
    }

    /// Open cells in ascending linear index: `(index, record)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, CellRecord)> + '_ {
        let n = self.rows();
        (0..self.cols()).flat_map(move |col| {
            self.column_runs(col).iter().flat_map(move |run| {
                (0..run.len as usize).map(move |k| {
                    let row = run.start as usize + k;
                    (col * n + row + 1, self.record(row, col, run.slot + k))
                })
            })
        })
    }

    /// Writes `index,i,j,local,accumulated,open` lines for every open cell.
    /// A zero local cost is written as `-1` and an unset accumulated cost as `inf`.
    pub fn dump<W: io::Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "index,i,j,local,accumulated,open")?;
        let mut line = String::new();
        for (c, rec) in self.iter() {
            let (i, j) = self.cell_of(c);
            line.clear();
            let _ = write!(line, "{c},{i},{j},");
            if rec.local_cost == 0.0 {
                line.push_str("-1");
            } else {
                let _ = write!(line, "{}", rec.local_cost);
            }
            if rec.accumulated_cost.is_finite() {
                let _ = write!(line, ",{},1", rec.accumulated_cost);
            } else {
                line.push_str(",inf,1");
            }
            writeln!(out, "{line}")?;
        }
        Ok(())
    }
}

/// In-range lower neighbours `{c-1, c-n, c-n-1}` that do not wrap a column.
pub fn lower_neighbors(c: usize, n: usize) -> Vec<usize> {
    let first_row = (c - 1).is_multiple_of(n);
    let mut out = Vec::with_capacity(3);
    if c > n {
        if !first_row {
            out.push(c - n - 1);
        }
        out.push(c - n);
    }
    if !first_row {
        out.push(c - 1);
    }
    out
}

/// In-range upper neighbours `{c+1, c+n, c+n+1}` that do not wrap a column.
pub fn upper_neighbors(c: usize, n: usize, m: usize) -> Vec<usize> {
    let last_row = c.is_multiple_of(n);
    let total = n * m;
    let mut out = Vec::with_capacity(3);
    if !last_row {
        out.push(c + 1);
    }
    if c + n <= total {
        out.push(c + n);
        if !last_row {
            out.push(c + n + 1);
        }
    }
    out
}

/// Opens every cell whose quantized samples share a bin, plus both corners.
/// Accumulated costs are left unset.
pub fn populate(
    sq: &QuantizedSeries,
    qq: &QuantizedSeries,
    bins: &BinSet,
    s: &TimeSeries,
    q: &TimeSeries,
) -> SparseMatrix {
    let (n, m) = (s.len(), q.len());
    assert!(
        n <= u32::MAX as usize,
        "series too long for sparse indexing"
    );
    debug_assert_eq!(sq.values.len(), n);
    debug_assert_eq!(qq.values.len(), m);

    // Bins sharing a value overlap, so the bins holding q'_j cover one closed
    // interval. Columns with the same bin range share their row runs.
    let bounds = bins.bounds();
    let mut cache: HashMap<(usize, usize), Vec<(u32, u32)>> = HashMap::new();
    let mut sm = SparseMatrix::empty(s.values(), q.values(), 0, false);
    let mut forced = Vec::new();
    for (j, &v) in qq.values.iter().enumerate() {
        let held = bins.containing(v);
        let runs = cache.entry((held.start, held.end)).or_insert_with(|| {
            if held.is_empty() {
                return Vec::new();
            }
            let (lo, hi) = (bounds[held.start].0, bounds[held.end - 1].1);
            row_runs(sq.values.iter().map(|&x| lo <= x && x <= hi))
        });
        let extra = match (j == 0, j == m - 1) {
            (true, true) if n > 1 => vec![0, n as u32 - 1],
            (true, _) => vec![0],
            (_, true) => vec![n as u32 - 1],
            _ => Vec::new(),
        };
        if extra.is_empty() {
            for &(start, len) in runs.iter() {
                sm.push_run(start, len);
            }
        } else {
            forced.clear();
            forced.extend(runs.iter().flat_map(|&(start, len)| start..start + len));
            forced.extend(extra);
            forced.sort_unstable();
            forced.dedup();
            for (start, len) in row_runs_sorted(&forced) {
                sm.push_run(start, len);
            }
        }
        sm.close_column();
    }
    sm
}

/// Maximal runs of `true` as `(start, len)`.
fn row_runs(mask: impl Iterator<Item = bool>) -> Vec<(u32, u32)> {
    let mut out: Vec<(u32, u32)> = Vec::new();
    let mut open = false;
    for (i, hit) in mask.enumerate() {
        match (hit, open) {
            (true, true) => out.last_mut().expect("open run").1 += 1,
            (true, false) => out.push((i as u32, 1)),
            _ => {}
        }
        open = hit;
    }
    out
}

/// Runs of consecutive values in an ascending, duplicate-free row list.
fn row_runs_sorted(rows: &[u32]) -> Vec<(u32, u32)> {
    let mut out: Vec<(u32, u32)> = Vec::new();
    for &r in rows {
        match out.last_mut() {
            Some((start, len)) if *start + *len == r => *len += 1,
            _ => out.push((r, 1)),
        }
    }
    out
}

/// Computes accumulated costs in ascending linear index, unblocking the upper
/// neighbours of every reachable cell that has none open.
pub fn forward_pass(sm: SparseMatrix, s: &TimeSeries, q: &TimeSeries) -> Result<SparseMatrix> {
    let (n, m) = (s.len(), q.len());
    let (sv, qv) = (s.values(), q.values());
    debug_assert_eq!((sm.rows(), sm.cols()), (n, m));
    let mut out = SparseMatrix::empty(sv, qv, sm.open_cells() + n + m, true);

    // dense scratch columns, reset after use
    let mut prev = vec![f64::INFINITY; n];
    let mut cur = vec![f64::INFINITY; n];
    let mut candidates: Vec<(u32, u32)> = Vec::new();
    let mut pending: Vec<u32> = Vec::new();
    let mut next_pending: Vec<u32> = Vec::new();

    for (j, &qj) in qv.iter().enumerate() {
        candidates.clear();
        merge_rows(sm.column_runs(j), &pending, &mut candidates);
        let next_runs: &[Run] = if j + 1 < m {
            sm.column_runs(j + 1)
        } else {
            &[]
        };
        let has_next = j + 1 < m;
        let mut next_cursor = 0;
        next_pending.clear();

        for (r, &(start, end)) in candidates.iter().enumerate() {
            let (start, end) = (start as usize, end as usize);
            let next_start = candidates.get(r + 1).map_or(usize::MAX, |c| c.0 as usize);
            let mut lo = start;
            if lo == 0 {
                let best = if j == 0 { 0.0 } else { prev[0] };
                cur[0] = local_distance(sv[0], qj) + best;
                lo = 1;
            }
            if lo < end {
                let mut left = cur[lo - 1];
                let (prev_w, cur_w) = (&prev[lo - 1..end], &mut cur[lo..end]);
                for ((p, &x), c) in prev_w.windows(2).zip(&sv[lo..end]).zip(cur_w) {
                    left = local_distance(x, qj) + min3(p[0], p[1], left);
                    *c = left;
                }
            }
            // only the last row of a run can lack an open (i+1, j); follow
            // any rows it unblocks below itself
            let mut last = end - 1;
            loop {
                if !cur[last].is_finite() {
                    break;
                }
                let below = last + 1 < n;
                if below && next_start == last + 1 {
                    break;
                }
                let right_open = has_next && {
                    while next_cursor < next_runs.len()
                        && (next_runs[next_cursor].end() as usize) <= last
                    {
                        next_cursor += 1;
                    }
                    let hit = |row: usize| {
                        next_runs[next_cursor..]
                            .iter()
                            .take(2)
                            .any(|run| run.start as usize <= row && row < run.end() as usize)
                    };
                    hit(last)
                        || (below && hit(last + 1))
                        || next_pending
                            .iter()
                            .rev()
                            .take(2)
                            .any(|&p| p as usize == last || (below && p as usize == last + 1))
                };
                if right_open {
                    break;
                }
                if has_next {
                    if next_pending.last() != Some(&(last as u32)) {
                        next_pending.push(last as u32);
                    }
                    if below {
                        next_pending.push(last as u32 + 1);
                    }
                }
                if !below {
                    break;
                }
                last += 1;
                let best = min3(prev[last - 1], prev[last], cur[last - 1]);
                cur[last] = local_distance(sv[last], qj) + best;
            }
            out.acc.extend_from_slice(&cur[start..=last]);
            out.push_run(start as u32, (last + 1 - start) as u32);
        }
        out.close_column();

        if j > 0 {
            for run in out.column_runs(j - 1) {
                prev[run.start as usize..run.end() as usize].fill(f64::INFINITY);
            }
        }
        std::mem::swap(&mut prev, &mut cur);
        std::mem::swap(&mut pending, &mut next_pending);
    }

    if !out.corner_cost().is_finite() {
        return Err(Error::SparseDisconnected { n, m });
    }
    Ok(out)
}

/// Merges a column's runs with extra ascending rows (disjoint from the runs)
/// into coalesced half-open `(start, end)` row ranges.
fn merge_rows(runs: &[Run], extra: &[u32], out: &mut Vec<(u32, u32)>) {
    let mut push = |start: u32, end: u32| match out.last_mut() {
        Some(last) if last.1 == start => last.1 = end,
        _ => out.push((start, end)),
    };
    let mut e = 0;
    for run in runs {
        while e < extra.len() && extra[e] < run.start {
            push(extra[e], extra[e] + 1);
            e += 1;
        }
        debug_assert!(e >= extra.len() || extra[e] >= run.end());
        push(run.start, run.end());
    }
    for &row in &extra[e..] {
        push(row, row + 1);
    }
}

/// Walks back from `(n, m)` through open cells of least accumulated cost.
/// Ties prefer the diagonal, then `(i-1, j)`, then `(i, j-1)`.
pub fn sparse_backtrack(sm: &SparseMatrix) -> Result<WarpingPath> {
    let acc_at = |row: usize, col: usize| sm.slot(row, col).map_or(f64::INFINITY, |k| sm.acc_at(k));
    let (mut i, mut j) = (sm.rows() - 1, sm.cols() - 1);
    let mut steps = Vec::with_capacity(sm.rows() + sm.cols());
    steps.push((i + 1, j + 1));
    while (i, j) != (0, 0) {
        let diag = if i > 0 && j > 0 {
            acc_at(i - 1, j - 1)
        } else {
            f64::INFINITY
        };
        let up = if i > 0 {
            acc_at(i - 1, j)
        } else {
            f64::INFINITY
        };
        let left = if j > 0 {
            acc_at(i, j - 1)
        } else {
            f64::INFINITY
        };
        if !(diag.is_finite() || up.is_finite() || left.is_finite()) {
            return Err(Error::BrokenPath { i: i + 1, j: j + 1 });
        }
        (i, j) = if diag <= up && diag <= left {
            (i - 1, j - 1)
        } else if up <= left {
            (i - 1, j)
        } else {
            (i, j - 1)
        };
        steps.push((i + 1, j + 1));
    }
    steps.reverse();
    Ok(WarpingPath::new(steps))
}

pub fn sparse_dtw(s: &TimeSeries, q: &TimeSeries, res: f64) -> Result<AlignmentResult> {
    sparse_dtw_with_matrix(s, q, res).map(|(r, _)| r)
}

/// Like [`sparse_dtw`], also returning the final sparse matrix.
pub fn sparse_dtw_with_matrix(
    s: &TimeSeries,
    q: &TimeSeries,
    res: f64,
) -> Result<(AlignmentResult, SparseMatrix)> {
    let start = Instant::now();
    let bins = build_bins(res)?;
    let sq = quantize(s);
    let qq = quantize(q);
    let sm = populate(&sq, &qq, &bins, s, q);
    let sm = forward_pass(sm, s, q)?;
    let path = sparse_backtrack(&sm)?;
    let raw_cost = sm.corner_cost();
    let mut params = Params::new();
    params.insert("res".into(), res.to_string());
    let result = AlignmentResult::new(path, raw_cost, sm.open_cells(), start.elapsed(), params);
    Ok((result, sm))
}
