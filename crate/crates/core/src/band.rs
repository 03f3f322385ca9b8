//! Sakoe-Chiba banded DTW.
//!
//! The band is centred on the straight line joining `(1, 1)` and `(n, m)`:
//! a cell is admitted when its row lies within `width` rows of that line,
//! `|(i-1)(m-1) - (j-1)(n-1)| <= width * (m-1)`, evaluated in exact integer
//! arithmetic. Both corners are therefore always in the band.

use std::ops::RangeInclusive;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::series::{local_distance, min3, AlignmentResult, Params, TimeSeries, WarpingPath};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BandSpec {
    pub width: usize,
}

impl BandSpec {
    pub fn new(width: usize) -> Self {
        Self { width }
    }

    /// A band wide enough to admit every cell.
    pub fn unbounded() -> Self {
        Self { width: usize::MAX }
    }

    pub fn is_unbounded(&self) -> bool {
        self.width == usize::MAX
    }

    /// Rows of column `j` (1-based) admitted in an `n x m` matrix.
    pub fn rows(&self, j: usize, n: usize, m: usize) -> RangeInclusive<usize> {
        if m == 1 {
            return 1..=n;
        }
        let den = (m - 1) as i128;
        let centre = ((j - 1) as i128) * ((n - 1) as i128);
        let slack = (self.width as i128).saturating_mul(den);
        let lo = (centre - slack).max(0);
        let hi = centre.saturating_add(slack);
        // ceil / floor of the row offsets
        let lo = (lo + den - 1) / den;
        let hi = (hi / den).min((n - 1) as i128);
        (lo as usize + 1)..=(hi as usize + 1)
    }

    pub fn contains(&self, i: usize, j: usize, n: usize, m: usize) -> bool {
        self.rows(j, n, m).contains(&i)
    }
}

/// Column-major banded cumulative matrix.
struct BandMatrix {
    n: usize,
    lo: Vec<usize>,
    hi: Vec<usize>,
    offset: Vec<usize>,
    cells: Vec<f64>,
}

impl BandMatrix {
    fn layout(band: BandSpec, n: usize, m: usize) -> Self {
        let mut lo = Vec::with_capacity(m);
        let mut hi = Vec::with_capacity(m);
        let mut offset = Vec::with_capacity(m + 1);
        let mut total = 0;
        for j in 1..=m {
            let r = band.rows(j, n, m);
            offset.push(total);
            total += r.end() + 1 - r.start();
            lo.push(*r.start());
            hi.push(*r.end());
        }
        offset.push(total);
        Self {
            n,
            lo,
            hi,
            offset,
            cells: vec![f64::INFINITY; total],
        }
    }

    fn get(&self, i: usize, j: usize) -> f64 {
        if i == 0 || j == 0 || i > self.n || j > self.lo.len() {
            return f64::INFINITY;
        }
        let c = j - 1;
        if i < self.lo[c] || i > self.hi[c] {
            return f64::INFINITY;
        }
        self.cells[self.offset[c] + i - self.lo[c]]
    }

    fn len(&self) -> usize {
        self.cells.len()
    }
}

fn fill(s: &[f64], q: &[f64], band: BandSpec) -> BandMatrix {
    let n = s.len();
    let mut d = BandMatrix::layout(band, n, q.len());
    for (c, &qj) in q.iter().enumerate() {
        let j = c + 1;
        for i in d.lo[c]..=d.hi[c] {
            let best = if (i, j) == (1, 1) {
                0.0
            } else {
                let up = if i > d.lo[c] {
                    d.cells[d.offset[c] + i - 1 - d.lo[c]]
                } else {
                    f64::INFINITY
                };
                min3(d.get(i - 1, j - 1), up, d.get(i, j - 1))
            };
            d.cells[d.offset[c] + i - d.lo[c]] = local_distance(s[i - 1], qj) + best;
        }
    }
    d
}

fn connected(n: usize, m: usize, band: BandSpec) -> bool {
    // Band reachability is geometric, so any series of the right lengths will do.
    let zeros_s = vec![0.0; n];
    let zeros_q = vec![0.0; m];
    fill(&zeros_s, &zeros_q, band).get(n, m).is_finite()
}

/// Smallest width whose band connects `(1, 1)` to `(n, m)`.
pub fn min_connecting_width(n: usize, m: usize) -> usize {
    let (mut lo, mut hi) = (0, n.max(m));
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if connected(n, m, BandSpec::new(mid)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

fn backtrack(d: &BandMatrix, m: usize) -> WarpingPath {
    let (mut i, mut j) = (d.n, m);
    let mut steps = Vec::with_capacity(d.n + m);
    steps.push((i, j));
    while (i, j) != (1, 1) {
        let diag = d.get(i - 1, j - 1);
        let up = d.get(i - 1, j);
        let left = d.get(i, j - 1);
        (i, j) = if diag <= up && diag <= left {
            (i - 1, j - 1)
        } else if up <= left {
            (i - 1, j)
        } else {
            (i, j - 1)
        };
        steps.push((i, j));
    }
    steps.reverse();
    WarpingPath::new(steps)
}

pub fn dtw_band(s: &TimeSeries, q: &TimeSeries, band: BandSpec) -> Result<AlignmentResult> {
    let start = Instant::now();
    let (n, m) = (s.len(), q.len());
    let d = fill(s.values(), q.values(), band);
    let raw_cost = d.get(n, m);
    if !raw_cost.is_finite() {
        return Err(Error::BandDisconnected {
            width: band.width,
            min_width: min_connecting_width(n, m),
            n,
            m,
        });
    }
    let path = backtrack(&d, m);
    let mut params = Params::new();
    params.insert(
        "width".into(),
        if band.is_unbounded() {
            "inf".into()
        } else {
            band.width.to_string()
        },
    );
    Ok(AlignmentResult::new(
        path,
        raw_cost,
        d.len(),
        start.elapsed(),
        params,
    ))
}
