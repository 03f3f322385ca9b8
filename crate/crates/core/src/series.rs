//! Domain types shared by every aligner: series, quantized series, warping
//! paths and alignment results.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Duration;

use serde::Serialize;

use crate::error::{Error, Result};

/// A labelled, non-empty sequence of finite scalar samples.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimeSeries {
    id: String,
    values: Vec<f64>,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        Self::with_id("", values)
    }

    pub fn with_id(id: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySeries);
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(Self {
            id: id.into(),
            values,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; kept for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn reversed(&self) -> Self {
        let mut values = self.values.clone();
        values.reverse();
        Self {
            id: self.id.clone(),
            values,
        }
    }
}

impl AsRef<[f64]> for TimeSeries {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

/// Squared difference between two samples.
#[inline]
pub fn local_distance(a: f64, b: f64) -> f64 {
    let d = a - b;
    d * d
}

/// Minimum of three costs, none of which is NaN. Compiles to plain `minsd`
/// where `f64::min` would also handle NaN.
#[inline(always)]
pub(crate) fn min3(a: f64, b: f64, c: f64) -> f64 {
    let ab = if b < a { b } else { a };
    if c < ab {
        c
    } else {
        ab
    }
}

/// A series rescaled into `[0, 1]` by its own minimum and maximum.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantizedSeries {
    pub values: Vec<f64>,
    pub source_min: f64,
    pub source_max: f64,
    /// Set when the source was constant; every value is then `0`.
    pub degenerate: bool,
}

pub fn quantize(series: &TimeSeries) -> QuantizedSeries {
    let values = series.values();
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    let span = hi - lo;
    if span == 0.0 {
        return QuantizedSeries {
            values: vec![0.0; values.len()],
            source_min: lo,
            source_max: hi,
            degenerate: true,
        };
    }
    QuantizedSeries {
        // clamp guards the last ulp when span is tiny
        values: values
            .iter()
            .map(|&v| ((v - lo) / span).clamp(0.0, 1.0))
            .collect(),
        source_min: lo,
        source_max: hi,
        degenerate: false,
    }
}

/// `sqrt(raw_cost) / K`.
pub fn normalized_distance(raw_cost: f64, path_len: usize) -> f64 {
    debug_assert!(path_len >= 1);
    raw_cost.sqrt() / path_len as f64
}

/// Ordered cells `(i, j)` of a warping path, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
#[serde(transparent)]
pub struct WarpingPath {
    steps: Vec<(usize, usize)>,
}

impl WarpingPath {
    pub fn new(steps: Vec<(usize, usize)>) -> Self {
        Self { steps }
    }

    pub fn steps(&self) -> &[(usize, usize)] {
        &self.steps
    }

    /// Path length, the normalising factor `K`.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Sum of local distances along the path.
    pub fn cost(&self, s: &[f64], q: &[f64]) -> f64 {
        self.steps
            .iter()
            .map(|&(i, j)| local_distance(s[i - 1], q[j - 1]))
            .sum()
    }
}

impl From<Vec<(usize, usize)>> for WarpingPath {
    fn from(steps: Vec<(usize, usize)>) -> Self {
        Self::new(steps)
    }
}

/// The first constraint a path breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathViolation {
    Empty,
    OutOfRange { step: usize },
    Monotonicity { step: usize },
    Continuity { step: usize },
    Boundary,
}

impl fmt::Display for PathViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Empty => write!(f, "path is empty"),
            Self::OutOfRange { step } => write!(f, "step {step} lies outside the matrix"),
            Self::Monotonicity { step } => write!(f, "step {step} moves backwards"),
            Self::Continuity { step } => write!(f, "step {step} skips a cell or repeats one"),
            Self::Boundary => write!(f, "path does not run from (1,1) to (n,m)"),
        }
    }
}

impl std::error::Error for PathViolation {}

/// Checks monotonicity, continuity and boundary for an `n x m` matrix.
/// Step indices in the verdict are 1-based positions within the path.
pub fn validate_path(
    path: &WarpingPath,
    n: usize,
    m: usize,
) -> std::result::Result<(), PathViolation> {
    let steps = path.steps();
    if steps.is_empty() {
        return Err(PathViolation::Empty);
    }
    for (k, &(i, j)) in steps.iter().enumerate() {
        if i == 0 || j == 0 || i > n || j > m {
            return Err(PathViolation::OutOfRange { step: k + 1 });
        }
    }
    for (k, w) in steps.windows(2).enumerate() {
        let ((pi, pj), (ci, cj)) = (w[0], w[1]);
        if ci < pi || cj < pj {
            return Err(PathViolation::Monotonicity { step: k + 2 });
        }
        let (di, dj) = (ci - pi, cj - pj);
        if di > 1 || dj > 1 || (di == 0 && dj == 0) {
            return Err(PathViolation::Continuity { step: k + 2 });
        }
    }
    if steps[0] != (1, 1) || steps[steps.len() - 1] != (n, m) {
        return Err(PathViolation::Boundary);
    }
    Ok(())
}

/// Free-form algorithm parameters, ordered by key.
pub type Params = BTreeMap<String, String>;

/// Outcome of one alignment.
#[derive(Debug, Clone)]
pub struct AlignmentResult {
    pub path: WarpingPath,
    /// Cumulative cost at `(n, m)`.
    pub raw_cost: f64,
    pub normalized_distance: f64,
    /// DP cells evaluated. For the sparse aligner this is the final open-cell count.
    pub computed_cells: usize,
    pub elapsed: Duration,
    pub params: Params,
}

impl AlignmentResult {
    pub(crate) fn new(
        path: WarpingPath,
        raw_cost: f64,
        computed_cells: usize,
        elapsed: Duration,
        params: Params,
    ) -> Self {
        let normalized_distance = normalized_distance(raw_cost, path.len());
        Self {
            path,
            raw_cost,
            normalized_distance,
            computed_cells,
            elapsed,
            params,
        }
    }

    /// Path length `K`.
    pub fn path_len(&self) -> usize {
        self.path.len()
    }
}
