//! Dynamic time warping: an exact full-matrix aligner, a Sakoe-Chiba banded
//! aligner, a linear-space divide-and-conquer aligner, and a sparse aligner
//! that opens only cells whose quantized samples fall in a shared bin.
//!
//! All externally visible indices are 1-based.

pub mod band;
pub mod dc;
pub mod error;
pub mod full;
pub mod harness;
pub mod io;
pub mod series;
pub mod sparse;
pub mod synth;

pub use band::{dtw_band, BandSpec};
pub use dc::{dc_align, dc_align_with, DcAlignment, DcOptions, Midpoint, SplitPoint};
pub use error::{Error, Result};
pub use full::{dtw_full, dtw_full_with_limit};
pub use series::{
    local_distance, normalized_distance, quantize, validate_path, AlignmentResult, PathViolation,
    QuantizedSeries, TimeSeries, WarpingPath,
};
pub use sparse::{sparse_dtw, BinSet, SparseMatrix, DEFAULT_RESOLUTION};
pub use synth::{generate_pair, pearson, SyntheticSpec};
