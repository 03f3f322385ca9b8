//! Inputs shared by the criterion benches.

use sparsedtw_core::harness::Algorithm;
use sparsedtw_core::{generate_pair, BandSpec, SyntheticSpec, TimeSeries};

/// Seeded synthetic pair. Panics on invalid parameters since callers pass constants.
pub fn pair(length: usize, rho: f64, seed: u64) -> (TimeSeries, TimeSeries) {
    generate_pair(&SyntheticSpec::new(length, rho, seed)).expect("valid synthetic spec")
}

/// The four aligners at their usual settings, with a band 5% of `length` wide.
pub fn lineup(length: usize) -> Vec<Algorithm> {
    vec![
        Algorithm::Full,
        Algorithm::Band(BandSpec::new((length / 20).max(1))),
        Algorithm::Dc,
        Algorithm::Sparse { res: 0.5 },
    ]
}
