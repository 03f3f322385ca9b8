use std::path::Path;
use std::str::FromStr;

use anyhow::Result;
use clap::ValueEnum;
use sparsedtw_core::io::{load_series, SeriesFormat};
use sparsedtw_core::{BandSpec, TimeSeries};

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
pub enum Format {
    #[default]
    Auto,
    Plain,
    Csv,
}

impl From<Format> for SeriesFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Auto => SeriesFormat::Auto,
            Format::Plain => SeriesFormat::Plain,
            Format::Csv => SeriesFormat::Csv,
        }
    }
}

/// Loads a file that must hold exactly one series.
pub fn load_one(path: &Path, format: Format) -> Result<TimeSeries> {
    let mut all = load_series(path, format.into())?;
    if all.len() != 1 {
        return Err(crate::exit::data(format!(
            "{} holds {} series, expected exactly one",
            path.display(),
            all.len()
        )));
    }
    Ok(all.remove(0))
}

/// Parses a band width: a non-negative integer or `inf`.
pub fn parse_width(s: &str) -> std::result::Result<BandSpec, String> {
    if s.eq_ignore_ascii_case("inf") {
        return Ok(BandSpec::unbounded());
    }
    usize::from_str(s)
        .map(BandSpec::new)
        .map_err(|_| format!("expected a non-negative integer or \"inf\", got {s:?}"))
}
