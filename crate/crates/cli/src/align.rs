use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, ValueEnum};
use serde::Serialize;
use sparsedtw_core::sparse::sparse_dtw_with_matrix;
use sparsedtw_core::{
    dc_align_with, dtw_band, dtw_full, AlignmentResult, BandSpec, DcOptions, Midpoint, TimeSeries,
    DEFAULT_RESOLUTION,
};

use crate::exit::{self, usage};
use crate::input::{load_one, parse_width, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Full,
    Band,
    Dc,
    Sparse,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
pub enum MidpointArg {
    #[default]
    Ceil,
    Floor,
}

#[derive(Debug, Args)]
pub struct AlignArgs {
    /// First series file.
    pub series_a: PathBuf,
    /// Second series file.
    pub series_b: PathBuf,
    #[arg(long, value_enum)]
    pub algo: Algo,
    /// Bin width for the sparse aligner, in (0, 1].
    #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
    pub res: f64,
    /// Band width for the banded aligner: an integer or `inf`.
    #[arg(long, value_parser = parse_width)]
    pub width: Option<BandSpec>,
    /// Middle-column rule for divide and conquer.
    #[arg(long, value_enum, default_value_t)]
    pub midpoint: MidpointArg,
    /// Input format of both files.
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Include the sparse matrix dump (sparse only).
    #[arg(long)]
    pub dump_sm: bool,
    /// Indent the JSON output.
    #[arg(long)]
    pub pretty: bool,
}

#[derive(Debug, Serialize)]
struct AlignOutput {
    algorithm: &'static str,
    params: BTreeMap<String, String>,
    n: usize,
    m: usize,
    raw_cost: f64,
    normalized_distance: f64,
    path: Vec<[usize; 2]>,
    #[serde(rename = "path_K")]
    path_k: usize,
    open_cells: usize,
    elapsed_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    dump: Option<String>,
}

fn algo_name(algo: Algo) -> &'static str {
    match algo {
        Algo::Full => "full",
        Algo::Band => "band",
        Algo::Dc => "dc",
        Algo::Sparse => "sparse",
    }
}

pub fn run(args: AlignArgs) -> Result<u8> {
    if args.dump_sm && args.algo != Algo::Sparse {
        return Err(usage("--dump-sm applies only to --algo sparse"));
    }
    if args.algo == Algo::Band && args.width.is_none() {
        return Err(usage("--algo band requires --width"));
    }
    let s = load_one(&args.series_a, args.format)?;
    let q = load_one(&args.series_b, args.format)?;
    let (result, dump) = align(&args, &s, &q)?;
    let out = AlignOutput {
        algorithm: algo_name(args.algo),
        params: result.params.clone(),
        n: s.len(),
        m: q.len(),
        raw_cost: result.raw_cost,
        normalized_distance: result.normalized_distance,
        path: result.path.steps().iter().map(|&(i, j)| [i, j]).collect(),
        path_k: result.path_len(),
        open_cells: result.computed_cells,
        elapsed_ms: result.elapsed.as_secs_f64() * 1e3,
        dump,
    };
    let text = if args.pretty {
        serde_json::to_string_pretty(&out)?
    } else {
        serde_json::to_string(&out)?
    };
    exit::emit(&text)?;
    Ok(exit::OK)
}

fn align(
    args: &AlignArgs,
    s: &TimeSeries,
    q: &TimeSeries,
) -> Result<(AlignmentResult, Option<String>)> {
    let result = match args.algo {
        Algo::Full => dtw_full(s, q)?,
        Algo::Band => dtw_band(s, q, args.width.expect("checked above"))?,
        Algo::Dc => {
            let midpoint = match args.midpoint {
                MidpointArg::Ceil => Midpoint::Ceil,
                MidpointArg::Floor => Midpoint::Floor,
            };
            let opts = DcOptions {
                midpoint,
                ..DcOptions::default()
            };
            let mut r = dc_align_with(s, q, opts)?.result;
            let name = if midpoint == Midpoint::Ceil {
                "ceil"
            } else {
                "floor"
            };
            r.params.insert("midpoint".into(), name.into());
            r
        }
        Algo::Sparse => {
            let (r, sm) = sparse_dtw_with_matrix(s, q, args.res)?;
            if args.dump_sm {
                let mut buf = Vec::new();
                sm.dump(&mut buf)?;
                return Ok((r, Some(String::from_utf8(buf)?)));
            }
            r
        }
    };
    Ok((result, None))
}
