use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use sparsedtw_core::harness::{
    run_benchmark, synthetic_grid, write_csv, Algorithm, BenchConfig, SeriesPair,
    DEFAULT_DENSE_BUDGET,
};
use sparsedtw_core::{BandSpec, DEFAULT_RESOLUTION};

use crate::exit::{self, usage};
use crate::input::{load_one, parse_width, Format};

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Series lengths of the synthetic grid.
    #[arg(long, value_delimiter = ',')]
    pub lengths: Vec<usize>,
    /// Target correlations of the synthetic grid.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub rhos: Vec<f64>,
    /// Seeds per grid point; seeds run from 0.
    #[arg(long, default_value_t = 1)]
    pub seeds: u64,
    #[arg(long, default_value_t = 3)]
    pub repeats: usize,
    /// Algorithms to run: full, band, dc, sparse.
    #[arg(long, value_delimiter = ',', default_value = "full,sparse")]
    pub algos: Vec<String>,
    /// Resolutions for the sparse aligner.
    #[arg(long, value_delimiter = ',', default_values_t = [DEFAULT_RESOLUTION])]
    pub res: Vec<f64>,
    /// Band widths; required when `band` is selected.
    #[arg(long, value_delimiter = ',', value_parser = parse_width)]
    pub widths: Vec<BandSpec>,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_DENSE_BUDGET)]
    pub dense_budget: usize,
    /// Run sweep cells in parallel.
    #[arg(long)]
    pub parallel: bool,
    /// Benchmark one supplied pair instead of the synthetic grid.
    #[arg(long, num_args = 2, value_names = ["A", "B"], conflicts_with_all = ["lengths", "rhos"])]
    pub pair: Option<Vec<PathBuf>>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

fn algorithms(args: &BenchArgs) -> Result<Vec<Algorithm>> {
    let mut out = Vec::new();
    for name in &args.algos {
        match name.trim() {
            "full" => out.push(Algorithm::Full),
            "dc" => out.push(Algorithm::Dc),
            "sparse" => out.extend(args.res.iter().map(|&res| Algorithm::Sparse { res })),
            "band" if args.widths.is_empty() => {
                return Err(usage("--algos band requires --widths"));
            }
            "band" => out.extend(args.widths.iter().map(|&w| Algorithm::Band(w))),
            other => return Err(usage(format!("unknown algorithm {other:?}"))),
        }
    }
    if out.is_empty() {
        return Err(usage("no algorithms selected"));
    }
    Ok(out)
}

fn pairs(args: &BenchArgs) -> Result<Vec<SeriesPair>> {
    if let Some(files) = &args.pair {
        let s = load_one(&files[0], args.format)?;
        let q = load_one(&files[1], args.format)?;
        let label = format!("{}~{}", s.id(), q.id());
        return Ok(vec![SeriesPair::new(label, s, q)]);
    }
    if args.lengths.is_empty() || args.rhos.is_empty() || args.seeds == 0 {
        return Err(usage(
            "empty sweep grid: give --lengths, --rhos and --seeds >= 1, or --pair",
        ));
    }
    let seeds: Vec<u64> = (0..args.seeds).collect();
    Ok(synthetic_grid(&args.lengths, &args.rhos, &seeds)?)
}

pub fn run(args: BenchArgs) -> Result<u8> {
    if args.repeats == 0 {
        return Err(usage("--repeats must be at least 1"));
    }
    let algos = algorithms(&args)?;
    let pairs = pairs(&args)?;
    let cfg = BenchConfig {
        repeats: args.repeats,
        dense_budget: args.dense_budget,
        parallel: args.parallel,
    };
    let records = run_benchmark(&pairs, &algos, &cfg)?;

    match &args.out {
        Some(path) => {
            let file =
                File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = BufWriter::new(file);
            write_csv(&records, &mut w)?;
            w.flush()
                .with_context(|| format!("writing {}", path.display()))?;
        }
        None => write_csv(&records, io::stdout().lock())?,
    }
    let failed = records.iter().filter(|r| !r.succeeded()).count();
    if failed > 0 {
        eprintln!("{failed} of {} runs failed", records.len());
    }
    Ok(if failed == records.len() {
        exit::ALGORITHM
    } else {
        exit::OK
    })
}
