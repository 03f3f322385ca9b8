use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use serde::Serialize;
use sparsedtw_core::harness::{
    run_benchmark, Algorithm, BenchConfig, BenchRecord, SeriesPair, DEFAULT_DENSE_BUDGET,
};
use sparsedtw_core::{BandSpec, DEFAULT_RESOLUTION};

use crate::exit;
use crate::input::{load_one, parse_width, Format};

#[derive(Debug, Args)]
pub struct CompareArgs {
    pub series_a: PathBuf,
    pub series_b: PathBuf,
    /// Bin width for the sparse aligner.
    #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
    pub res: f64,
    /// Band width; the band row is skipped without it.
    #[arg(long, value_parser = parse_width)]
    pub width: Option<BandSpec>,
    /// Runs per algorithm; elapsed time is their median.
    #[arg(long, default_value_t = 1)]
    pub repeats: usize,
    /// Largest dense matrix, in cells, the full aligner may allocate.
    #[arg(long, default_value_t = DEFAULT_DENSE_BUDGET)]
    pub dense_budget: usize,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Print a JSON array instead of a table.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Serialize)]
struct Row {
    algorithm: String,
    params: String,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    open_cells: Option<usize>,
    #[serde(rename = "path_K")]
    path_k: Option<usize>,
    elapsed_ms: Option<f64>,
    raw_cost: Option<f64>,
    normalized_distance: Option<f64>,
    /// `None` when the oracle was skipped or the run failed.
    optimal: Option<bool>,
}

impl Row {
    fn from_record(r: &BenchRecord) -> Self {
        let o = r.outcome.as_ref();
        Self {
            algorithm: r.algorithm.name().into(),
            params: r.algorithm.params(),
            status: if o.is_some() { "ok" } else { "failed" },
            error: o.is_none().then(|| r.optimal.to_string()),
            open_cells: o.map(|o| o.open_cells),
            path_k: o.map(|o| o.path_k),
            elapsed_ms: o.map(|o| o.elapsed.as_secs_f64() * 1e3),
            raw_cost: o.map(|o| o.raw_cost),
            normalized_distance: o.map(|o| o.normalized_distance),
            optimal: r.is_optimal(),
        }
    }

    fn skipped(algorithm: &str, why: &str) -> Self {
        Self {
            algorithm: algorithm.into(),
            params: String::new(),
            status: "skipped",
            error: Some(why.into()),
            open_cells: None,
            path_k: None,
            elapsed_ms: None,
            raw_cost: None,
            normalized_distance: None,
            optimal: None,
        }
    }
}

pub fn run(args: CompareArgs) -> Result<u8> {
    if args.repeats == 0 {
        return Err(exit::usage("--repeats must be at least 1"));
    }
    let s = load_one(&args.series_a, args.format)?;
    let q = load_one(&args.series_b, args.format)?;
    let pair = SeriesPair::new("compare", s, q);

    let mut algos = vec![Algorithm::Full];
    if let Some(w) = args.width {
        algos.push(Algorithm::Band(w));
    }
    algos.extend([Algorithm::Dc, Algorithm::Sparse { res: args.res }]);
    let cfg = BenchConfig {
        repeats: args.repeats,
        dense_budget: args.dense_budget,
        parallel: false,
    };
    let records = run_benchmark(std::slice::from_ref(&pair), &algos, &cfg)?;

    let mut rows: Vec<Row> = records.iter().map(Row::from_record).collect();
    if args.width.is_none() {
        rows.insert(1, Row::skipped("band", "no --width given"));
    }
    if args.json {
        exit::emit(&serde_json::to_string_pretty(&rows)?)?;
    } else {
        exit::emit(&render_table(&rows, pair.s.len(), pair.q.len()))?;
    }
    let full_ok = records[0].succeeded();
    Ok(if full_ok { exit::OK } else { exit::ALGORITHM })
}

fn render_table(rows: &[Row], n: usize, m: usize) -> String {
    let mut out = format!("n={n} m={m}\n");
    let header = [
        "algorithm",
        "params",
        "open_cells",
        "path_K",
        "elapsed_ms",
        "raw_cost",
        "normalized_distance",
        "optimal",
    ];
    let cells: Vec<[String; 8]> = rows
        .iter()
        .map(|r| {
            let num = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
            let optimal = match (r.status, r.optimal) {
                ("ok", Some(b)) => b.to_string(),
                ("ok", None) => "oracle skipped".into(),
                (status, _) => format!("{status}: {}", r.error.as_deref().unwrap_or("")),
            };
            [
                r.algorithm.clone(),
                r.params.clone(),
                num(r.open_cells),
                num(r.path_k),
                r.elapsed_ms.map_or("-".into(), |v| format!("{v:.3}")),
                r.raw_cost.map_or("-".into(), |v| format!("{v}")),
                r.normalized_distance
                    .map_or("-".into(), |v| format!("{v:.6}")),
                optimal,
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let mut line = |fields: Vec<&str>| {
        let padded: Vec<String> = fields
            .iter()
            .zip(widths)
            .map(|(f, w)| format!("{f:<w$}"))
            .collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    for row in &cells {
        line(row.iter().map(String::as_str).collect());
    }
    out.pop();
    out
}
