//! Experiment harness: runs aligners over series pairs, checks each result
//! against the full-DTW oracle and emits one record per (pair, algorithm).

use std::fmt;
use std::io;
use std::time::Duration;

use rayon::prelude::*;

use crate::band::{dtw_band, BandSpec};
use crate::dc::dc_align;
use crate::error::{Error, Result};
use crate::full::dtw_full_with_limit;
use crate::series::{AlignmentResult, TimeSeries};
use crate::sparse::sparse_dtw;
use crate::synth::{generate_pair, SyntheticSpec};

/// Dense oracle budget when none is configured.
pub const DEFAULT_DENSE_BUDGET: usize = 16_000_000;

/// Header of the record CSV.
pub const CSV_HEADER: [&str; 11] = [
    "dataset",
    "algorithm",
    "params",
    "n",
    "m",
    "open_cells",
    "path_K",
    "elapsed_ms",
    "raw_cost",
    "normalized_distance",
    "optimal",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Algorithm {
    Full,
    Band(BandSpec),
    Dc,
    Sparse { res: f64 },
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Full => "full",
            Self::Band(_) => "band",
            Self::Dc => "dc",
            Self::Sparse { .. } => "sparse",
        }
    }

    pub fn params(&self) -> String {
        match self {
            Self::Full | Self::Dc => String::new(),
            Self::Band(b) if b.is_unbounded() => "width=inf".into(),
            Self::Band(b) => format!("width={}", b.width),
            Self::Sparse { res } => format!("res={res}"),
        }
    }

    /// Runs the aligner. `Full` honours the dense budget.
    pub fn run(
        &self,
        s: &TimeSeries,
        q: &TimeSeries,
        dense_budget: usize,
    ) -> Result<AlignmentResult> {
        match *self {
            Self::Full => dtw_full_with_limit(s, q, dense_budget),
            Self::Band(b) => dtw_band(s, q, b),
            Self::Dc => dc_align(s, q).map(|d| d.result),
            Self::Sparse { res } => sparse_dtw(s, q, res),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.params() {
            p if p.is_empty() => f.write_str(self.name()),
            p => write!(f, "{}({p})", self.name()),
        }
    }
}

/// A named pair of series to align.
#[derive(Debug, Clone)]
pub struct SeriesPair {
    pub dataset: String,
    pub s: TimeSeries,
    pub q: TimeSeries,
}

impl SeriesPair {
    pub fn new(dataset: impl Into<String>, s: TimeSeries, q: TimeSeries) -> Self {
        Self {
            dataset: dataset.into(),
            s,
            q,
        }
    }

    pub fn synthetic(spec: &SyntheticSpec) -> Result<Self> {
        let (s, q) = generate_pair(spec)?;
        Ok(Self::new(spec.label(), s, q))
    }
}

/// Synthetic pairs for every combination of length, correlation and seed.
pub fn synthetic_grid(lengths: &[usize], rhos: &[f64], seeds: &[u64]) -> Result<Vec<SeriesPair>> {
    let mut pairs = Vec::with_capacity(lengths.len() * rhos.len() * seeds.len());
    for &length in lengths {
        for &rho in rhos {
            for &seed in seeds {
                pairs.push(SeriesPair::synthetic(&SyntheticSpec::new(
                    length, rho, seed,
                ))?);
            }
        }
    }
    Ok(pairs)
}

#[derive(Debug, Clone, Copy)]
pub struct BenchConfig {
    /// Runs per (pair, algorithm); the reported time is their median.
    pub repeats: usize,
    /// Pairs with more cells than this skip the dense oracle.
    pub dense_budget: usize,
    /// Run (pair, algorithm) cells on the rayon pool.
    pub parallel: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            repeats: 3,
            dense_budget: DEFAULT_DENSE_BUDGET,
            parallel: false,
        }
    }
}

/// Comparison of a record's cost with the dense oracle.
#[derive(Debug, Clone, PartialEq)]
pub enum Optimality {
    Optimal,
    Suboptimal,
    /// The pair exceeded the dense budget.
    OracleSkipped,
    /// The algorithm itself failed with this message.
    Failed(String),
}

impl fmt::Display for Optimality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Optimal => f.write_str("true"),
            Self::Suboptimal => f.write_str("false"),
            Self::OracleSkipped => f.write_str("oracle skipped"),
            Self::Failed(msg) => write!(f, "failed: {msg}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchRecord {
    pub dataset: String,
    pub algorithm: Algorithm,
    pub n: usize,
    pub m: usize,
    /// Absent when the algorithm failed.
    pub outcome: Option<Outcome>,
    pub optimal: Optimality,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub open_cells: usize,
    pub path_k: usize,
    /// Median over repeats.
    pub elapsed: Duration,
    pub raw_cost: f64,
    pub normalized_distance: f64,
}

impl BenchRecord {
    pub fn succeeded(&self) -> bool {
        self.outcome.is_some()
    }

    pub fn is_optimal(&self) -> Option<bool> {
        match self.optimal {
            Optimality::Optimal => Some(true),
            Optimality::Suboptimal => Some(false),
            _ => None,
        }
    }
}

/// Costs agree when equal up to accumulated rounding.
pub fn costs_match(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

fn median(mut times: Vec<Duration>) -> Duration {
    times.sort_unstable();
    let k = times.len();
    if k % 2 == 1 {
        times[k / 2]
    } else {
        (times[k / 2 - 1] + times[k / 2]) / 2
    }
}

fn run_cell(
    pair: &SeriesPair,
    algo: Algorithm,
    oracle: Option<f64>,
    cfg: &BenchConfig,
) -> BenchRecord {
    let (n, m) = (pair.s.len(), pair.q.len());
    let mut record = BenchRecord {
        dataset: pair.dataset.clone(),
        algorithm: algo,
        n,
        m,
        outcome: None,
        optimal: Optimality::OracleSkipped,
    };
    let first = match algo.run(&pair.s, &pair.q, cfg.dense_budget) {
        Ok(r) => r,
        Err(e) => {
            record.optimal = Optimality::Failed(e.to_string());
            return record;
        }
    };
    let mut times = vec![first.elapsed];
    for _ in 1..cfg.repeats {
        match algo.run(&pair.s, &pair.q, cfg.dense_budget) {
            Ok(r) => times.push(r.elapsed),
            Err(e) => {
                record.optimal = Optimality::Failed(e.to_string());
                return record;
            }
        }
    }
    record.optimal = match oracle {
        Some(best) if costs_match(first.raw_cost, best) => Optimality::Optimal,
        Some(_) => Optimality::Suboptimal,
        None => Optimality::OracleSkipped,
    };
    record.outcome = Some(Outcome {
        open_cells: first.computed_cells,
        path_k: first.path_len(),
        elapsed: median(times),
        raw_cost: first.raw_cost,
        normalized_distance: first.normalized_distance,
    });
    record
}

/// Runs every algorithm on every pair. Records come back ordered by pair,
/// then by the order of `algorithms`, whether or not the run was parallel.
/// Algorithm failures are recorded, not returned.
pub fn run_benchmark(
    pairs: &[SeriesPair],
    algorithms: &[Algorithm],
    cfg: &BenchConfig,
) -> Result<Vec<BenchRecord>> {
    if pairs.is_empty() {
        return Err(Error::InvalidParameter(
            "no series pairs to benchmark".into(),
        ));
    }
    if algorithms.is_empty() {
        return Err(Error::InvalidParameter("no algorithms selected".into()));
    }
    if cfg.repeats == 0 {
        return Err(Error::InvalidParameter("repeats must be at least 1".into()));
    }
    let oracle = |pair: &SeriesPair| {
        dtw_full_with_limit(&pair.s, &pair.q, cfg.dense_budget)
            .ok()
            .map(|r| r.raw_cost)
    };
    let cells: Vec<(usize, Algorithm)> = (0..pairs.len())
        .flat_map(|p| algorithms.iter().map(move |&a| (p, a)))
        .collect();
    let records = if cfg.parallel {
        let oracles: Vec<Option<f64>> = pairs.par_iter().map(oracle).collect();
        cells
            .par_iter()
            .map(|&(p, a)| run_cell(&pairs[p], a, oracles[p], cfg))
            .collect()
    } else {
        let oracles: Vec<Option<f64>> = pairs.iter().map(oracle).collect();
        cells
            .iter()
            .map(|&(p, a)| run_cell(&pairs[p], a, oracles[p], cfg))
            .collect()
    };
    Ok(records)
}

/// Writes records as CSV with [`CSV_HEADER`]. Fields of failed runs are empty.
pub fn write_csv<W: io::Write>(records: &[BenchRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        let mut row = vec![
            r.dataset.clone(),
            r.algorithm.name().to_string(),
            r.algorithm.params(),
            r.n.to_string(),
            r.m.to_string(),
        ];
        match &r.outcome {
            Some(o) => row.extend([
                o.open_cells.to_string(),
                o.path_k.to_string(),
                format!("{:.3}", o.elapsed.as_secs_f64() * 1e3),
                o.raw_cost.to_string(),
                o.normalized_distance.to_string(),
            ]),
            None => row.extend(std::iter::repeat_n(String::new(), 5)),
        }
        row.push(r.optimal.to_string());
        w.write_record(&row)?;
    }
    w.flush().map_err(|source| Error::Io {
        path: "<csv output>".into(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(v: &[f64]) -> TimeSeries {
        TimeSeries::new(v.to_vec()).unwrap()
    }

    fn all_algorithms() -> Vec<Algorithm> {
        vec![
            Algorithm::Full,
            Algorithm::Band(BandSpec::new(1)),
            Algorithm::Dc,
            Algorithm::Sparse { res: 0.5 },
        ]
    }

    #[test]
    fn identical_pair_all_optimal() {
        let s = ts(&[1.0, 3.0, 2.0, 5.0, 4.0]);
        let pairs = [SeriesPair::new("same", s.clone(), s)];
        let recs = run_benchmark(&pairs, &all_algorithms(), &BenchConfig::default()).unwrap();
        assert_eq!(recs.len(), 4);
        for r in &recs {
            assert_eq!(r.outcome.as_ref().unwrap().raw_cost, 0.0);
            assert_eq!(r.is_optimal(), Some(true));
        }
    }

    #[test]
    fn worked_pair_flags_dc() {
        let pairs = [SeriesPair::new(
            "worked",
            ts(&[3.0, 4.0, 5.0, 3.0, 3.0]),
            ts(&[1.0, 2.0, 2.0, 1.0, 0.0]),
        )];
        let recs = run_benchmark(
            &pairs,
            &[Algorithm::Full, Algorithm::Dc],
            &BenchConfig::default(),
        )
        .unwrap();
        assert_eq!(recs[0].is_optimal(), Some(true));
        assert_eq!(recs[1].is_optimal(), Some(false));
    }

    #[test]
    fn failures_are_recorded() {
        let pairs = [SeriesPair::new(
            "skew",
            ts(&[1.0, 2.0, 3.0]),
            ts(&[1.0, 2.0]),
        )];
        let recs = run_benchmark(
            &pairs,
            &[Algorithm::Band(BandSpec::new(0)), Algorithm::Full],
            &BenchConfig::default(),
        )
        .unwrap();
        assert!(!recs[0].succeeded());
        assert!(matches!(recs[0].optimal, Optimality::Failed(_)));
        assert!(recs[1].succeeded());
    }

    #[test]
    fn oracle_skipped_over_budget() {
        let s = ts(&[0.0, 1.0, 2.0]);
        let pairs = [SeriesPair::new("p", s.clone(), s)];
        let cfg = BenchConfig {
            dense_budget: 4,
            ..BenchConfig::default()
        };
        let recs = run_benchmark(&pairs, &[Algorithm::Sparse { res: 0.5 }], &cfg).unwrap();
        assert_eq!(recs[0].optimal, Optimality::OracleSkipped);
        assert!(recs[0].succeeded());
    }

    #[test]
    fn parallel_matches_sequential() {
        let pairs = synthetic_grid(&[40, 60], &[0.2, 0.9], &[1, 2]).unwrap();
        let algos = all_algorithms();
        let seq = run_benchmark(
            &pairs,
            &algos,
            &BenchConfig {
                repeats: 1,
                ..Default::default()
            },
        )
        .unwrap();
        let par = run_benchmark(
            &pairs,
            &algos,
            &BenchConfig {
                repeats: 1,
                parallel: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(seq.len(), par.len());
        for (a, b) in seq.iter().zip(&par) {
            assert_eq!(a.dataset, b.dataset);
            assert_eq!(a.algorithm, b.algorithm);
            assert_eq!(a.optimal, b.optimal);
            let (oa, ob) = (a.outcome.as_ref(), b.outcome.as_ref());
            assert_eq!(oa.map(|o| o.raw_cost), ob.map(|o| o.raw_cost));
            assert_eq!(oa.map(|o| o.open_cells), ob.map(|o| o.open_cells));
        }
    }

    #[test]
    fn rejects_empty_inputs() {
        let s = ts(&[1.0]);
        let pairs = [SeriesPair::new("p", s.clone(), s)];
        assert!(run_benchmark(&[], &[Algorithm::Full], &BenchConfig::default()).is_err());
        assert!(run_benchmark(&pairs, &[], &BenchConfig::default()).is_err());
    }

    #[test]
    fn csv_layout() {
        let s = ts(&[1.0, 2.0]);
        let pairs = [SeriesPair::new("p", s.clone(), s)];
        let recs = run_benchmark(
            &pairs,
            &[
                Algorithm::Sparse { res: 0.5 },
                Algorithm::Band(BandSpec::unbounded()),
            ],
            &BenchConfig::default(),
        )
        .unwrap();
        let mut buf = Vec::new();
        write_csv(&recs, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(
            lines[0],
            "dataset,algorithm,params,n,m,open_cells,path_K,elapsed_ms,raw_cost,normalized_distance,optimal"
        );
        assert!(lines[1].starts_with("p,sparse,res=0.5,2,2,"));
        assert!(lines[1].ends_with(",0,0,true"));
        assert!(lines[2].starts_with("p,band,width=inf,2,2,4,2,"));
    }
}
