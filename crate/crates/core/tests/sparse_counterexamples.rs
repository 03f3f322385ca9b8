//! Pinned inputs on which the sparse aligner returns a costlier path than the
//! dense optimum. A change in either column means the algorithm changed.

mod common;

use sparsedtw_core::{dtw_full, sparse_dtw, validate_path, TimeSeries};

struct Case {
    res: f64,
    s: Vec<f64>,
    q: Vec<f64>,
    optimal: f64,
    sparse: f64,
}

fn parse_values(field: &str) -> Vec<f64> {
    field
        .split_whitespace()
        .map(|t| t.parse().unwrap())
        .collect()
}

fn cases() -> Vec<Case> {
    include_str!("fixtures/sparse_counterexamples.csv")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split(';').collect();
            Case {
                res: f[0].parse().unwrap(),
                s: parse_values(f[1]),
                q: parse_values(f[2]),
                optimal: f[3].parse().unwrap(),
                sparse: f[4].parse().unwrap(),
            }
        })
        .collect()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(1.0)
}

#[test]
fn fixture_is_nonempty() {
    assert!(cases().len() >= 5);
}

#[test]
fn optimal_column_matches_exhaustive_search() {
    for c in cases() {
        assert!(close(common::brute_force(&c.s, &c.q).0, c.optimal));
        let full = dtw_full(
            &TimeSeries::new(c.s.clone()).unwrap(),
            &TimeSeries::new(c.q.clone()).unwrap(),
        )
        .unwrap();
        assert!(close(full.raw_cost, c.optimal));
    }
}

#[test]
fn sparse_cost_is_pinned_above_optimum() {
    for c in cases() {
        let (s, q) = (
            TimeSeries::new(c.s.clone()).unwrap(),
            TimeSeries::new(c.q.clone()).unwrap(),
        );
        let r = sparse_dtw(&s, &q, c.res).unwrap();
        assert!(
            close(r.raw_cost, c.sparse),
            "{:?} / {:?}: got {}",
            c.s,
            c.q,
            r.raw_cost
        );
        assert!(r.raw_cost > c.optimal);
        assert!(validate_path(&r.path, s.len(), q.len()).is_ok());
    }
}

#[test]
fn map_reference_reproduces_the_same_gap() {
    for c in cases() {
        let reference = common::reference_sparse(&c.s, &c.q, c.res);
        assert!(close(reference.cost, c.sparse));
    }
}

#[test]
fn opening_every_cell_recovers_the_optimum() {
    for c in cases() {
        let (s, q) = (
            TimeSeries::new(c.s.clone()).unwrap(),
            TimeSeries::new(c.q.clone()).unwrap(),
        );
        assert!(close(sparse_dtw(&s, &q, 1.0).unwrap().raw_cost, c.optimal));
    }
}
