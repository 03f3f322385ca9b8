mod common;

use common::{path_cost, path_ok, random_pairs, reference_sparse};
use proptest::prelude::*;
use sparsedtw_core::sparse::sparse_dtw_with_matrix;
use sparsedtw_core::{Error, TimeSeries};

fn ts(v: &[f64]) -> TimeSeries {
    TimeSeries::new(v.to_vec()).unwrap()
}

fn check_against_reference(s: &[f64], q: &[f64], res: f64) {
    let reference = reference_sparse(s, q, res);
    match sparse_dtw_with_matrix(&ts(s), &ts(q), res) {
        Ok((result, sm)) => {
            assert_eq!(
                sm.open_cells(),
                reference.open,
                "open cells for {s:?} / {q:?}"
            );
            assert_eq!(result.computed_cells, reference.open);
            assert_eq!(result.raw_cost.to_bits(), reference.cost.to_bits());
            let path = result.path.steps();
            assert_eq!(Some(path.to_vec()), reference.path);
            assert!(path_ok(path, s.len(), q.len()));
            let recomputed = path_cost(s, q, path);
            assert!((recomputed - result.raw_cost).abs() <= 1e-9 * result.raw_cost.max(1.0));
        }
        Err(Error::SparseDisconnected { .. }) => assert!(reference.cost.is_infinite()),
        Err(e) => panic!("unexpected error {e}"),
    }
}

#[test]
fn matches_map_reference_on_seeded_pairs() {
    for (k, (s, q)) in random_pairs(11, 400, 1, 40).iter().enumerate() {
        let res = [0.1, 0.25, 0.5, 0.75, 1.0][k % 5];
        check_against_reference(s, q, res);
    }
}

#[test]
fn matches_map_reference_on_long_runs() {
    // long series exercise multi-word bitsets and run coalescing
    for (s, q) in random_pairs(12, 12, 60, 200) {
        check_against_reference(&s, &q, 0.25);
        check_against_reference(&s, &q, 0.5);
    }
}

#[test]
fn open_count_never_exceeds_grid() {
    for (s, q) in random_pairs(13, 200, 1, 30) {
        let (_, sm) = sparse_dtw_with_matrix(&ts(&s), &ts(&q), 0.5).unwrap();
        assert!(sm.open_cells() <= s.len() * q.len());
    }
}

#[test]
fn resolution_one_opens_everything() {
    for (s, q) in random_pairs(14, 50, 1, 25) {
        let (r, _) = sparse_dtw_with_matrix(&ts(&s), &ts(&q), 1.0).unwrap();
        assert_eq!(r.computed_cells, s.len() * q.len());
        let full = sparsedtw_core::dtw_full(&ts(&s), &ts(&q)).unwrap();
        assert_eq!(r.raw_cost.to_bits(), full.raw_cost.to_bits());
    }
}

#[test]
fn dump_lists_every_open_cell_in_index_order() {
    let (s, q) = (vec![3.0, 4.0, 5.0, 3.0, 3.0], vec![1.0, 2.0, 2.0, 1.0, 0.0]);
    let (_, sm) = sparse_dtw_with_matrix(&ts(&s), &ts(&q), 0.5).unwrap();
    let mut buf = Vec::new();
    sm.dump(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("index,i,j,local,accumulated,open"));
    let body: Vec<&str> = lines.collect();
    let indices: Vec<usize> = body
        .iter()
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(indices.len(), sm.open_cells());
    assert!(indices.windows(2).all(|w| w[0] < w[1]));
    for line in &body {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f.len(), 6);
        let (i, j): (usize, usize) = (f[1].parse().unwrap(), f[2].parse().unwrap());
        let local = common::sq(s[i - 1], q[j - 1]);
        if local == 0.0 {
            assert_eq!(f[3], "-1");
        } else {
            assert_eq!(f[3].parse::<f64>().unwrap(), local);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn prop_matches_reference(
        s in prop::collection::vec(-20.0f64..20.0, 1..24),
        q in prop::collection::vec(-20.0f64..20.0, 1..24),
        res in prop::sample::select(vec![0.05, 0.2, 0.25, 0.5, 0.9, 1.0]),
    ) {
        check_against_reference(&s, &q, res);
    }

    #[test]
    fn prop_cost_never_below_optimum(
        s in prop::collection::vec(-5i32..5, 1..20),
        q in prop::collection::vec(-5i32..5, 1..20),
    ) {
        let s: Vec<f64> = s.into_iter().map(f64::from).collect();
        let q: Vec<f64> = q.into_iter().map(f64::from).collect();
        let opt = common::dense_table(&s, &q)[s.len() - 1][q.len() - 1];
        if let Ok((r, _)) = sparse_dtw_with_matrix(&ts(&s), &ts(&q), 0.5) {
            prop_assert!(r.raw_cost >= opt - 1e-9);
        }
    }
}
