//! Independent oracles shared by the integration tests. Nothing here calls
//! into the algorithms under test.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn sq(a: f64, b: f64) -> f64 {
    (a - b) * (a - b)
}

/// Minimum cost over every monotone, continuous path from (1,1) to (n,m),
/// found by exhaustive enumeration. Also returns how many paths were seen.
pub fn brute_force(s: &[f64], q: &[f64]) -> (f64, u64) {
    fn walk(s: &[f64], q: &[f64], i: usize, j: usize, acc: f64, best: &mut f64, count: &mut u64) {
        let acc = acc + sq(s[i], q[j]);
        if i + 1 == s.len() && j + 1 == q.len() {
            *count += 1;
            if acc < *best {
                *best = acc;
            }
            return;
        }
        if i + 1 < s.len() && j + 1 < q.len() {
            walk(s, q, i + 1, j + 1, acc, best, count);
        }
        if i + 1 < s.len() {
            walk(s, q, i + 1, j, acc, best, count);
        }
        if j + 1 < q.len() {
            walk(s, q, i, j + 1, acc, best, count);
        }
    }
    let mut best = f64::INFINITY;
    let mut count = 0;
    walk(s, q, 0, 0, 0.0, &mut best, &mut count);
    (best, count)
}

/// Straightforward O(nm) memo table, 0-based, kept separate from the library.
pub fn dense_table(s: &[f64], q: &[f64]) -> Vec<Vec<f64>> {
    let (n, m) = (s.len(), q.len());
    let mut d = vec![vec![f64::INFINITY; m]; n];
    for i in 0..n {
        for j in 0..m {
            let best = if i == 0 && j == 0 {
                0.0
            } else {
                let mut b = f64::INFINITY;
                if i > 0 && j > 0 {
                    b = b.min(d[i - 1][j - 1]);
                }
                if i > 0 {
                    b = b.min(d[i - 1][j]);
                }
                if j > 0 {
                    b = b.min(d[i][j - 1]);
                }
                b
            };
            d[i][j] = sq(s[i], q[j]) + best;
        }
    }
    d
}

pub fn path_cost(s: &[f64], q: &[f64], path: &[(usize, usize)]) -> f64 {
    path.iter().map(|&(i, j)| sq(s[i - 1], q[j - 1])).sum()
}

/// Checks boundary, monotonicity and continuity without the library validator.
pub fn path_ok(path: &[(usize, usize)], n: usize, m: usize) -> bool {
    if path.first() != Some(&(1, 1)) || path.last() != Some(&(n, m)) {
        return false;
    }
    path.windows(2).all(|w| {
        let (di, dj) = (w[1].0 as i64 - w[0].0 as i64, w[1].1 as i64 - w[0].1 as i64);
        (0..=1).contains(&di) && (0..=1).contains(&dj) && di + dj > 0
    }) && path
        .iter()
        .all(|&(i, j)| (1..=n).contains(&i) && (1..=m).contains(&j))
}

/// Random series: integer-valued on even draws, real-valued otherwise.
pub fn random_series(rng: &mut ChaCha8Rng, len: usize, integer: bool) -> Vec<f64> {
    (0..len)
        .map(|_| {
            if integer {
                rng.random_range(-5..=5) as f64
            } else {
                rng.random_range(-10.0..10.0)
            }
        })
        .collect()
}

pub fn random_pairs(
    seed: u64,
    count: usize,
    min_len: usize,
    max_len: usize,
) -> Vec<(Vec<f64>, Vec<f64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let n = rng.random_range(min_len..=max_len);
            let m = rng.random_range(min_len..=max_len);
            let integer = k % 2 == 0;
            (
                random_series(&mut rng, n, integer),
                random_series(&mut rng, m, integer),
            )
        })
        .collect()
}

/// Outcome of the map-based sparse reference.
#[derive(Debug)]
pub struct ReferenceSparse {
    pub cost: f64,
    pub open: usize,
    pub path: Option<Vec<(usize, usize)>>,
}

fn scale01(v: &[f64]) -> Vec<f64> {
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi == lo {
        return vec![0.0; v.len()];
    }
    v.iter()
        .map(|&x| ((x - lo) / (hi - lo)).clamp(0.0, 1.0))
        .collect()
}

fn reference_bins(res: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut k = 0u32;
    loop {
        let lower = f64::from(k) * res / 2.0;
        if lower > 1.0 - res / 2.0 + 1e-9 {
            break;
        }
        out.push((lower, lower + res));
        k += 1;
    }
    out
}

/// Sparse alignment over a `BTreeMap` keyed by 1-based linear index, visiting
/// keys in ascending order and picking up cells inserted ahead of the cursor.
/// Unblocking fires only from cells with a finite accumulated cost.
pub fn reference_sparse(s: &[f64], q: &[f64], res: f64) -> ReferenceSparse {
    let (n, m) = (s.len(), q.len());
    let (sq_, qq_) = (scale01(s), scale01(q));
    let idx = |i: usize, j: usize| (j - 1) * n + i;
    let rc = |c: usize| ((c - 1) % n + 1, (c - 1) / n + 1);

    let mut cells: BTreeMap<usize, f64> = BTreeMap::new();
    for (lo, hi) in reference_bins(res) {
        let rows: Vec<usize> = (1..=n)
            .filter(|&i| lo <= sq_[i - 1] && sq_[i - 1] <= hi)
            .collect();
        let cols: Vec<usize> = (1..=m)
            .filter(|&j| lo <= qq_[j - 1] && qq_[j - 1] <= hi)
            .collect();
        for &j in &cols {
            for &i in &rows {
                cells.insert(idx(i, j), f64::INFINITY);
            }
        }
    }
    cells.insert(1, f64::INFINITY);
    cells.insert(n * m, f64::INFINITY);

    let lower = |c: usize| {
        let (i, j) = rc(c);
        let mut v = Vec::new();
        if i > 1 {
            v.push(idx(i - 1, j));
        }
        if j > 1 {
            v.push(idx(i, j - 1));
            if i > 1 {
                v.push(idx(i - 1, j - 1));
            }
        }
        v
    };
    let upper = |c: usize| {
        let (i, j) = rc(c);
        let mut v = Vec::new();
        if i < n {
            v.push(idx(i + 1, j));
        }
        if j < m {
            v.push(idx(i, j + 1));
            if i < n {
                v.push(idx(i + 1, j + 1));
            }
        }
        v
    };

    let mut cursor = 0;
    while let Some((&c, _)) = cells.range(cursor + 1..).next() {
        cursor = c;
        let (i, j) = rc(c);
        let best = if c == 1 {
            0.0
        } else {
            lower(c)
                .into_iter()
                .filter_map(|l| cells.get(&l).copied())
                .fold(f64::INFINITY, f64::min)
        };
        let acc = sq(s[i - 1], q[j - 1]) + best;
        cells.insert(c, acc);
        if acc.is_finite() {
            let ups = upper(c);
            if ups.iter().all(|u| !cells.contains_key(u)) {
                for u in ups {
                    cells.insert(u, f64::INFINITY);
                }
            }
        }
    }

    let cost = cells[&(n * m)];
    let path = cost.is_finite().then(|| {
        let mut hop = n * m;
        let mut steps = vec![rc(hop)];
        while hop != 1 {
            let (i, j) = rc(hop);
            // diagonal, vertical, horizontal
            let mut cands = Vec::new();
            if i > 1 && j > 1 {
                cands.push(idx(i - 1, j - 1));
            }
            if i > 1 {
                cands.push(idx(i - 1, j));
            }
            if j > 1 {
                cands.push(idx(i, j - 1));
            }
            let mut pick = None;
            for cand in cands {
                if let Some(&v) = cells.get(&cand) {
                    if pick.is_none_or(|(_, b)| v < b) {
                        pick = Some((cand, v));
                    }
                }
            }
            hop = pick.expect("open predecessor").0;
            steps.push(rc(hop));
        }
        steps.reverse();
        steps
    });
    ReferenceSparse {
        cost,
        open: cells.len(),
        path,
    }
}
