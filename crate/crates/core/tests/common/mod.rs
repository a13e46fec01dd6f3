//! Helpers shared by the integration tests: strategies for random inputs and
//! brute-force oracles that do not go through the library's own algorithms.

#![allow(dead_code)]

use additive_toric::linalg::{Int, IntMatrix, Matrix, Rat};
use itertools::Itertools;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

pub fn int(x: i64) -> Int {
    Int::from(x)
}

pub fn ivec(xs: &[i64]) -> Vec<Int> {
    xs.iter().map(|&x| Int::from(x)).collect()
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(p.into(), q.into())
}

/// Small rationals `p/q` with `|p| <= 9`, `1 <= q <= 6`.
pub fn small_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=6).prop_map(|(p, q)| rat(p, q))
}

/// An element of the maximal ideal of an algebra of dimension `dim`.
pub fn ideal_element(dim: usize) -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec(small_rat(), dim - 1).prop_map(|mut v| {
        v.insert(0, Rat::zero());
        v
    })
}

/// Products of elementary shears and a sign flip: always determinant +-1.
pub fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    let op = (0..n, 1..n, -2i64..=2);
    (prop::collection::vec(op, 1..=3 * n), any::<bool>()).prop_map(move |(ops, flip)| {
        let mut g = IntMatrix::identity(n);
        for (i, off, c) in ops {
            let j = (i + off) % n;
            for k in 0..n {
                let add = Int::from(c) * &g[(j, k)];
                g[(i, k)] += add;
            }
        }
        if flip {
            for k in 0..n {
                g[(n - 1, k)] = -g[(n - 1, k)].clone();
            }
        }
        g
    })
}

pub fn int_matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(m, n)| {
        prop::collection::vec(-bound..=bound, m * n).prop_map(move |xs| Matrix::new(m, n, xs.into_iter().map(Int::from).collect()))
    })
}

pub fn rat_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix<Rat>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(m, n)| {
        prop::collection::vec(small_rat(), m * n).prop_map(move |xs| Matrix::new(m, n, xs))
    })
}

/// Leibniz expansion; fine for the 4x4 matrices used here.
pub fn leibniz_det(a: &[Vec<Int>]) -> Int {
    let n = a.len();
    (0..n)
        .permutations(n)
        .map(|p| {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let term: Int = (0..n).map(|i| a[i][p[i]].clone()).product();
            if inversions % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// gcd of all `k x k` minors (the `k`-th determinantal divisor).
pub fn determinantal_divisor(a: &IntMatrix, k: usize) -> Int {
    let mut g = Int::zero();
    for rows in (0..a.rows()).combinations(k) {
        for cols in (0..a.cols()).combinations(k) {
            let minor: Vec<Vec<Int>> = rows.iter().map(|&i| cols.iter().map(|&j| a[(i, j)].clone()).collect()).collect();
            g = g.gcd(&leibniz_det(&minor));
        }
    }
    g.abs()
}

/// Every integer point of the bounding box that satisfies all facet
/// inequalities, found by scanning the box.
pub fn box_scan(p: &additive_toric::polytope::LatticePolytope) -> Vec<Vec<Int>> {
    let n = p.dim();
    let lo: Vec<Int> = (0..n).map(|i| p.vertices().iter().map(|v| v[i].clone()).min().unwrap()).collect();
    let hi: Vec<Int> = (0..n).map(|i| p.vertices().iter().map(|v| v[i].clone()).max().unwrap()).collect();
    let ranges: Vec<Vec<Int>> = (0..n)
        .map(|i| {
            let mut r = Vec::new();
            let mut x = lo[i].clone();
            while x <= hi[i] {
                r.push(x.clone());
                x += 1;
            }
            r
        })
        .collect();
    let mut out: Vec<Vec<Int>> = ranges
        .into_iter()
        .multi_cartesian_product()
        .filter(|x| p.facets().iter().all(|h| h.contains(x)))
        .collect();
    out.sort();
    out
}
