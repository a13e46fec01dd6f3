use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{primitive_from_rational, Int, IntMatrix, IntVector, Matrix, Rat, RatMatrix, RatVector};

/// Fraction-free row echelon form produced by Bareiss elimination.
struct Echelon {
    mat: IntMatrix,
    pivots: Vec<usize>,
    swaps: usize,
}

/// Bareiss elimination. Every intermediate entry is a minor of the input, so
/// the division by the previous pivot is always exact.
fn bareiss(mut a: IntMatrix) -> Echelon {
    let (m, n) = (a.rows(), a.cols());
    let mut prev = Int::one();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap_rows(p, r);
            swaps += 1;
        }
        let piv = a[(r, c)].clone();
        for i in r + 1..m {
            let f = a[(i, c)].clone();
            for j in c + 1..n {
                let num = &piv * &a[(i, j)] - &f * &a[(r, j)];
                debug_assert!((&num % &prev).is_zero());
                a[(i, j)] = num / &prev;
            }
            a[(i, c)] = Int::zero();
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    Echelon { mat: a, pivots, swaps }
}

/// Scales each row by the lcm of its denominators.
fn clear_denominators(a: &RatMatrix) -> IntMatrix {
    let mut data = Vec::with_capacity(a.rows() * a.cols());
    for row in a.row_iter() {
        let l = row.iter().fold(Int::one(), |l, x| l.lcm(x.denom()));
        data.extend(row.iter().map(|x| x.numer() * (&l / x.denom())));
    }
    Matrix::new(a.rows(), a.cols(), data)
}

/// Rank over the rationals.
pub fn rank(a: &RatMatrix) -> usize {
    bareiss(clear_denominators(a)).pivots.len()
}

/// Basis of the right kernel `{v : A v = 0}`.
///
/// Vectors are primitive integer vectors with first nonzero entry positive,
/// one per non-pivot column, in column order.
pub fn nullspace(a: &RatMatrix) -> Vec<IntVector> {
    let n = a.cols();
    let ech = bareiss(clear_denominators(a));
    let e = &ech.mat;
    let free: Vec<usize> = (0..n).filter(|c| !ech.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x: RatVector = vec![Rat::zero(); n];
            x[f] = Rat::one();
            for (k, &p) in ech.pivots.iter().enumerate().rev() {
                let mut s = Rat::zero();
                for j in p + 1..n {
                    if !x[j].is_zero() && !e[(k, j)].is_zero() {
                        s += Rat::from_integer(e[(k, j)].clone()) * &x[j];
                    }
                }
                x[p] = -s / Rat::from_integer(e[(k, p)].clone());
            }
            primitive_from_rational(&x)
        })
        .collect()
}

/// Determinant of a square integer matrix.
pub fn determinant(a: &IntMatrix) -> Int {
    assert_eq!(a.rows(), a.cols(), "determinant of a non-square matrix");
    let n = a.rows();
    if n == 0 {
        return Int::one();
    }
    let ech = bareiss(a.clone());
    if ech.pivots.len() < n {
        return Int::zero();
    }
    let d = ech.mat[(n - 1, n - 1)].clone();
    if ech.swaps % 2 == 1 {
        -d
    } else {
        d
    }
}

/// Inverse of a square rational matrix, `None` when singular.
pub fn inverse(a: &RatMatrix) -> Option<RatMatrix> {
    assert_eq!(a.rows(), a.cols(), "inverse of a non-square matrix");
    let n = a.rows();
    let mut m = a.clone();
    let mut inv = RatMatrix::identity(n);
    for c in 0..n {
        let p = (c..n).find(|&i| !m[(i, c)].is_zero())?;
        m.swap_rows(p, c);
        inv.swap_rows(p, c);
        let piv = m[(c, c)].clone();
        for j in 0..n {
            m[(c, j)] = &m[(c, j)] / &piv;
            inv[(c, j)] = &inv[(c, j)] / &piv;
        }
        for i in 0..n {
            if i == c || m[(i, c)].is_zero() {
                continue;
            }
            let f = m[(i, c)].clone();
            for j in 0..n {
                let dm = &f * &m[(c, j)];
                m[(i, j)] -= dm;
                let di = &f * &inv[(c, j)];
                inv[(i, j)] -= di;
            }
        }
    }
    Some(inv)
}

/// Reduced row echelon basis of the span of `vectors` (each of length `dim`).
/// The result is canonical: equal spans give equal bases.
pub fn row_basis(vectors: &[RatVector], dim: usize) -> Vec<RatVector> {
    let mut rows: Vec<RatVector> = vectors.iter().filter(|v| v.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut r = 0;
    for c in 0..dim {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let piv = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x / &piv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows
}

/// Whether `v` lies in the span of `basis`.
pub fn span_contains(basis: &[RatVector], v: &[Rat]) -> bool {
    let dim = v.len();
    let mut all = basis.to_vec();
    let before = row_basis(&all, dim).len();
    all.push(v.to_vec());
    row_basis(&all, dim).len() == before
}

/// Determinant is +1 or -1.
pub fn is_unimodular(a: &IntMatrix) -> bool {
    determinant(a).abs().is_one()
}
