//! Smith normal form by elementary row and column operations.
//!
//! The pivot at each step is an entry of minimal nonzero absolute value in the
//! remaining block; remainders are pushed back into the block until the pivot
//! row and column are clear and the pivot divides everything below-right of it.

use num_traits::{Signed, Zero};

use super::{Int, IntMatrix};

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal, `d_i | d_{i+1}`,
/// all `d_i >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<Int> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = min_abs_entry(&d, t) else {
                return SmithForm { u, d, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = &d[(i, t)] / &d[(t, t)];
                add_row_multiple(&mut d, i, t, &q);
                add_row_multiple(&mut u, i, t, &q);
                dirty |= !d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = &d[(t, j)] / &d[(t, t)];
                add_col_multiple(&mut d, j, t, &q);
                add_col_multiple(&mut v, j, t, &q);
                dirty |= !d[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }

            // pivot must divide the rest of the block
            let bad_row = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&d[(i, j)] % &d[(t, t)]).is_zero()));
            if let Some(i) = bad_row {
                let minus_one = Int::from(-1);
                add_row_multiple(&mut d, t, i, &minus_one);
                add_row_multiple(&mut u, t, i, &minus_one);
                continue;
            }
            break;
        }
        if d[(t, t)].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
    }
    SmithForm { u, d, v }
}

fn min_abs_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.map_or(true, |(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// row_target -= q * row_source
fn add_row_multiple(m: &mut IntMatrix, target: usize, source: usize, q: &Int) {
    for j in 0..m.cols() {
        let delta = q * &m[(source, j)];
        m[(target, j)] -= delta;
    }
}

/// col_target -= q * col_source
fn add_col_multiple(m: &mut IntMatrix, target: usize, source: usize, q: &Int) {
    for i in 0..m.rows() {
        let delta = q * &m[(i, source)];
        m[(i, target)] -= delta;
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for j in 0..m.cols() {
        m[(r, j)] = -m[(r, j)].clone();
    }
}

#[cfg(test)]
mod tests {
    use super::super::{determinant, int_matrix, is_unimodular};
    use super::*;

    fn check(a: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert!(is_unimodular(&s.u));
        assert!(is_unimodular(&s.v));
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        s
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&IntMatrix::identity(2));
        assert_eq!(s.d, IntMatrix::identity(2));
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(2));
    }

    #[test]
    fn already_diagonal() {
        let s = check(&int_matrix(&[&[2, 0], &[0, 6]]));
        assert_eq!(s.d, int_matrix(&[&[2, 0], &[0, 6]]));
    }

    #[test]
    fn ray_matrix_of_weighted_plane_has_free_cokernel() {
        // rays (1,0), (0,1), (-1,-2) as rows: the map Z^2 -> Z^3
        let s = check(&int_matrix(&[&[1, 0], &[0, 1], &[-1, -2]]));
        assert_eq!(s.invariant_factors(), vec![Int::from(1), Int::from(1)]);
        // cokernel rank = 3 - 2
        assert_eq!(3 - s.rank(), 1);
    }

    #[test]
    fn divisibility_is_enforced() {
        let s = check(&int_matrix(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.invariant_factors(), vec![Int::from(1), Int::from(6)]);
        let s = check(&int_matrix(&[&[4, 6, 8], &[6, 9, 12], &[0, 0, 0]]));
        assert_eq!(s.invariant_factors(), vec![Int::from(1)]);
        let s = check(&int_matrix(&[&[0, 0], &[0, 0]]));
        assert!(s.invariant_factors().is_empty());
    }

    #[test]
    fn determinant_is_product_of_factors() {
        let a = int_matrix(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]);
        let s = check(&a);
        let prod: Int = s.invariant_factors().iter().product();
        assert_eq!(prod, determinant(&a).abs());
    }
}
