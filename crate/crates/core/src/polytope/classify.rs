//! Exhaustive search for inscribed polytopes with exactly `n + 2` lattice
//! points.
//!
//! After moving a witness vertex to the origin and its edge basis to the
//! standard basis, the polytope contains `0, e_1, ..., e_n` and exactly one
//! more lattice point `b`, and lies in the nonnegative orthant. A vertex
//! `k e_i` would bring `k + 1` collinear lattice points, which bounds every
//! coordinate of `b` by `n + 1`.

use itertools::Itertools;
use num_traits::{One, Zero};

use super::{unit, LatticePolytope};
use crate::linalg::{Int, IntVector};

/// The representative under coordinate permutations whose vertex list, read
/// in descending order, is lexicographically largest. This prefers `2e_1`
/// over `2e_n` and `e_1 + e_2` over other pairs.
pub fn canonical_under_permutations(p: &LatticePolytope) -> LatticePolytope {
    let n = p.dim();
    (0..n)
        .permutations(n)
        .map(|perm| {
            let mut vs: Vec<IntVector> = p
                .vertices()
                .iter()
                .map(|v| perm.iter().map(|&i| v[i].clone()).collect())
                .collect();
            vs.sort_by(|a, b| b.cmp(a));
            vs
        })
        .max()
        .map(|vs| LatticePolytope::new(n, vs).expect("coordinate permutation of a polytope"))
        .expect("at least the identity permutation")
}

/// Invariant of inscribed polytopes under translations and unimodular maps:
/// the largest permutation-canonical normal form over all witness vertices.
fn inscribed_canonical_form(p: &LatticePolytope) -> Option<LatticePolytope> {
    p.inscribed_witnesses()
        .iter()
        .map(|w| {
            let q = p.normalize_at_vertex(w).expect("witness bases are unimodular");
            canonical_under_permutations(&q)
        })
        .max_by(|a, b| descending(a).cmp(&descending(b)))
}

fn descending(p: &LatticePolytope) -> Vec<IntVector> {
    p.vertices().iter().rev().cloned().collect()
}

/// All full-dimensional lattice polytopes with `n + 2` lattice points that are
/// inscribed in a rectangle, up to translation and unimodular maps, sorted by
/// vertex count and then by vertex list.
pub fn classify_inscribed_hypersurface_polytopes(n: usize) -> Vec<LatticePolytope> {
    assert!(n >= 1, "lattice rank must be at least 1");
    let bound = Int::from(n + 1);
    let mut found: Vec<LatticePolytope> = Vec::new();
    let mut b = vec![Int::zero(); n];
    loop {
        if is_extra_point(&b) {
            let mut pts = vec![vec![Int::zero(); n]];
            pts.extend((0..n).map(|i| unit(n, i, 1)));
            pts.push(b.clone());
            let p = LatticePolytope::hull(n, pts).expect("contains the unit simplex");
            if p.scaled_points(&Int::one(), Some(n + 2)).len() == n + 2 {
                if let Some(c) = inscribed_canonical_form(&p) {
                    if !found.contains(&c) {
                        found.push(c);
                    }
                }
            }
        }
        if !advance(&mut b, &bound) {
            break;
        }
    }
    found.sort_by(|a, b| {
        (a.vertices().len(), a.vertices()).cmp(&(b.vertices().len(), b.vertices()))
    });
    found
}

/// `b` is neither the origin nor a unit vector.
fn is_extra_point(b: &[Int]) -> bool {
    let nonzero: Vec<&Int> = b.iter().filter(|x| !x.is_zero()).collect();
    !(nonzero.is_empty() || (nonzero.len() == 1 && nonzero[0].is_one()))
}

fn advance(b: &mut [Int], bound: &Int) -> bool {
    for x in b.iter_mut().rev() {
        if &*x < bound {
            *x += 1;
            return true;
        }
        *x = Int::zero();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vec;

    #[test]
    fn dimension_one() {
        assert_eq!(classify_inscribed_hypersurface_polytopes(1), vec![LatticePolytope::family_a(1)]);
    }

    #[test]
    fn dimensions_two_and_three() {
        for n in 2..=3 {
            assert_eq!(
                classify_inscribed_hypersurface_polytopes(n),
                vec![LatticePolytope::family_a(n), LatticePolytope::family_b(n)]
            );
        }
    }

    #[test]
    fn results_satisfy_the_defining_conditions() {
        for p in classify_inscribed_hypersurface_polytopes(3) {
            assert_eq!(p.lattice_point_count(), 5);
            assert!(p.is_inscribed_in_rectangle());
        }
    }

    #[test]
    fn permutation_canonical_form() {
        let p = LatticePolytope::new(2, vec![int_vec(&[0, 0]), int_vec(&[1, 0]), int_vec(&[0, 2])]).unwrap();
        assert_eq!(canonical_under_permutations(&p), LatticePolytope::family_a(2));
        let q = LatticePolytope::new(
            3,
            vec![int_vec(&[0, 0, 0]), int_vec(&[1, 0, 0]), int_vec(&[0, 1, 0]), int_vec(&[0, 0, 1]), int_vec(&[0, 1, 1])],
        )
        .unwrap();
        assert_eq!(canonical_under_permutations(&q), LatticePolytope::family_b(3));
    }
}
