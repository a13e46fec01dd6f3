//! Full-dimensional lattice polytopes given by their vertices.
//!
//! The H-representation is computed once at construction by trying every
//! hyperplane through `n` affinely independent vertices and keeping the ones
//! with all vertices on one side. This is exhaustive and only meant for small
//! dimensions and vertex counts.

mod classify;
mod inscribed;
mod normality;

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{self, dot, nullspace, Int, IntMatrix, IntVector, Matrix, Rat};

pub use classify::{canonical_under_permutations, classify_inscribed_hypersurface_polytopes};
pub use inscribed::InscribedWitness;
pub use normality::VeryAmple;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("lattice rank must be at least 1")]
    ZeroDimension,
    #[error("a polytope needs at least one point")]
    Empty,
    #[error("point {point} has {got} coordinates, expected {expected}")]
    DimensionMismatch { point: String, got: usize, expected: usize },
    #[error("duplicate point {0}")]
    DuplicatePoint(String),
    #[error("points span an affine subspace of dimension {affine_dim}, need {dim}")]
    NotFullDimensional { dim: usize, affine_dim: usize },
    #[error("point {0} is not a vertex of the convex hull")]
    NotAVertex(String),
    #[error("witness basis has determinant {0}, expected 1 or -1")]
    InvalidWitness(String),
}

/// `<normal, x> <= offset`, with a primitive normal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Halfspace {
    pub normal: IntVector,
    pub offset: Int,
}

impl Halfspace {
    pub fn value(&self, x: &[Int]) -> Int {
        dot(&self.normal, x)
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.value(x) <= self.offset
    }

    pub fn is_tight(&self, x: &[Int]) -> bool {
        self.value(x) == self.offset
    }
}

impl fmt::Display for Halfspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <= {}", linear_form(&self.normal, "x", 1), self.offset)
    }
}

/// Renders `sum c_i * {var}{i+base}` the way a person would write it.
pub(crate) fn linear_form(coeffs: &[Int], var: &str, base: usize) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c < &Int::zero();
        let abs = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !abs.is_one() {
            out.push_str(&format!("{abs}*"));
        }
        out.push_str(&format!("{var}{}", i + base));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub(crate) fn fmt_point(p: &[Int]) -> String {
    format!("({})", p.iter().join(", "))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePolytope {
    dim: usize,
    /// Sorted lexicographically.
    vertices: Vec<IntVector>,
    /// Sorted lexicographically by (normal, offset).
    facets: Vec<Halfspace>,
}

impl LatticePolytope {
    /// Builds a polytope from its exact vertex list. Every point must be a
    /// vertex of the convex hull.
    pub fn new(dim: usize, vertices: Vec<IntVector>) -> Result<Self, PolytopeError> {
        let points = check_points(dim, vertices, true)?;
        let facets = facets_of(dim, &points);
        if let Some(p) = points.iter().find(|p| !is_extreme(dim, &facets, p)) {
            return Err(PolytopeError::NotAVertex(fmt_point(p)));
        }
        Ok(LatticePolytope { dim, vertices: points, facets })
    }

    /// Convex hull of arbitrary lattice points (duplicates and non-vertices
    /// are allowed and dropped).
    pub fn hull(dim: usize, points: Vec<IntVector>) -> Result<Self, PolytopeError> {
        let points = check_points(dim, points, false)?;
        let facets = facets_of(dim, &points);
        let vertices = points.into_iter().filter(|p| is_extreme(dim, &facets, p)).collect();
        Ok(LatticePolytope { dim, vertices, facets })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[IntVector] {
        &self.vertices
    }

    /// Irredundant H-representation, normals primitive.
    pub fn facets(&self) -> &[Halfspace] {
        &self.facets
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.facets.iter().all(|h| h.contains(x))
    }

    /// All lattice points, sorted lexicographically.
    pub fn lattice_points(&self) -> Vec<IntVector> {
        self.scaled_points(&Int::one(), None)
    }

    pub fn lattice_point_count(&self) -> usize {
        self.lattice_points().len()
    }

    /// Lattice points of `k * P`, or `None` as soon as there are more than
    /// `limit` of them.
    pub(crate) fn scaled_points(&self, k: &Int, limit: Option<usize>) -> Vec<IntVector> {
        let n = self.dim;
        let lo: IntVector = (0..n)
            .map(|i| self.vertices.iter().map(|v| &v[i] * k).min().unwrap())
            .collect();
        let hi: IntVector = (0..n)
            .map(|i| self.vertices.iter().map(|v| &v[i] * k).max().unwrap())
            .collect();
        let offsets: Vec<Int> = self.facets.iter().map(|h| &h.offset * k).collect();
        let mut out = Vec::new();
        let mut x = lo.clone();
        loop {
            if self.facets.iter().zip(&offsets).all(|(h, a)| &h.value(&x) <= a) {
                out.push(x.clone());
                if limit.is_some_and(|l| out.len() > l) {
                    return out;
                }
            }
            // odometer, last coordinate fastest, so output is already sorted
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if x[i] < hi[i] {
                    x[i] += 1;
                    break;
                }
                x[i] = lo[i].clone();
            }
        }
    }

    /// Pairs of vertex indices spanning 1-dimensional faces, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let tight: Vec<Vec<usize>> = self.vertices.iter().map(|v| self.tight_facets(v)).collect();
        let mut out = Vec::new();
        for i in 0..self.vertices.len() {
            for j in i + 1..self.vertices.len() {
                let common: Vec<usize> = tight[i].iter().filter(|f| tight[j].contains(f)).copied().collect();
                if common.len() + 1 < self.dim {
                    continue;
                }
                if self.normal_rank(&common) == self.dim - 1 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub(crate) fn tight_facets(&self, x: &[Int]) -> Vec<usize> {
        (0..self.facets.len()).filter(|&f| self.facets[f].is_tight(x)).collect()
    }

    fn normal_rank(&self, facet_ids: &[usize]) -> usize {
        let rows: Vec<IntVector> = facet_ids.iter().map(|&f| self.facets[f].normal.clone()).collect();
        linalg::rank(&linalg::to_rational(&Matrix::from_rows(self.dim, &rows)))
    }

    /// Image under `x -> g x + shift`.
    pub fn affine_image(&self, g: &IntMatrix, shift: &[Int]) -> Result<Self, PolytopeError> {
        let pts = self
            .vertices
            .iter()
            .map(|v| g.mul_vec(v).into_iter().zip(shift).map(|(a, b)| a + b).collect())
            .collect();
        LatticePolytope::hull(self.dim, pts)
    }

    /// The standard simplex conv(0, e_1, ..., e_n).
    pub fn unit_simplex(n: usize) -> Self {
        let mut pts = vec![vec![Int::zero(); n]];
        pts.extend((0..n).map(|i| unit(n, i, 1)));
        LatticePolytope::new(n, pts).expect("unit simplex is a valid polytope")
    }

    /// conv(0, 2e_1, e_2, ..., e_n).
    pub fn family_a(n: usize) -> Self {
        let mut pts = vec![vec![Int::zero(); n], unit(n, 0, 2)];
        pts.extend((1..n).map(|i| unit(n, i, 1)));
        LatticePolytope::new(n, pts).expect("A(n) is a valid polytope")
    }

    /// conv(0, e_1, ..., e_n, e_1 + e_2); needs `n >= 2`.
    pub fn family_b(n: usize) -> Self {
        assert!(n >= 2, "B(n) needs n >= 2");
        let mut pts = vec![vec![Int::zero(); n]];
        pts.extend((0..n).map(|i| unit(n, i, 1)));
        let mut b = vec![Int::zero(); n];
        b[0] = Int::one();
        b[1] = Int::one();
        pts.push(b);
        LatticePolytope::new(n, pts).expect("B(n) is a valid polytope")
    }

    /// The segment [0, len] in Z^1.
    pub fn segment(len: i64) -> Self {
        LatticePolytope::new(1, vec![vec![Int::zero()], vec![Int::from(len)]]).expect("segment of positive length")
    }
}

impl fmt::Display for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv({})", self.vertices.iter().map(|v| fmt_point(v)).join(", "))
    }
}

pub(crate) fn unit(n: usize, i: usize, scale: i64) -> IntVector {
    let mut v = vec![Int::zero(); n];
    v[i] = Int::from(scale);
    v
}

fn check_points(dim: usize, points: Vec<IntVector>, strict: bool) -> Result<Vec<IntVector>, PolytopeError> {
    if dim == 0 {
        return Err(PolytopeError::ZeroDimension);
    }
    if points.is_empty() {
        return Err(PolytopeError::Empty);
    }
    if let Some(p) = points.iter().find(|p| p.len() != dim) {
        return Err(PolytopeError::DimensionMismatch { point: fmt_point(p), got: p.len(), expected: dim });
    }
    let mut seen = BTreeSet::new();
    for p in &points {
        if !seen.insert(p.clone()) && strict {
            return Err(PolytopeError::DuplicatePoint(fmt_point(p)));
        }
    }
    let sorted: Vec<IntVector> = seen.into_iter().collect();
    let diffs: Vec<IntVector> = sorted[1..]
        .iter()
        .map(|p| p.iter().zip(&sorted[0]).map(|(a, b)| a - b).collect())
        .collect();
    let affine_dim = linalg::rank(&linalg::to_rational(&Matrix::from_rows(dim, &diffs)));
    if affine_dim < dim {
        return Err(PolytopeError::NotFullDimensional { dim, affine_dim });
    }
    Ok(sorted)
}

/// Supporting hyperplanes through `dim` affinely independent points with all
/// points on one side. Assumes the points are full dimensional.
fn facets_of(dim: usize, points: &[IntVector]) -> Vec<Halfspace> {
    let mut found = BTreeSet::new();
    for subset in (0..points.len()).combinations(dim) {
        let base = &points[subset[0]];
        let diffs: Vec<Vec<Rat>> = subset[1..]
            .iter()
            .map(|&i| points[i].iter().zip(base).map(|(a, b)| Rat::from_integer(a - b)).collect())
            .collect();
        let ker = nullspace(&Matrix::from_rows(dim, &diffs));
        if ker.len() != 1 {
            continue;
        }
        let normal = ker.into_iter().next().unwrap();
        let offset = dot(&normal, base);
        let values: Vec<Int> = points.iter().map(|p| dot(&normal, p)).collect();
        if values.iter().all(|v| v <= &offset) {
            found.insert(Halfspace { normal, offset });
        } else if values.iter().all(|v| v >= &offset) {
            found.insert(Halfspace {
                normal: normal.iter().map(|x| -x).collect(),
                offset: -offset,
            });
        }
    }
    found.into_iter().collect()
}

/// A point of a full-dimensional polytope is a vertex iff the normals of the
/// facets through it span the whole dual space.
fn is_extreme(dim: usize, facets: &[Halfspace], p: &[Int]) -> bool {
    let rows: Vec<IntVector> = facets.iter().filter(|h| h.is_tight(p)).map(|h| h.normal.clone()).collect();
    rows.len() >= dim && linalg::rank(&linalg::to_rational(&Matrix::from_rows(dim, &rows))) == dim
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vec;

    fn hs(normal: &[i64], offset: i64) -> Halfspace {
        Halfspace { normal: int_vec(normal), offset: Int::from(offset) }
    }

    fn pts(rows: &[&[i64]]) -> Vec<IntVector> {
        rows.iter().map(|r| int_vec(r)).collect()
    }

    #[test]
    fn facets_of_a2() {
        let p = LatticePolytope::family_a(2);
        assert_eq!(p.facets(), &[hs(&[-1, 0], 0), hs(&[0, -1], 0), hs(&[1, 2], 2)]);
    }

    #[test]
    fn facets_of_b3() {
        let p = LatticePolytope::family_b(3);
        let got: BTreeSet<Halfspace> = p.facets().iter().cloned().collect();
        let want: BTreeSet<Halfspace> = [
            hs(&[-1, 0, 0], 0),
            hs(&[0, -1, 0], 0),
            hs(&[0, 0, -1], 0),
            hs(&[1, 0, 1], 1),
            hs(&[0, 1, 1], 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(got, want);
        // canonical order is lexicographic in (normal, offset)
        assert!(p.facets().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn facets_of_unit_segment() {
        let p = LatticePolytope::segment(1);
        assert_eq!(p.facets(), &[hs(&[-1], 0), hs(&[1], 1)]);
    }

    #[test]
    fn lower_dimensional_input_is_rejected() {
        let err = LatticePolytope::new(2, pts(&[&[0, 0], &[1, 1], &[2, 2]])).unwrap_err();
        assert_eq!(err, PolytopeError::NotFullDimensional { dim: 2, affine_dim: 1 });
        let err = LatticePolytope::hull(3, pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]])).unwrap_err();
        assert!(matches!(err, PolytopeError::NotFullDimensional { .. }));
    }

    #[test]
    fn non_vertices_are_rejected_or_dropped() {
        let raw = pts(&[&[0, 0], &[1, 0], &[2, 0], &[0, 1]]);
        assert_eq!(
            LatticePolytope::new(2, raw.clone()).unwrap_err(),
            PolytopeError::NotAVertex("(1, 0)".into())
        );
        let p = LatticePolytope::hull(2, raw).unwrap();
        assert_eq!(p, LatticePolytope::family_a(2));
        assert!(matches!(
            LatticePolytope::new(1, pts(&[&[0], &[0], &[1]])),
            Err(PolytopeError::DuplicatePoint(_))
        ));
    }

    #[test]
    fn lattice_points_examples() {
        assert_eq!(
            LatticePolytope::family_a(2).lattice_points(),
            pts(&[&[0, 0], &[0, 1], &[1, 0], &[2, 0]])
        );
        assert_eq!(
            LatticePolytope::family_b(2).lattice_points(),
            pts(&[&[0, 0], &[0, 1], &[1, 0], &[1, 1]])
        );
        assert_eq!(LatticePolytope::unit_simplex(2).lattice_point_count(), 3);
    }

    #[test]
    fn edge_counts() {
        assert_eq!(LatticePolytope::family_a(2).edges().len(), 3);
        let square = LatticePolytope::family_b(2);
        let e = square.edges();
        assert_eq!(e.len(), 4);
        // the diagonals (0,0)-(1,1) and (0,1)-(1,0) are not edges
        let v = square.vertices();
        for (i, j) in e {
            let d: IntVector = v[i].iter().zip(&v[j]).map(|(a, b)| a - b).collect();
            assert_eq!(d.iter().filter(|x| !x.is_zero()).count(), 1);
        }
        assert_eq!(LatticePolytope::segment(1).edges(), vec![(0, 1)]);
    }

    /// An edge is a pair of vertices whose midpoint cannot be written as a
    /// midpoint of two other points of the polytope off that segment. Checked
    /// here with the supporting-functional characterization: the pair is an
    /// edge iff some facet-normal combination is maximized exactly on it.
    #[test]
    fn b3_edges_match_brute_force_oracle() {
        let p = LatticePolytope::family_b(3);
        let v = p.vertices().to_vec();
        // oracle: search small integer functionals c whose maximum over the
        // vertices is attained at exactly the two endpoints
        let mut oracle = BTreeSet::new();
        let r = -3..=3i64;
        for a in r.clone() {
            for b in r.clone() {
                for c in r.clone() {
                    let f = int_vec(&[a, b, c]);
                    let vals: Vec<Int> = v.iter().map(|x| dot(&f, x)).collect();
                    let max = vals.iter().max().unwrap();
                    let at: Vec<usize> = (0..v.len()).filter(|&i| &vals[i] == max).collect();
                    if at.len() == 2 {
                        oracle.insert((at[0], at[1]));
                    }
                }
            }
        }
        let got: BTreeSet<(usize, usize)> = p.edges().into_iter().collect();
        assert_eq!(got, oracle);
        assert_eq!(got.len(), 8);
    }

    #[test]
    fn halfspace_display() {
        assert_eq!(hs(&[1, 2], 2).to_string(), "x1 + 2*x2 <= 2");
        assert_eq!(hs(&[-1, 0], 0).to_string(), "-x1 <= 0");
    }
}
