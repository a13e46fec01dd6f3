//! The inscribed-in-a-rectangle criterion: a vertex whose primitive edge
//! directions form a lattice basis, such that every facet missing that vertex
//! has a normal pairing nonnegatively with each of those directions.

use num_traits::{One, Signed};

use super::{LatticePolytope, PolytopeError};
use crate::linalg::{self, determinant, dot, primitive_direction, IntMatrix, IntVector, Matrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InscribedWitness {
    pub vertex: IntVector,
    /// Primitive edge directions at `vertex`, sorted in descending
    /// lexicographic order so the standard basis comes out as e_1, ..., e_n.
    pub basis: Vec<IntVector>,
}

impl InscribedWitness {
    /// Matrix with the basis vectors as columns.
    pub fn basis_matrix(&self) -> IntMatrix {
        let n = self.vertex.len();
        Matrix::from_columns(n, &self.basis)
    }
}

impl LatticePolytope {
    /// Primitive directions of the edges at vertex `i`.
    pub fn edge_directions_at(&self, i: usize) -> Vec<IntVector> {
        let v = &self.vertices[i];
        let mut dirs: Vec<IntVector> = self
            .edges()
            .into_iter()
            .filter_map(|(a, b)| match (a == i, b == i) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .map(|j| primitive_direction(&self.vertices[j].iter().zip(v).map(|(x, y)| x - y).collect::<Vec<_>>()))
            .collect();
        dirs.sort_by(|a, b| b.cmp(a));
        dirs
    }

    /// Checks the criterion at vertex `i`.
    pub fn witness_at(&self, i: usize) -> Option<InscribedWitness> {
        let basis = self.edge_directions_at(i);
        // a lattice basis needs exactly n vectors, so v0 must be simple
        if basis.len() != self.dim {
            return None;
        }
        let w = InscribedWitness { vertex: self.vertices[i].clone(), basis };
        if !determinant(&w.basis_matrix()).abs().is_one() {
            return None;
        }
        let ok = self
            .facets
            .iter()
            .filter(|h| !h.is_tight(&w.vertex))
            .all(|h| w.basis.iter().all(|e| !dot(&h.normal, e).is_negative()));
        ok.then_some(w)
    }

    /// First witness, trying vertices in lexicographic order.
    pub fn inscribed_witness(&self) -> Option<InscribedWitness> {
        (0..self.vertices.len()).find_map(|i| self.witness_at(i))
    }

    /// Every vertex at which the criterion holds, in lexicographic order.
    pub fn inscribed_witnesses(&self) -> Vec<InscribedWitness> {
        (0..self.vertices.len()).filter_map(|i| self.witness_at(i)).collect()
    }

    pub fn is_inscribed_in_rectangle(&self) -> bool {
        self.inscribed_witness().is_some()
    }

    /// Moves the witness vertex to the origin and its edge basis to the
    /// standard basis. The image lies in the nonnegative orthant.
    pub fn normalize_at_vertex(&self, w: &InscribedWitness) -> Result<LatticePolytope, PolytopeError> {
        let b = w.basis_matrix();
        let det = determinant(&b);
        if !det.abs().is_one() {
            return Err(PolytopeError::InvalidWitness(det.to_string()));
        }
        let inv = linalg::inverse(&linalg::to_rational(&b)).expect("unimodular matrix is invertible");
        let g = inv.map(|x| x.to_integer());
        let shift: IntVector = g.mul_vec(&w.vertex).into_iter().map(|x| -x).collect();
        self.affine_image(&g, &shift)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vec;

    fn poly(rows: &[&[i64]]) -> LatticePolytope {
        LatticePolytope::new(rows[0].len(), rows.iter().map(|r| int_vec(r)).collect()).unwrap()
    }

    #[test]
    fn family_a_has_origin_witness() {
        for n in 2..=4 {
            let p = LatticePolytope::family_a(n);
            let w = p.inscribed_witness().expect("A(n) is inscribed");
            assert!(w.vertex.iter().all(num_traits::Zero::is_zero));
            assert_eq!(w.basis_matrix(), IntMatrix::identity(n));
            assert_eq!(p.normalize_at_vertex(&w).unwrap(), p);
        }
    }

    #[test]
    fn unit_simplex_has_origin_witness() {
        let p = LatticePolytope::unit_simplex(3);
        let w = p.inscribed_witness().unwrap();
        assert_eq!(w.vertex, int_vec(&[0, 0, 0]));
    }

    #[test]
    fn skew_triangle_is_a_hidden_copy_of_a2() {
        // at (0,0) the edge directions (2,1), (0,1) have determinant 2, but at
        // (0,1) the directions (1,0), (0,-1) work and the only facet missing
        // (0,1) has normal (1,-2), which pairs to 1 and 2 with them
        let p = poly(&[&[0, 0], &[2, 1], &[0, 1]]);
        assert!(p.witness_at(0).is_none());
        let w = p.inscribed_witness().unwrap();
        assert_eq!(w.vertex, int_vec(&[0, 1]));
        assert_eq!(w.basis, vec![int_vec(&[1, 0]), int_vec(&[0, -1])]);
        assert_eq!(p.normalize_at_vertex(&w).unwrap(), LatticePolytope::family_a(2));
    }

    #[test]
    fn non_inscribed_polygon() {
        // every vertex of this triangle has edge directions of determinant 3
        let p = poly(&[&[0, 0], &[2, 1], &[1, 2]]);
        assert!(p.inscribed_witness().is_none());
        // the cross-polytope has 4 edges at each vertex in dimension 3
        let o = poly(&[&[-1, 0, 0], &[1, 0, 0], &[0, -1, 0], &[0, 1, 0], &[0, 0, -1], &[0, 0, 1]]);
        assert!(!o.is_inscribed_in_rectangle());
    }

    #[test]
    fn condition_on_far_facets_matters() {
        // a unimodular triangle corner at the origin, but the far facet
        // x1 - x2 <= 1 pairs negatively with e2
        let p = poly(&[&[0, 0], &[1, 0], &[0, 1], &[2, 1]]);
        assert!(p.witness_at(0).is_none());
    }

    #[test]
    fn translation_is_undone() {
        let a2 = LatticePolytope::family_a(2);
        let moved = a2.affine_image(&IntMatrix::identity(2), &int_vec(&[5, 7])).unwrap();
        let w = moved.inscribed_witness().unwrap();
        assert_eq!(moved.normalize_at_vertex(&w).unwrap(), a2);
    }

    #[test]
    fn bad_witness_is_rejected() {
        let p = LatticePolytope::family_a(2);
        let w = InscribedWitness { vertex: int_vec(&[0, 0]), basis: vec![int_vec(&[2, 0]), int_vec(&[0, 1])] };
        assert_eq!(p.normalize_at_vertex(&w).unwrap_err(), PolytopeError::InvalidWitness("2".into()));
    }
}
