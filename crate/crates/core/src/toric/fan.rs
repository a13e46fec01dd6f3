use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use super::ToricError;
use crate::linalg::{self, content, IntVector, Matrix};
use crate::polytope::{fmt_point, LatticePolytope};

/// A complete fan given by primitive rays and maximal cones (sorted ray
/// index lists).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<IntVector>,
    max_cones: Vec<Vec<usize>>,
}

impl Fan {
    pub fn new(rays: Vec<IntVector>, mut max_cones: Vec<Vec<usize>>) -> Result<Self, ToricError> {
        let dim = rays.first().map(Vec::len).ok_or_else(|| ToricError::InvalidFan("no rays".into()))?;
        if dim == 0 {
            return Err(ToricError::InvalidFan("rays have no coordinates".into()));
        }
        for r in &rays {
            if r.len() != dim {
                return Err(ToricError::InvalidFan(format!("ray {} has {} coordinates, expected {dim}", fmt_point(r), r.len())));
            }
            if !content(r).is_one() {
                return Err(ToricError::InvalidFan(format!("ray {} is not primitive", fmt_point(r))));
            }
        }
        for (i, r) in rays.iter().enumerate() {
            if rays[..i].contains(r) {
                return Err(ToricError::InvalidFan(format!("duplicate ray {}", fmt_point(r))));
            }
        }
        for c in max_cones.iter_mut() {
            c.sort_unstable();
            c.dedup();
            if let Some(&bad) = c.iter().find(|&&i| i >= rays.len()) {
                return Err(ToricError::InvalidFan(format!("cone refers to ray {bad}, only {} rays", rays.len())));
            }
        }
        Ok(Fan { dim, rays, max_cones })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    /// Whether the rays of every maximal cone are linearly independent.
    pub fn is_simplicial(&self) -> bool {
        self.max_cones.iter().all(|c| {
            let rows: Vec<IntVector> = c.iter().map(|&i| self.rays[i].clone()).collect();
            linalg::rank(&linalg::to_rational(&Matrix::from_rows(self.dim, &rows))) == c.len()
        })
    }
}

/// Unit vectors first in coordinate order, then rays with negative entries,
/// each group ordered by the position of the first nonzero entry.
fn ray_order(a: &IntVector, b: &IntVector) -> Ordering {
    let key = |r: &IntVector| {
        (
            r.iter().any(Signed::is_negative),
            r.iter().position(|x| !x.is_zero()).unwrap_or(r.len()),
        )
    };
    key(a).cmp(&key(b)).then_with(|| a.cmp(b))
}

/// Inner facet normals as rays; one maximal cone per vertex, listing the
/// facets through that vertex.
pub fn normal_fan(p: &LatticePolytope) -> Fan {
    let facets = p.facets();
    let mut order: Vec<usize> = (0..facets.len()).collect();
    let inner: Vec<IntVector> = facets.iter().map(|h| h.normal.iter().map(|x| -x).collect()).collect();
    order.sort_by(|&i, &j| ray_order(&inner[i], &inner[j]));
    let rays: Vec<IntVector> = order.iter().map(|&i| inner[i].clone()).collect();
    let position: Vec<usize> = {
        let mut pos = vec![0; facets.len()];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        pos
    };
    let max_cones = p
        .vertices()
        .iter()
        .map(|v| {
            let mut c: Vec<usize> = p.tight_facets(v).into_iter().map(|f| position[f]).collect();
            c.sort_unstable();
            c
        })
        .collect();
    Fan::new(rays, max_cones).expect("normal fan of a polytope is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vec;

    fn rays(rows: &[&[i64]]) -> Vec<IntVector> {
        rows.iter().map(|r| int_vec(r)).collect()
    }

    #[test]
    fn fan_of_family_a() {
        let f = normal_fan(&LatticePolytope::family_a(3));
        assert_eq!(f.rays(), rays(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -2, -2]]).as_slice());
        assert_eq!(f.max_cones().len(), 4);
        assert!(f.is_simplicial());
    }

    #[test]
    fn fan_of_family_b() {
        let f = normal_fan(&LatticePolytope::family_b(4));
        assert_eq!(
            f.rays(),
            rays(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[-1, 0, -1, -1], &[0, -1, -1, -1]])
                .as_slice()
        );
        assert_eq!(f.max_cones().len(), 6);
        // the cone at e_3 has 5 rays in rank 4: the rank-4 quadric is singular
        assert!(!f.is_simplicial());
        assert_eq!(f.max_cones().iter().map(Vec::len).max(), Some(5));
        let square = normal_fan(&LatticePolytope::family_b(2));
        assert_eq!(square.rays(), rays(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]]).as_slice());
        assert!(square.is_simplicial());
    }

    #[test]
    fn fan_of_projective_plane() {
        let f = normal_fan(&LatticePolytope::unit_simplex(2));
        assert_eq!(f.rays(), rays(&[&[1, 0], &[0, 1], &[-1, -1]]).as_slice());
        // vertices in order (0,0), (0,1), (1,0)
        assert_eq!(f.max_cones(), &[vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn malformed_fans_are_rejected() {
        assert!(Fan::new(vec![], vec![]).is_err());
        assert!(Fan::new(rays(&[&[2, 0], &[0, 1]]), vec![vec![0, 1]]).is_err());
        assert!(Fan::new(rays(&[&[1, 0], &[0, 1]]), vec![vec![0, 2]]).is_err());
        assert!(Fan::new(rays(&[&[1, 0], &[0, 1, 0]]), vec![]).is_err());
    }
}
