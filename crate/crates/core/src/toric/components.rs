//! Order of `Aut(N, Σ) / Aut^0(N, Σ)`: lattice automorphisms permuting the
//! fan, modulo those that fix every divisor class.
//!
//! A lattice automorphism is determined by the images of `n` independent
//! rays, so candidates are enumerated as injective assignments of a fixed
//! basis of rays rather than as full permutations.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{One, Signed};

use super::{class_group, Fan, ToricError};
use crate::linalg::{self, determinant, integral, IntMatrix, Matrix};

pub const MAX_RAYS: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanAutomorphism {
    pub matrix: IntMatrix,
    /// `matrix * ray_i = ray_{permutation[i]}`
    pub permutation: Vec<usize>,
}

/// All lattice automorphisms mapping the set of maximal cones to itself.
pub fn fan_automorphisms(fan: &Fan) -> Result<Vec<FanAutomorphism>, ToricError> {
    let n = fan.dim();
    let rays = fan.rays();
    let m = rays.len();
    if m > MAX_RAYS {
        return Err(ToricError::TooManyRays { count: m, limit: MAX_RAYS });
    }
    let basis = independent_rays(fan).ok_or_else(|| {
        let rank = linalg::rank(&linalg::to_rational(&Matrix::from_rows(n, rays)));
        ToricError::RaysDoNotSpan { rank, dim: n }
    })?;
    let source = linalg::to_rational(&Matrix::from_columns(n, &basis.iter().map(|&i| rays[i].clone()).collect::<Vec<_>>()));
    let source_inv = linalg::inverse(&source).expect("independent rays");
    let cones: BTreeSet<Vec<usize>> = fan.max_cones().iter().cloned().collect();

    let mut out = Vec::new();
    for image in (0..m).permutations(n) {
        let target = linalg::to_rational(&Matrix::from_columns(n, &image.iter().map(|&i| rays[i].clone()).collect::<Vec<_>>()));
        let g = target.mul(&source_inv);
        let Some(entries) = integral(g.to_rows().concat().as_slice()) else {
            continue;
        };
        let g = Matrix::new(n, n, entries);
        if !determinant(&g).abs().is_one() {
            continue;
        }
        let Some(permutation) = rays.iter().map(|r| rays.iter().position(|s| s == &g.mul_vec(r))).collect::<Option<Vec<usize>>>() else {
            continue;
        };
        let maps_cones = fan.max_cones().iter().all(|c| {
            let mut img: Vec<usize> = c.iter().map(|&i| permutation[i]).collect();
            img.sort_unstable();
            cones.contains(&img)
        });
        if maps_cones {
            out.push(FanAutomorphism { matrix: g, permutation });
        }
    }
    Ok(out)
}

/// `|Aut(N, Σ)| / |Aut^0(N, Σ)|`, where `Aut^0` fixes the class of every
/// torus-invariant prime divisor.
pub fn component_group_order(fan: &Fan) -> Result<usize, ToricError> {
    let autos = fan_automorphisms(fan)?;
    let group = class_group(fan)?;
    let trivial_on_classes = autos
        .iter()
        .filter(|a| a.permutation.iter().enumerate().all(|(i, &j)| group.degrees[i] == group.degrees[j]))
        .count();
    Ok(autos.len() / trivial_on_classes)
}

/// Greedy choice of `dim` linearly independent rays.
fn independent_rays(fan: &Fan) -> Option<Vec<usize>> {
    let n = fan.dim();
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..fan.rays().len() {
        let mut rows: Vec<_> = chosen.iter().map(|&j| fan.rays()[j].clone()).collect();
        rows.push(fan.rays()[i].clone());
        if linalg::rank(&linalg::to_rational(&Matrix::from_rows(n, &rows))) == rows.len() {
            chosen.push(i);
            if chosen.len() == n {
                return Some(chosen);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vec;
    use crate::polytope::LatticePolytope;
    use crate::toric::normal_fan;

    #[test]
    fn family_orders() {
        for n in 2..=4 {
            assert_eq!(component_group_order(&normal_fan(&LatticePolytope::family_a(n))).unwrap(), 1);
            assert_eq!(component_group_order(&normal_fan(&LatticePolytope::family_b(n))).unwrap(), 2);
        }
    }

    #[test]
    fn projective_plane_symmetries() {
        let fan = normal_fan(&LatticePolytope::unit_simplex(2));
        assert_eq!(fan_automorphisms(&fan).unwrap().len(), 6);
        assert_eq!(component_group_order(&fan).unwrap(), 1);
    }

    /// The square fan has the dihedral group of order 8 as symmetries; the
    /// four that swap the two rulings act nontrivially on the class group.
    #[test]
    fn square_symmetries_by_direct_enumeration() {
        let fan = normal_fan(&LatticePolytope::family_b(2));
        let autos = fan_automorphisms(&fan).unwrap();
        assert_eq!(autos.len(), 8);
        let swapping = autos.iter().filter(|a| a.matrix[(0, 0)] == 0.into()).count();
        assert_eq!(swapping, 4);
    }

    #[test]
    fn too_many_rays() {
        // a 12-gon style fan in dimension 2 with 11 rays
        let rays: Vec<_> = [[1, 0], [2, 1], [1, 1], [1, 2], [0, 1], [-1, 1], [-1, 0], [-1, -1], [0, -1], [1, -1], [1, -2]]
            .iter()
            .map(|r| int_vec(r))
            .collect();
        let cones = (0..11).map(|i| vec![i, (i + 1) % 11]).collect();
        let fan = Fan::new(rays, cones).unwrap();
        assert_eq!(component_group_order(&fan), Err(ToricError::TooManyRays { count: 11, limit: 10 }));
    }
}
