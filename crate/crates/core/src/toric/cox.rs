//! Dimension count for the connected automorphism group via the Cox ring.
//!
//! Graded automorphisms of the Cox ring form `G_s ⋉ R_u`, where `G_s` is the
//! product of `GL(S'_a)` over the degrees `a` carried by variables, and `R_u`
//! is unipotent of dimension `sum_i dim S''_{deg x_i}` (monomials of the degree
//! of `x_i` that are not variables). Dividing by the quasitorus `H_X`, whose
//! dimension is the free rank of the class group, gives `Aut^0(X)`.

use num_integer::Integer;
use num_traits::Zero;

use super::{class_group, ClassDegree, ClassGroup, Fan, ToricError};
use crate::linalg::{dot, positive_functional, Int, IntVector};

/// Variables sharing one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeBlock {
    pub degree: ClassDegree,
    pub variables: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxAutReport {
    pub class_group: ClassGroup,
    /// Strictly positive on every free degree; bounds monomial enumeration.
    pub functional: IntVector,
    /// In order of first occurrence among the variables.
    pub gs_blocks: Vec<DegreeBlock>,
    /// `dim S''_{deg x_i}` for each variable.
    pub non_variable_monomials: Vec<usize>,
    pub gs_dim: usize,
    pub ru_dim: usize,
    pub h_dim: usize,
    pub aut0_dim: usize,
}

/// Exponent vectors of all monomials of degree `target` in the Cox ring,
/// in lexicographic order. `functional` must be positive on all free degrees.
pub fn monomials_of_degree(group: &ClassGroup, functional: &[Int], target: &ClassDegree) -> Vec<IntVector> {
    let weights: Vec<Int> = group.degrees.iter().map(|d| dot(functional, &d.free)).collect();
    let budget = dot(functional, &target.free);
    let mut out = Vec::new();
    let mut exps = vec![Int::zero(); group.degrees.len()];
    search(group, &weights, target, 0, budget, &mut exps, &mut out);
    out
}

fn search(
    group: &ClassGroup,
    weights: &[Int],
    target: &ClassDegree,
    var: usize,
    budget: Int,
    exps: &mut IntVector,
    out: &mut Vec<IntVector>,
) {
    if var == weights.len() {
        if budget.is_zero() && &group.class_of(exps) == target {
            out.push(exps.clone());
        }
        return;
    }
    let max = budget.div_floor(&weights[var]);
    let mut k = Int::zero();
    while k <= max {
        exps[var] = k.clone();
        search(group, weights, target, var + 1, &budget - &k * &weights[var], exps, out);
        k += 1;
    }
    exps[var] = Int::zero();
}

pub fn cox_aut_report(fan: &Fan) -> Result<CoxAutReport, ToricError> {
    let group = class_group(fan)?;
    let free: Vec<IntVector> = group.degrees.iter().map(|d| d.free.clone()).collect();
    let functional = positive_functional(&free).ok_or(ToricError::UnpointedGrading)?;

    let mut gs_blocks: Vec<DegreeBlock> = Vec::new();
    for (i, d) in group.degrees.iter().enumerate() {
        match gs_blocks.iter_mut().find(|b| &b.degree == d) {
            Some(b) => b.variables.push(i),
            None => gs_blocks.push(DegreeBlock { degree: d.clone(), variables: vec![i] }),
        }
    }
    let block_extra: Vec<usize> = gs_blocks
        .iter()
        .map(|b| {
            let all = monomials_of_degree(&group, &functional, &b.degree);
            all.len() - b.variables.len()
        })
        .collect();
    let non_variable_monomials: Vec<usize> = group
        .degrees
        .iter()
        .map(|d| block_extra[gs_blocks.iter().position(|b| &b.degree == d).unwrap()])
        .collect();

    let gs_dim = gs_blocks.iter().map(|b| b.variables.len().pow(2)).sum();
    let ru_dim = non_variable_monomials.iter().sum();
    let h_dim = group.free_rank;
    Ok(CoxAutReport {
        aut0_dim: gs_dim + ru_dim - h_dim,
        class_group: group,
        functional,
        gs_blocks,
        non_variable_monomials,
        gs_dim,
        ru_dim,
        h_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vec;
    use crate::polytope::LatticePolytope;
    use crate::toric::normal_fan;

    #[test]
    fn family_a_counts() {
        let r = cox_aut_report(&normal_fan(&LatticePolytope::family_a(3))).unwrap();
        let sizes: Vec<usize> = r.gs_blocks.iter().map(|b| b.variables.len()).collect();
        assert_eq!(sizes, vec![2, 2]);
        assert_eq!((r.ru_dim, r.h_dim, r.aut0_dim), (6, 1, 13));
        let r2 = cox_aut_report(&normal_fan(&LatticePolytope::family_a(2))).unwrap();
        assert_eq!(r2.aut0_dim, 7);
        for n in 2..=5 {
            let r = cox_aut_report(&normal_fan(&LatticePolytope::family_a(n))).unwrap();
            assert_eq!(r.ru_dim, 3 * (n - 1));
            assert_eq!(r.aut0_dim, 4 + (n - 1).pow(2) + 3 * (n - 1) - 1);
        }
    }

    #[test]
    fn family_b_counts() {
        let r = cox_aut_report(&normal_fan(&LatticePolytope::family_b(2))).unwrap();
        assert_eq!((r.gs_dim, r.ru_dim, r.h_dim, r.aut0_dim), (8, 0, 2, 6));
        for n in 2..=5 {
            let r = cox_aut_report(&normal_fan(&LatticePolytope::family_b(n))).unwrap();
            assert_eq!(r.ru_dim, 4 * (n - 2));
            assert_eq!(r.aut0_dim, 8 + (n - 2).pow(2) + 4 * (n - 2) - 2);
        }
    }

    /// Independent count of graded substitutions for P(1,1,2): x, y of degree
    /// 1 go to linear forms in x, y (4 parameters), z goes to a combination of
    /// z, x^2, xy, y^2 (4 parameters), minus the 1-dimensional torus.
    #[test]
    fn weighted_plane_matches_substitution_count() {
        let r = cox_aut_report(&normal_fan(&LatticePolytope::family_a(2))).unwrap();
        assert_eq!(r.aut0_dim, 4 + 4 - 1);
    }

    #[test]
    fn monomial_enumeration() {
        let fan = normal_fan(&LatticePolytope::family_a(2));
        let r = cox_aut_report(&fan).unwrap();
        let two = ClassDegree { free: int_vec(&[2]), torsion: vec![] };
        // degrees (1, 2, 1): x1^2, x1 x3, x3^2, x2
        let m = monomials_of_degree(&r.class_group, &r.functional, &two);
        assert_eq!(m.len(), 4);
        assert!(m.contains(&int_vec(&[0, 1, 0])));
    }

    #[test]
    fn projective_space_has_pgl_dimension() {
        for n in 1..=4 {
            let r = cox_aut_report(&normal_fan(&LatticePolytope::unit_simplex(n))).unwrap();
            assert_eq!(r.aut0_dim, (n + 1) * (n + 1) - 1);
        }
    }

    #[test]
    fn unpointed_grading_is_reported() {
        // an incomplete fan: the variable of the ray (0, 1) has degree zero
        let rays = vec![int_vec(&[1, 0]), int_vec(&[-1, 0]), int_vec(&[0, 1])];
        let fan = Fan::new(rays, vec![vec![0, 2], vec![1, 2]]).unwrap();
        assert_eq!(cox_aut_report(&fan), Err(ToricError::UnpointedGrading));
    }
}
