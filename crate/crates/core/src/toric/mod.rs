//! From a lattice polytope to its projective toric variety: the monomial
//! embedding, the binomial equation in the hypersurface case, the normal fan,
//! the divisor class group, and automorphism data read off the Cox ring.

mod class_group;
mod components;
mod cox;
mod fan;
mod quadric;

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{self, Int, IntMatrix, IntVector, Matrix};
use crate::polytope::LatticePolytope;

pub use class_group::{class_group, ClassDegree, ClassGroup};
pub use components::{component_group_order, fan_automorphisms, FanAutomorphism, MAX_RAYS};
pub use cox::{cox_aut_report, monomials_of_degree, CoxAutReport, DegreeBlock};
pub use fan::{normal_fan, Fan};
pub use quadric::{monomial_pairs, QuadraticForm};

pub(crate) use quadric::push_term;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ToricError {
    #[error("the exponent matrix has a kernel of rank {kernel_rank}, expected 1")]
    NotHypersurface { kernel_rank: usize },
    #[error("the rays span a sublattice of rank {rank} in a lattice of rank {dim}")]
    RaysDoNotSpan { rank: usize, dim: usize },
    #[error("the variable degrees do not lie in a pointed cone")]
    UnpointedGrading,
    #[error("{count} rays exceed the enumeration limit of {limit}")]
    TooManyRays { count: usize, limit: usize },
    #[error("invalid fan: {0}")]
    InvalidFan(String),
}

/// Columns `(1, m)` over the lattice points `m` of a polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentMatrix {
    /// Column order, colexicographic (last coordinate most significant), so
    /// that `0, e_1, 2e_1, ..., e_2, ...` come first.
    pub points: Vec<IntVector>,
    pub matrix: IntMatrix,
}

pub fn colex_cmp(a: &[Int], b: &[Int]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

pub fn exponent_matrix(p: &LatticePolytope) -> ExponentMatrix {
    let mut points = p.lattice_points();
    points.sort_by(|a, b| colex_cmp(a, b));
    let columns: Vec<IntVector> = points
        .iter()
        .map(|m| std::iter::once(Int::one()).chain(m.iter().cloned()).collect())
        .collect();
    let matrix = Matrix::from_columns(p.dim() + 1, &columns);
    ExponentMatrix { points, matrix }
}

/// `z^plus - z^minus` in the coordinates `z_0, ..., z_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialEquation {
    pub plus: IntVector,
    pub minus: IntVector,
}

impl BinomialEquation {
    /// Splits a kernel vector into positive and negative parts.
    pub fn from_kernel_vector(u: &[Int]) -> Self {
        let plus = u.iter().map(|x| if x.is_positive() { x.clone() } else { Int::zero() }).collect();
        let minus = u.iter().map(|x| if x.is_negative() { -x } else { Int::zero() }).collect();
        BinomialEquation { plus, minus }
    }

    pub fn kernel_vector(&self) -> IntVector {
        self.plus.iter().zip(&self.minus).map(|(a, b)| a - b).collect()
    }

    pub fn degree(&self) -> Int {
        self.plus.iter().sum()
    }

    /// The symmetric-matrix form of a quadratic binomial.
    pub fn quadratic_form(&self) -> Option<QuadraticForm> {
        if self.degree() != Int::from(2) {
            return None;
        }
        let n = self.plus.len();
        let terms = [(&self.plus, 1), (&self.minus, -1)]
            .into_iter()
            .map(|(e, sign)| {
                let idx: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat(i).take(to_usize(&e[i]))).collect();
                (idx[0], idx[1], linalg::Rat::from_integer(Int::from(sign)))
            })
            .collect::<Vec<_>>();
        Some(QuadraticForm::from_terms(n, &terms))
    }
}

fn to_usize(x: &Int) -> usize {
    usize::try_from(x).expect("small exponent")
}

fn monomial(e: &[Int], var: &str) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, k)| !k.is_zero())
        .map(|(i, k)| if k.is_one() { format!("{var}{i}") } else { format!("{var}{i}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for BinomialEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}", monomial(&self.plus, "z"), monomial(&self.minus, "z"))
    }
}

/// The single binomial cutting out the toric variety when the polytope has
/// `n + 2` lattice points.
pub fn hypersurface_equation(p: &LatticePolytope) -> Result<BinomialEquation, ToricError> {
    let e = exponent_matrix(p);
    let ker = linalg::nullspace(&linalg::to_rational(&e.matrix));
    if ker.len() != 1 {
        return Err(ToricError::NotHypersurface { kernel_rank: ker.len() });
    }
    Ok(BinomialEquation::from_kernel_vector(&ker[0]))
}
