//! The divisor class group as the cokernel of `M -> Z^rays`,
//! `u -> (<rho_i, u>)_i`.
//!
//! With `U R V = D` the Smith form of the ray matrix `R` (rays as rows), the
//! cokernel is read off in the coordinates given by `U`: rows of `U` past the
//! rank give the free part, rows at a pivot `d > 1` give a `Z/d` summand. The
//! free part is then put in Hermite normal form so that the output does not
//! depend on the choices made during elimination.

use std::fmt;

use itertools::Itertools;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Fan, ToricError};
use crate::linalg::{hermite_normal_form, smith_normal_form, Int, IntMatrix, IntVector, Matrix};

/// An element of `Z^r ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k`, torsion entries reduced into
/// `[0, t_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassDegree {
    pub free: IntVector,
    pub torsion: IntVector,
}

impl fmt::Display for ClassDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.free.iter().chain(&self.torsion).join(", ");
        if self.free.len() + self.torsion.len() == 1 {
            write!(f, "{parts}")
        } else {
            write!(f, "({parts})")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGroup {
    pub free_rank: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<Int>,
    /// Class of the divisor of each ray, in ray order.
    pub degrees: Vec<ClassDegree>,
}

impl ClassGroup {
    /// The degree matrix of the free part, one column per ray.
    pub fn free_degree_matrix(&self) -> IntMatrix {
        let cols: Vec<IntVector> = self.degrees.iter().map(|d| d.free.clone()).collect();
        Matrix::from_columns(self.free_rank, &cols)
    }

    /// Class of `sum c_i D_i`.
    pub fn class_of(&self, coeffs: &[Int]) -> ClassDegree {
        let mut free = vec![Int::zero(); self.free_rank];
        let mut torsion = vec![Int::zero(); self.torsion.len()];
        for (c, d) in coeffs.iter().zip(&self.degrees) {
            for (a, b) in free.iter_mut().zip(&d.free) {
                *a += c * b;
            }
            for (a, b) in torsion.iter_mut().zip(&d.torsion) {
                *a += c * b;
            }
        }
        for (a, t) in torsion.iter_mut().zip(&self.torsion) {
            *a = a.mod_floor(t);
        }
        ClassDegree { free, torsion }
    }

    /// Short description like `Z`, `Z^2` or `Z + Z/2`.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

pub fn class_group(fan: &Fan) -> Result<ClassGroup, ToricError> {
    let n = fan.dim();
    let m = fan.rays().len();
    let r = Matrix::from_rows(n, fan.rays());
    let snf = smith_normal_form(&r);
    let rank = snf.rank();
    if rank < n {
        return Err(ToricError::RaysDoNotSpan { rank, dim: n });
    }
    let factors = snf.invariant_factors();
    let torsion_rows: Vec<usize> = (0..rank).filter(|&j| !factors[j].is_one()).collect();
    let torsion: Vec<Int> = torsion_rows.iter().map(|&j| factors[j].clone()).collect();

    let free_rows: Vec<IntVector> = (rank..m).map(|j| snf.u.row(j).to_vec()).collect();
    let free = hermite_normal_form(&Matrix::from_rows(m, &free_rows));

    let degrees = (0..m)
        .map(|i| ClassDegree {
            free: (0..m - rank).map(|j| free[(j, i)].clone()).collect(),
            torsion: torsion_rows
                .iter()
                .zip(&torsion)
                .map(|(&j, t)| snf.u[(j, i)].mod_floor(t))
                .collect(),
        })
        .collect();
    Ok(ClassGroup { free_rank: m - rank, torsion, degrees })
}
