//! Finite-dimensional local algebras given by structure constants, with the
//! operations needed to pass from a pair `(R, W)` to a projective hypersurface:
//! the exponential on the maximal ideal, generation by a subspace, powers of
//! the maximal ideal, and the degree of the orbit closure of `[1]`.
//!
//! Basis vector `e_0` is always the unit and `m` is spanned by the others.

mod action;
mod catalog;
mod orbit;
mod presentation;

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{row_basis, span_contains, Rat, RatVector};

pub use action::{action_formula, normalized_action, verify_action_formula, verify_additive_action, ActionCheck, ActionKind};
pub use catalog::{catalog, parse_quadric, w_alpha, Catalog, CatalogAlgebra, CatalogPair, CATALOG_SCHEMA_VERSION};
pub use orbit::{
    degree_monomials, fit_hypersurface, orbit_points, orbit_quadric, sample_value, Form, OrbitQuadric, ProjectivePoint,
};
pub use presentation::{parse_monomial, Presentation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("malformed algebra: {0}")]
    Malformed(String),
    #[error("expected a vector of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("element is not in the maximal ideal (its unit coordinate is {0})")]
    NotInMaximalIdeal(String),
    #[error("subspace vectors are linearly dependent")]
    DependentSubspace,
    #[error("subspace has dimension {got}, a hyperplane of the maximal ideal needs {expected}")]
    NotAHyperplane { expected: usize, got: usize },
    #[error("the square of the maximal ideal is zero, so the orbit closure has degree below 2")]
    ZeroIdealImmediately,
    #[error("the subspace does not generate the algebra")]
    DoesNotGenerate,
    #[error("the orbit closure has degree {0}, not 2")]
    DegreeNotTwo(usize),
    #[error("the quadrics through the sampled orbit points form a space of dimension {dimension}, expected 1")]
    NonUniqueQuadric { dimension: usize },
    #[error("the fitted quadric does not vanish at the held-out orbit point {0}")]
    HoldoutMismatch(String),
    #[error("invalid algebra: {0}")]
    Invalid(String),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Commutative algebra with unit `e_0` and structure constants
/// `e_i * e_j = sum_k table[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalAlgebra {
    basis: Vec<String>,
    table: Vec<Vec<RatVector>>,
}

/// Outcome of the exhaustive axiom check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Validation {
    pub commutative: bool,
    pub associative: bool,
    pub unit: bool,
    pub nilpotent: bool,
    /// Description of the first failing basis index tuple.
    pub first_violation: Option<String>,
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        self.commutative && self.associative && self.unit && self.nilpotent
    }
}

/// A subspace of the maximal ideal given by linearly independent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: Vec<RatVector>,
}

impl Subspace {
    pub fn basis(&self) -> &[RatVector] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `sum c_i w_i`.
    pub fn combination(&self, coeffs: &[Rat]) -> RatVector {
        let n = self.basis.first().map_or(0, Vec::len);
        let mut out = vec![Rat::zero(); n];
        for (c, w) in coeffs.iter().zip(&self.basis) {
            for (o, x) in out.iter_mut().zip(w) {
                *o += c * x;
            }
        }
        out
    }
}

impl LocalAlgebra {
    /// Checks only the shape of the table; see [`LocalAlgebra::validate`] for
    /// the axioms.
    pub fn new(basis: Vec<String>, table: Vec<Vec<RatVector>>) -> Result<Self, AlgebraError> {
        let n = basis.len();
        if n < 2 {
            return Err(AlgebraError::Malformed(format!("dimension {n} is below 2")));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|v| v.len() != n)) {
            return Err(AlgebraError::Malformed(format!("structure constants must form a {n}x{n}x{n} array")));
        }
        Ok(LocalAlgebra { basis, table })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn table(&self) -> &[Vec<RatVector>] {
        &self.table
    }

    pub fn unit(&self) -> RatVector {
        self.basis_vector(0)
    }

    pub fn basis_vector(&self, i: usize) -> RatVector {
        let mut v = vec![Rat::zero(); self.dim()];
        v[i] = Rat::one();
        v
    }

    pub fn zero(&self) -> RatVector {
        vec![Rat::zero(); self.dim()]
    }

    pub fn multiply(&self, u: &[Rat], v: &[Rat]) -> RatVector {
        let n = self.dim();
        let mut out = vec![Rat::zero(); n];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (o, c) in out.iter_mut().zip(&self.table[i][j]) {
                    if !c.is_zero() {
                        *o += &ab * c;
                    }
                }
            }
        }
        out
    }

    pub fn check_element(&self, u: &[Rat]) -> Result<(), AlgebraError> {
        if u.len() != self.dim() {
            return Err(AlgebraError::DimensionMismatch { expected: self.dim(), got: u.len() });
        }
        Ok(())
    }

    pub fn is_in_maximal_ideal(&self, u: &[Rat]) -> bool {
        u[0].is_zero()
    }

    /// Exhaustive check of commutativity, associativity, the unit, and
    /// nilpotency of `m` (`m^dim = 0`).
    pub fn validate(&self) -> Validation {
        let n = self.dim();
        let mut v = Validation { commutative: true, associative: true, unit: true, nilpotent: true, first_violation: None };
        let note = |v: &mut Validation, msg: String| {
            if v.first_violation.is_none() {
                v.first_violation = Some(msg);
            }
        };
        'comm: for i in 0..n {
            for j in 0..i {
                if self.table[i][j] != self.table[j][i] {
                    v.commutative = false;
                    note(&mut v, format!("commutativity fails for ({}, {})", self.basis[j], self.basis[i]));
                    break 'comm;
                }
            }
        }
        'unit: for i in 0..n {
            let e = self.basis_vector(i);
            if self.table[0][i] != e || self.table[i][0] != e {
                v.unit = false;
                note(&mut v, format!("{} is not a unit for {}", self.basis[0], self.basis[i]));
                break 'unit;
            }
        }
        'assoc: for i in 0..n {
            for j in 0..n {
                let ij = &self.table[i][j];
                for k in 0..n {
                    let left = self.multiply(ij, &self.basis_vector(k));
                    let right = self.multiply(&self.basis_vector(i), &self.table[j][k]);
                    if left != right {
                        v.associative = false;
                        note(
                            &mut v,
                            format!("associativity fails for ({}, {}, {})", self.basis[i], self.basis[j], self.basis[k]),
                        );
                        break 'assoc;
                    }
                }
            }
        }
        let unit_free = (1..n).all(|i| (1..n).all(|j| self.table[i][j][0].is_zero()));
        if !unit_free {
            v.nilpotent = false;
            note(&mut v, "m * m has a nonzero unit coordinate, so m is not an ideal of nilpotents".into());
        } else if !self.ideal_power(n).is_empty() {
            v.nilpotent = false;
            note(&mut v, format!("m^{n} is not zero"));
        }
        v
    }

    /// Errors with the first violation unless the algebra passes validation.
    pub fn ensure_valid(&self) -> Result<(), AlgebraError> {
        let v = self.validate();
        match v.first_violation {
            None => Ok(()),
            Some(msg) => Err(AlgebraError::Invalid(msg)),
        }
    }

    /// Row-reduced basis of `m^d`, `d >= 1`.
    pub fn ideal_power(&self, d: usize) -> Vec<RatVector> {
        assert!(d >= 1, "ideal powers start at 1");
        let n = self.dim();
        let m: Vec<RatVector> = (1..n).map(|i| self.basis_vector(i)).collect();
        let mut power = row_basis(&m, n);
        for _ in 1..d {
            let products: Vec<RatVector> =
                power.iter().flat_map(|p| m.iter().map(move |x| (p, x))).map(|(p, x)| self.multiply(p, x)).collect();
            power = row_basis(&products, n);
            if power.is_empty() {
                break;
            }
        }
        power
    }

    /// `sum_k w^k / k!`, which terminates because `w` is nilpotent.
    pub fn exp(&self, w: &[Rat]) -> Result<RatVector, AlgebraError> {
        self.check_element(w)?;
        if !self.is_in_maximal_ideal(w) {
            return Err(AlgebraError::NotInMaximalIdeal(w[0].to_string()));
        }
        let mut sum = self.unit();
        let mut term = self.unit();
        for k in 1..=self.dim() {
            term = self.multiply(&term, w);
            let kr = Rat::from_integer(k.into());
            term.iter_mut().for_each(|x| *x = &*x / &kr);
            if term.iter().all(Zero::is_zero) {
                break;
            }
            sum.iter_mut().zip(&term).for_each(|(s, t)| *s += t);
        }
        Ok(sum)
    }

    pub fn subspace(&self, vectors: Vec<RatVector>) -> Result<Subspace, AlgebraError> {
        for v in &vectors {
            self.check_element(v)?;
            if !self.is_in_maximal_ideal(v) {
                return Err(AlgebraError::NotInMaximalIdeal(v[0].to_string()));
            }
        }
        if row_basis(&vectors, self.dim()).len() != vectors.len() {
            return Err(AlgebraError::DependentSubspace);
        }
        Ok(Subspace { basis: vectors })
    }

    /// Whether `1` and `W` generate the algebra: iterate `V <- V + V W`.
    pub fn generates(&self, w: &Subspace) -> bool {
        let n = self.dim();
        let mut span = vec![self.unit()];
        span.extend(w.basis.iter().cloned());
        let mut span = row_basis(&span, n);
        loop {
            if span.len() == n {
                return true;
            }
            let mut next = span.clone();
            for v in &span {
                for x in &w.basis {
                    next.push(self.multiply(v, x));
                }
            }
            let next = row_basis(&next, n);
            if next.len() == span.len() {
                return false;
            }
            span = next;
        }
    }

    /// Largest `d` with `m^d` not contained in `W`: the degree of the
    /// hypersurface attached to the pair.
    pub fn hypersurface_degree(&self, w: &Subspace) -> Result<usize, AlgebraError> {
        let n = self.dim();
        if w.dim() != n - 2 {
            return Err(AlgebraError::NotAHyperplane { expected: n - 2, got: w.dim() });
        }
        if self.ideal_power(2).is_empty() {
            return Err(AlgebraError::ZeroIdealImmediately);
        }
        if !self.generates(w) {
            return Err(AlgebraError::DoesNotGenerate);
        }
        let mut degree = 1;
        for d in 2..=n {
            let power = self.ideal_power(d);
            if power.is_empty() {
                break;
            }
            if !power.iter().all(|v| span_contains(&w.basis, v)) {
                degree = d;
            }
        }
        Ok(degree)
    }

    /// Coordinates of a combination of basis names such as `x1 - 1/2*x2^2`.
    pub fn parse_element(&self, text: &str) -> Result<RatVector, AlgebraError> {
        presentation::parse_combination(text, &self.basis)
    }

    pub fn format_element(&self, v: &[Rat]) -> String {
        let mut out = String::new();
        for (c, name) in v.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            if name == "1" {
                let neg = c < &Rat::zero();
                let abs = if neg { -c.clone() } else { c.clone() };
                if out.is_empty() {
                    out.push_str(&(if neg { format!("-{abs}") } else { abs.to_string() }));
                } else {
                    out.push_str(&format!(" {} {abs}", if neg { "-" } else { "+" }));
                }
            } else {
                crate::toric::push_term(&mut out, c, name);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for LocalAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "algebra with basis {}", self.basis.join(", "))
    }
}
