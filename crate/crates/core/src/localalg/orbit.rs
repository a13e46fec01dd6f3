//! Orbit of `[1]` under `exp(W)` in `P(R)` and the hypersurface through it.
//!
//! Sample points are `exp(sum_j c_j w_j)` for the basis `w_1, ..., w_k` of
//! `W`. The first sample is `c = 0`; after that the coefficient vectors are
//! consecutive windows of the fixed sequence `1, -1, 2, -2, 3, 5, 7, 11, ...`,
//! so sample `i >= 1` uses entries `(i-1)k + 1 ..= ik`. Every coordinate gets
//! a fresh value, which keeps the points off the low-degree loci that a small
//! grid of values would sit on. Nothing is random, so fitted forms are
//! reproducible.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_traits::{One, Zero};

use super::{AlgebraError, LocalAlgebra, Subspace};
use crate::linalg::{self, primitive_from_rational, Int, IntVector, Matrix, Rat, RatVector};
use crate::toric::{push_term, QuadraticForm};

/// Homogeneous coordinates scaled to a primitive integer vector whose first
/// nonzero entry is positive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjectivePoint {
    coords: IntVector,
}

impl ProjectivePoint {
    /// `None` for the zero vector.
    pub fn new(v: &[Rat]) -> Option<Self> {
        if v.iter().all(Zero::is_zero) {
            return None;
        }
        Some(ProjectivePoint { coords: primitive_from_rational(v) })
    }

    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    pub fn rational(&self) -> RatVector {
        self.coords.iter().map(|x| Rat::from_integer(x.clone())).collect()
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.coords.iter().join(":"))
    }
}

/// The sample sequence `0, 1, -1, 2, -2, 3, 5, 7, 11, ...`: small integers
/// followed by the odd primes.
pub fn sample_values() -> impl Iterator<Item = Int> {
    let head = [0i64, 1, -1, 2, -2].into_iter().map(Int::from);
    let primes = (3u64..).step_by(2).filter(|&p| (3..).step_by(2).take_while(|d| d * d <= p).all(|d| p % d != 0));
    head.chain(primes.map(Int::from))
}

pub fn sample_value(k: usize) -> Int {
    sample_values().nth(k).expect("infinite sequence")
}

/// Iterator over distinct orbit points in schedule order: `w = 0` first, then
/// consecutive windows of the sample sequence (after its leading `0`) as the
/// coordinates of `w` in the basis of `W`.
struct Schedule<'a> {
    algebra: &'a LocalAlgebra,
    w: &'a Subspace,
    values: Box<dyn Iterator<Item = Int>>,
    started: bool,
    seen: BTreeSet<ProjectivePoint>,
}

impl<'a> Schedule<'a> {
    fn new(algebra: &'a LocalAlgebra, w: &'a Subspace) -> Self {
        Schedule { algebra, w, values: Box::new(sample_values().skip(1)), started: false, seen: BTreeSet::new() }
    }
}

impl Iterator for Schedule<'_> {
    type Item = ProjectivePoint;

    fn next(&mut self) -> Option<ProjectivePoint> {
        loop {
            let coeffs: Vec<Rat> = if self.started {
                self.values.by_ref().take(self.w.dim()).map(Rat::from_integer).collect()
            } else {
                self.started = true;
                vec![Rat::zero(); self.w.dim()]
            };
            let g = self.w.combination(&coeffs);
            let e = self.algebra.exp(&g).expect("subspace lies in the maximal ideal");
            let p = ProjectivePoint::new(&e).expect("exp is a unit");
            if self.seen.insert(p.clone()) {
                return Some(p);
            }
        }
    }
}

/// The first `count` distinct points of the sample schedule.
pub fn orbit_points(algebra: &LocalAlgebra, w: &Subspace, count: usize) -> Result<Vec<ProjectivePoint>, AlgebraError> {
    if !algebra.generates(w) {
        return Err(AlgebraError::DoesNotGenerate);
    }
    Ok(Schedule::new(algebra, w).take(count).collect())
}

/// Exponent vectors of degree-`d` monomials in `nvars` variables, in
/// descending lexicographic order (`X0^d` first).
pub fn degree_monomials(nvars: usize, d: usize) -> Vec<Vec<u32>> {
    fn go(nvars: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == nvars {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=d).rev() {
            prefix.push(k);
            go(nvars, d - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars > 0 {
        go(nvars, d as u32, &mut Vec::new(), &mut out);
    }
    out
}

/// A homogeneous form with integer coefficients over [`degree_monomials`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    pub nvars: usize,
    pub degree: usize,
    pub coeffs: IntVector,
}

impl Form {
    pub fn evaluate(&self, x: &[Rat]) -> Rat {
        degree_monomials(self.nvars, self.degree)
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| monomial_value(m, x) * Rat::from_integer(c.clone()))
            .sum()
    }

    pub fn quadratic_form(&self) -> Option<QuadraticForm> {
        (self.degree == 2).then(|| {
            let coeffs: Vec<Rat> = self.coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect();
            QuadraticForm::from_coefficients(self.nvars, &coeffs)
        })
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (m, c) in degree_monomials(self.nvars, self.degree).iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let mono = m
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| if *e == 1 { format!("X{i}") } else { format!("X{i}^{e}") })
                .join("*");
            push_term(&mut out, &Rat::from_integer(c.clone()), &mono);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

fn monomial_value(m: &[u32], x: &[Rat]) -> Rat {
    m.iter().zip(x).fold(Rat::one(), |acc, (e, v)| {
        let mut acc = acc;
        for _ in 0..*e {
            acc *= v;
        }
        acc
    })
}

/// Basis of the degree-`d` forms vanishing at every point.
pub fn fit_hypersurface(points: &[ProjectivePoint], d: usize) -> Vec<Form> {
    let Some(first) = points.first() else {
        return Vec::new();
    };
    let nvars = first.coords().len();
    let monos = degree_monomials(nvars, d);
    let rows: Vec<RatVector> = points
        .iter()
        .map(|p| {
            let x = p.rational();
            monos.iter().map(|m| monomial_value(m, &x)).collect()
        })
        .collect();
    linalg::nullspace(&Matrix::from_rows(monos.len(), &rows))
        .into_iter()
        .map(|coeffs| Form { nvars, degree: d, coeffs })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitQuadric {
    pub form: Form,
    pub quadric: QuadraticForm,
    pub rank: usize,
    pub samples: usize,
    pub holdout: usize,
}

pub const HOLDOUT_POINTS: usize = 100;

/// The unique quadric through the orbit closure of `[1]`, checked on
/// `HOLDOUT_POINTS` further orbit points.
pub fn orbit_quadric(algebra: &LocalAlgebra, w: &Subspace) -> Result<OrbitQuadric, AlgebraError> {
    let d = algebra.hypersurface_degree(w)?;
    if d != 2 {
        return Err(AlgebraError::DegreeNotTwo(d));
    }
    let n = algebra.dim();
    let samples = n * (n + 1) / 2 + 5;
    let mut schedule = Schedule::new(algebra, w);
    let fit_points: Vec<ProjectivePoint> = schedule.by_ref().take(samples).collect();
    let forms = fit_hypersurface(&fit_points, 2);
    if forms.len() != 1 {
        return Err(AlgebraError::NonUniqueQuadric { dimension: forms.len() });
    }
    let form = forms.into_iter().next().unwrap();
    for p in schedule.take(HOLDOUT_POINTS) {
        if !form.evaluate(&p.rational()).is_zero() {
            return Err(AlgebraError::HoldoutMismatch(p.to_string()));
        }
    }
    let quadric = form.quadratic_form().expect("degree two");
    Ok(OrbitQuadric { rank: quadric.rank(), form, quadric, samples, holdout: HOLDOUT_POINTS })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vec;
    use crate::localalg::Presentation;

    #[test]
    fn sample_sequence() {
        let head: Vec<Int> = (0..10).map(sample_value).collect();
        assert_eq!(head, int_vec(&[0, 1, -1, 2, -2, 3, 5, 7, 11, 13]));
    }

    #[test]
    fn monomial_order() {
        assert_eq!(degree_monomials(3, 2), vec![
            vec![2, 0, 0],
            vec![1, 1, 0],
            vec![1, 0, 1],
            vec![0, 2, 0],
            vec![0, 1, 1],
            vec![0, 0, 2]
        ]);
        assert_eq!(degree_monomials(2, 1), vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn first_orbit_points() {
        let p = Presentation::parse(&["x"], &["1", "x", "x^2", "x^3"], &[("x^4", "0")]).unwrap();
        let a = p.algebra().unwrap();
        let w = a.subspace(vec![a.basis_vector(1), a.basis_vector(3)]).unwrap();
        let pts = orbit_points(&a, &w, 3).unwrap();
        assert_eq!(pts[0].to_string(), "[1:0:0:0]");
        // x - x^3 gives 1 + x + x^2/2 + (1/6 - 1) x^3
        assert_eq!(pts[1].to_string(), "[6:6:3:-5]");
        // 2x - 2x^3 gives 1 + 2x + 2x^2 + (4/3 - 2) x^3
        assert_eq!(pts[2].to_string(), "[3:6:6:-2]");
        let x = a.exp(&a.basis_vector(1)).unwrap();
        assert_eq!(ProjectivePoint::new(&x).unwrap().to_string(), "[6:6:3:1]");
    }

    #[test]
    fn line_through_collinear_points() {
        let pts: Vec<ProjectivePoint> = [[1, 0, 1], [0, 1, 1], [1, 1, 2]]
            .iter()
            .map(|c| ProjectivePoint::new(&c.iter().map(|&x| Rat::from_integer(x.into())).collect::<Vec<_>>()).unwrap())
            .collect();
        let forms = fit_hypersurface(&pts, 1);
        assert_eq!(forms.len(), 1);
        assert_eq!(forms[0].to_string(), "X0 + X1 - X2");
    }

    #[test]
    fn quadric_of_the_curvilinear_pair() {
        let p = Presentation::parse(&["x"], &["1", "x", "x^2", "x^3"], &[("x^4", "0")]).unwrap();
        let a = p.algebra().unwrap();
        let w = a.subspace(vec![a.basis_vector(1), a.basis_vector(3)]).unwrap();
        let q = orbit_quadric(&a, &w).unwrap();
        assert_eq!(q.form.to_string(), "2*X0*X2 - X1^2");
        assert_eq!(q.rank, 3);
        assert_eq!(q.samples, 15);

        let cubic = a.subspace(vec![a.basis_vector(1), a.basis_vector(2)]).unwrap();
        assert_eq!(orbit_quadric(&a, &cubic), Err(AlgebraError::DegreeNotTwo(3)));
    }
}
