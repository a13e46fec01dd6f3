use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::linalg::{self, Rat, RatMatrix};

/// A quadratic form `x^T S x` stored as its symmetric matrix `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    matrix: RatMatrix,
}

impl QuadraticForm {
    /// `None` if the matrix is not square and symmetric.
    pub fn from_symmetric(matrix: RatMatrix) -> Option<Self> {
        let n = matrix.rows();
        if matrix.cols() != n {
            return None;
        }
        let symmetric = (0..n).all(|i| (0..i).all(|j| matrix[(i, j)] == matrix[(j, i)]));
        symmetric.then_some(QuadraticForm { matrix })
    }

    /// Sum of `c * X_i * X_j` over the given terms (`i == j` allowed).
    pub fn from_terms(nvars: usize, terms: &[(usize, usize, Rat)]) -> Self {
        let mut m = RatMatrix::zeros(nvars, nvars);
        let half = Rat::new(1.into(), 2.into());
        for (i, j, c) in terms {
            if i == j {
                m[(*i, *i)] += c;
            } else {
                let h = c * &half;
                m[(*i, *j)] += &h;
                m[(*j, *i)] += h;
            }
        }
        QuadraticForm { matrix: m }
    }

    /// Coefficients listed in [`monomial_pairs`] order.
    pub fn from_coefficients(nvars: usize, coeffs: &[Rat]) -> Self {
        let terms: Vec<(usize, usize, Rat)> = monomial_pairs(nvars)
            .into_iter()
            .zip(coeffs)
            .map(|((i, j), c)| (i, j, c.clone()))
            .collect();
        Self::from_terms(nvars, &terms)
    }

    pub fn nvars(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    /// Rank of the symmetric matrix over the rationals.
    pub fn rank(&self) -> usize {
        linalg::rank(&self.matrix)
    }

    /// Coefficient of the monomial `X_i X_j`.
    pub fn coefficient(&self, i: usize, j: usize) -> Rat {
        if i == j {
            self.matrix[(i, i)].clone()
        } else {
            &self.matrix[(i, j)] + &self.matrix[(j, i)]
        }
    }

    pub fn coefficients(&self) -> Vec<Rat> {
        monomial_pairs(self.nvars()).into_iter().map(|(i, j)| self.coefficient(i, j)).collect()
    }

    pub fn evaluate(&self, x: &[Rat]) -> Rat {
        let sx = self.matrix.mul_vec(x);
        linalg::dot(x, &sx)
    }

    /// Equal up to a nonzero scalar.
    pub fn proportional_to(&self, other: &QuadraticForm) -> bool {
        if self.nvars() != other.nvars() {
            return false;
        }
        let (a, b) = (self.coefficients(), other.coefficients());
        let Some(k) = a.iter().position(|x| !x.is_zero()) else {
            return b.iter().all(Zero::is_zero);
        };
        if b[k].is_zero() {
            return false;
        }
        let s = &b[k] / &a[k];
        a.iter().zip(&b).all(|(x, y)| &(x * &s) == y)
    }

    /// Renders with variables `{var}0`, `{var}1`, ..., e.g. `X0*X2 - 1/2*X1^2`.
    pub fn display_with(&self, var: &str) -> String {
        let mut out = String::new();
        for ((i, j), c) in monomial_pairs(self.nvars()).into_iter().zip(self.coefficients()) {
            if c.is_zero() {
                continue;
            }
            let mono = if i == j { format!("{var}{i}^2") } else { format!("{var}{i}*{var}{j}") };
            push_term(&mut out, &c, &mono);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("X"))
    }
}

/// Appends `± c*mono`, dropping a unit coefficient.
pub(crate) fn push_term(out: &mut String, c: &Rat, mono: &str) {
    let neg = c.is_negative();
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    let abs = c.abs();
    if abs.is_one() {
        out.push_str(mono);
    } else {
        out.push_str(&format!("{abs}*{mono}"));
    }
}

/// Index pairs `(i, j)` with `i <= j` in lexicographic order. This is the
/// descending-lexicographic order of the exponent vectors of the quadratic
/// monomials.
pub fn monomial_pairs(nvars: usize) -> Vec<(usize, usize)> {
    (0..nvars).flat_map(|i| (i..nvars).map(move |j| (i, j))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rat {
        Rat::new(p.into(), q.into())
    }

    #[test]
    fn ranks_of_the_two_families() {
        for n in 2..=5 {
            let q3 = QuadraticForm::from_terms(n + 2, &[(0, 2, r(1, 1)), (1, 1, r(-1, 1))]);
            assert_eq!(q3.rank(), 3);
            let q4 = QuadraticForm::from_terms(n + 2, &[(0, 3, r(1, 1)), (1, 2, r(-1, 1))]);
            assert_eq!(q4.rank(), 4);
        }
        assert_eq!(QuadraticForm::from_terms(3, &[]).rank(), 0);
    }

    #[test]
    fn display_and_scaling() {
        let q = QuadraticForm::from_terms(4, &[(0, 2, r(1, 1)), (1, 1, r(-1, 2))]);
        assert_eq!(q.to_string(), "X0*X2 - 1/2*X1^2");
        let p = QuadraticForm::from_terms(4, &[(0, 2, r(2, 1)), (1, 1, r(-1, 1))]);
        assert_eq!(p.to_string(), "2*X0*X2 - X1^2");
        assert!(p.proportional_to(&q));
        let z = QuadraticForm::from_terms(4, &[(0, 3, r(1, 1)), (1, 2, r(-1, 1))]);
        assert!(!z.proportional_to(&q));
        assert_eq!(z.display_with("z"), "z0*z3 - z1*z2");
    }

    #[test]
    fn coefficient_round_trip_and_evaluation() {
        let q = QuadraticForm::from_terms(3, &[(0, 1, r(3, 1)), (2, 2, r(-5, 7)), (0, 0, r(1, 1))]);
        let again = QuadraticForm::from_coefficients(3, &q.coefficients());
        assert_eq!(again, q);
        let x = vec![r(1, 1), r(2, 1), r(7, 1)];
        // 1 + 3*2 - 5/7 * 49
        assert_eq!(q.evaluate(&x), r(1 + 6 - 35, 1));
        assert!(QuadraticForm::from_symmetric(q.matrix().clone()).is_some());
    }
}
