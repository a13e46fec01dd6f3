//! Strictly positive linear functionals on a finite set of vectors.
//!
//! Finds `l` with `l . v >= 1` for every given `v` by exact Fourier-Motzkin
//! elimination followed by back substitution. Such an `l` exists exactly when
//! the vectors are nonzero and generate a pointed cone.

use num_traits::{One, Signed, Zero};

use super::{primitive_from_rational, Int, IntVector, Rat};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Constraint {
    coeffs: Vec<Rat>,
    rhs: Rat,
}

impl Constraint {
    /// Scale so the coefficient of `var` is +-1 (or leave untouched if zero).
    fn normalized_on(&self, var: usize) -> Constraint {
        let c = self.coeffs[var].abs();
        if c.is_zero() {
            return self.clone();
        }
        Constraint {
            coeffs: self.coeffs.iter().map(|x| x / &c).collect(),
            rhs: &self.rhs / &c,
        }
    }
}

/// Returns a primitive integer functional positive on every vector, or `None`
/// when no such functional exists.
pub fn positive_functional(vectors: &[IntVector]) -> Option<IntVector> {
    let dim = vectors.first().map_or(0, |v| v.len());
    let mut system: Vec<Constraint> = vectors
        .iter()
        .map(|v| Constraint {
            coeffs: v.iter().map(|x| Rat::from_integer(x.clone())).collect(),
            rhs: Rat::one(),
        })
        .collect();

    // stages[k] is the system in which variables k+1.. are already gone
    let mut stages: Vec<Vec<Constraint>> = vec![Vec::new(); dim];
    for var in (0..dim).rev() {
        stages[var] = system.clone();
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        let mut next = Vec::new();
        for c in system {
            let n = c.normalized_on(var);
            if n.coeffs[var].is_zero() {
                next.push(n);
            } else if n.coeffs[var].is_positive() {
                lower.push(n);
            } else {
                upper.push(n);
            }
        }
        for l in &lower {
            for u in &upper {
                next.push(Constraint {
                    coeffs: l.coeffs.iter().zip(&u.coeffs).map(|(a, b)| a + b).collect(),
                    rhs: &l.rhs + &u.rhs,
                });
            }
        }
        next.sort();
        next.dedup();
        system = next;
    }
    // only constant constraints 0 >= rhs remain
    if system.iter().any(|c| c.rhs.is_positive()) {
        return None;
    }

    let mut x = vec![Rat::zero(); dim];
    for var in 0..dim {
        let mut lo: Option<Rat> = None;
        let mut hi: Option<Rat> = None;
        for c in &stages[var] {
            let a = &c.coeffs[var];
            if a.is_zero() {
                continue;
            }
            let rest: Rat = (0..var).map(|j| &c.coeffs[j] * &x[j]).sum();
            let bound = (&c.rhs - rest) / a;
            if a.is_positive() {
                lo = Some(lo.map_or(bound.clone(), |l: Rat| l.max(bound)));
            } else {
                hi = Some(hi.map_or(bound.clone(), |h: Rat| h.min(bound)));
            }
        }
        x[var] = match (lo, hi) {
            (Some(l), _) => l,
            (None, Some(h)) => h,
            (None, None) => Rat::zero(),
        };
    }
    let f = primitive_from_rational(&x);
    // primitive_from_rational fixes the sign by the first entry; undo that if needed
    let f = if vectors.iter().all(|v| dot_int(&f, v).is_positive()) {
        f
    } else {
        f.iter().map(|a| -a).collect()
    };
    debug_assert!(vectors.iter().all(|v| dot_int(&f, v).is_positive()));
    Some(f)
}

fn dot_int(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::super::int_vec;
    use super::*;

    fn assert_positive(vs: &[IntVector]) {
        let f = positive_functional(vs).expect("pointed cone");
        for v in vs {
            assert!(dot_int(&f, v).is_positive(), "{f:?} . {v:?}");
        }
    }

    #[test]
    fn pointed_cones_have_positive_functionals() {
        assert_positive(&[int_vec(&[1]), int_vec(&[2])]);
        assert_positive(&[int_vec(&[1, 0]), int_vec(&[0, 1]), int_vec(&[1, 1])]);
        assert_positive(&[int_vec(&[-1, 3]), int_vec(&[2, -1]), int_vec(&[1, 1])]);
        assert_positive(&[int_vec(&[-3, -1, 0]), int_vec(&[-1, -1, 1])]);
    }

    #[test]
    fn unpointed_or_degenerate_sets_have_none() {
        assert!(positive_functional(&[int_vec(&[1]), int_vec(&[-1])]).is_none());
        assert!(positive_functional(&[int_vec(&[0, 0])]).is_none());
        assert!(positive_functional(&[int_vec(&[1, 0]), int_vec(&[-1, 1]), int_vec(&[0, -1])]).is_none());
    }
}
