//! Sparse multivariate polynomials over the rationals, enough to check
//! polynomial identities coefficient by coefficient.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::linalg::Rat;

/// A polynomial in a fixed number of variables. Zero coefficients are never
/// stored, so structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Poly::zero(nvars);
        p.add_term(e, Rat::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// Value at a rational point.
    pub fn evaluate(&self, x: &[Rat]) -> Rat {
        assert_eq!(x.len(), self.nvars, "point has the wrong number of coordinates");
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter().zip(x).fold(c.clone(), |acc, (k, v)| (0..*k).fold(acc, |a, _| a * v))
            })
            .sum()
    }

    /// Partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut d = e.clone();
                d[i] -= 1;
                out.add_term(d, c * Rat::from_integer(e[i].into()));
            }
        }
        out
    }

    fn check(&self, other: &Poly) {
        assert_eq!(self.nvars, other.nvars, "polynomials live in different rings");
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        self.check(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        self.check(rhs);
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Mul<&Rat> for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Rat) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * rhs);
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, k)| **k > 0)
                .map(|(i, k)| if *k == 1 { format!("t{i}") } else { format!("t{i}^{k}") })
                .collect();
            if mono.is_empty() {
                let neg = c < &Rat::zero();
                let abs = if neg { -c.clone() } else { c.clone() };
                match (out.is_empty(), neg) {
                    (true, false) => out.push_str(&abs.to_string()),
                    (true, true) => out.push_str(&format!("-{abs}")),
                    (false, n) => out.push_str(&format!(" {} {abs}", if n { "-" } else { "+" })),
                }
            } else {
                crate::toric::push_term(&mut out, c, &mono.join("*"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64) -> Rat {
        Rat::from_integer(p.into())
    }

    #[test]
    fn ring_operations() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let s = &x + &y;
        let d = &x - &y;
        let prod = &s * &d;
        assert_eq!(prod, &(&x * &x) - &(&y * &y));
        assert!((&s - &s).is_zero());
        assert_eq!(prod.degree(), Some(2));
        assert_eq!(prod.coefficient(&[0, 2]), r(-1));
        assert_eq!(prod.evaluate(&[r(3), r(1)]), r(8));
        assert_eq!(prod.derivative(0), &x * &r(2));
        assert_eq!(prod.to_string(), "t0^2 - t1^2");
        assert_eq!((&Poly::constant(2, r(-2)) + &y).to_string(), "t1 - 2");
    }
}
