//! Algebras presented as `K[x_1, ..., x_k] / I` through a monomial basis and
//! rewrite rules `monomial -> combination`, expanded into structure constants.
//!
//! A monomial outside the basis is rewritten with the first rule whose leading
//! monomial divides it. The rules must be complete and consistent; the
//! resulting table is validated before use, which catches both problems.

use std::str::FromStr;

use num_traits::Zero;

use super::{AlgebraError, LocalAlgebra};
use crate::linalg::{Rat, RatVector};

const MAX_REWRITES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    vars: Vec<String>,
    basis_names: Vec<String>,
    basis: Vec<Vec<u32>>,
    rules: Vec<(Vec<u32>, Vec<(Rat, Vec<u32>)>)>,
}

fn parse_error(input: &str, reason: impl Into<String>) -> AlgebraError {
    AlgebraError::Parse { input: input.to_string(), reason: reason.into() }
}

/// Exponent vector of a product like `x1^2*x3`; `1` is the empty product.
pub fn parse_monomial(text: &str, vars: &[String]) -> Result<Vec<u32>, AlgebraError> {
    let mut exps = vec![0u32; vars.len()];
    let t = text.trim();
    if t == "1" {
        return Ok(exps);
    }
    for factor in t.split('*') {
        let factor = factor.trim();
        let (name, power) = match factor.split_once('^') {
            Some((n, p)) => (n.trim(), p.trim().parse::<u32>().map_err(|_| parse_error(text, "bad exponent"))?),
            None => (factor, 1),
        };
        let i = vars.iter().position(|v| v == name).ok_or_else(|| parse_error(text, format!("unknown variable {name:?}")))?;
        exps[i] += power;
    }
    Ok(exps)
}

/// Splits `a - 1/2*b + c` into signed coefficients and the remaining factor
/// text (`"1"` for constants).
pub(crate) fn parse_terms(text: &str) -> Result<Vec<(Rat, String)>, AlgebraError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(parse_error(text, "empty expression"));
    }
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    for (i, ch) in compact.chars().enumerate() {
        if ch == '+' || ch == '-' {
            if current.is_empty() {
                if i == 0 {
                    negative = ch == '-';
                    continue;
                }
                return Err(parse_error(text, "dangling sign"));
            }
            pieces.push((negative, std::mem::take(&mut current)));
            negative = ch == '-';
        } else {
            current.push(ch);
        }
    }
    if current.is_empty() {
        return Err(parse_error(text, "dangling sign"));
    }
    pieces.push((negative, current));

    pieces
        .into_iter()
        .map(|(neg, term)| {
            let (coeff, rest) = if let Ok(c) = Rat::from_str(&term) {
                (c, "1".to_string())
            } else {
                match term.split_once('*') {
                    Some((head, tail)) if Rat::from_str(head).is_ok() => (Rat::from_str(head).unwrap(), tail.to_string()),
                    _ => (Rat::from_integer(1.into()), term.clone()),
                }
            };
            Ok((if neg { -coeff } else { coeff }, rest))
        })
        .collect()
}

/// Coordinates of a combination of the given basis names.
pub(crate) fn parse_combination(text: &str, names: &[String]) -> Result<RatVector, AlgebraError> {
    let mut v = vec![Rat::zero(); names.len()];
    for (c, name) in parse_terms(text)? {
        let i = names.iter().position(|n| n == &name).ok_or_else(|| parse_error(text, format!("unknown basis element {name:?}")))?;
        v[i] += c;
    }
    Ok(v)
}

impl Presentation {
    pub fn parse(vars: &[&str], basis: &[&str], rules: &[(&str, &str)]) -> Result<Self, AlgebraError> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let basis_exps = basis.iter().map(|b| parse_monomial(b, &vars)).collect::<Result<Vec<_>, _>>()?;
        if basis_exps.first().map_or(true, |e| e.iter().any(|&k| k != 0)) {
            return Err(AlgebraError::Malformed("the first basis monomial must be 1".into()));
        }
        for (i, e) in basis_exps.iter().enumerate() {
            if basis_exps[..i].contains(e) {
                return Err(AlgebraError::Malformed(format!("basis monomial {} is repeated", basis[i])));
            }
        }
        let mut parsed_rules = Vec::new();
        for (lead, rhs) in rules {
            let lead_exps = parse_monomial(lead, &vars)?;
            if basis_exps.contains(&lead_exps) {
                return Err(AlgebraError::Malformed(format!("rule rewrites the basis monomial {lead}")));
            }
            let terms = parse_terms(rhs)?
                .into_iter()
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, m)| Ok((c, parse_monomial(&m, &vars)?)))
                .collect::<Result<Vec<_>, AlgebraError>>()?;
            parsed_rules.push((lead_exps, terms));
        }
        Ok(Presentation {
            vars,
            basis_names: basis.iter().map(|s| s.to_string()).collect(),
            basis: basis_exps,
            rules: parsed_rules,
        })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    /// Coordinates of a monomial in the basis.
    pub fn reduce(&self, exps: &[u32]) -> Result<RatVector, AlgebraError> {
        self.reduce_bounded(exps, 0)
    }

    fn reduce_bounded(&self, exps: &[u32], depth: usize) -> Result<RatVector, AlgebraError> {
        let n = self.basis.len();
        if let Some(i) = self.basis.iter().position(|b| b.as_slice() == exps) {
            let mut v = vec![Rat::zero(); n];
            v[i] = Rat::from_integer(1.into());
            return Ok(v);
        }
        if depth > MAX_REWRITES {
            return Err(AlgebraError::Malformed(format!("rewriting {} does not terminate", self.format_monomial(exps))));
        }
        let (lead, rhs) = self
            .rules
            .iter()
            .find(|(lead, _)| lead.iter().zip(exps).all(|(a, b)| a <= b))
            .ok_or_else(|| AlgebraError::Malformed(format!("no rule reduces {}", self.format_monomial(exps))))?;
        let mut out = vec![Rat::zero(); n];
        for (c, m) in rhs {
            let shifted: Vec<u32> = exps.iter().zip(lead).zip(m).map(|((e, l), x)| e - l + x).collect();
            let part = self.reduce_bounded(&shifted, depth + 1)?;
            for (o, p) in out.iter_mut().zip(part) {
                *o += c * p;
            }
        }
        Ok(out)
    }

    fn format_monomial(&self, exps: &[u32]) -> String {
        let parts: Vec<String> = exps
            .iter()
            .zip(&self.vars)
            .filter(|(e, _)| **e > 0)
            .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Coordinates of a polynomial such as `x1^2 + 2*x2^2`, reducing any
    /// monomial outside the basis.
    pub fn element(&self, text: &str) -> Result<RatVector, AlgebraError> {
        let mut v = vec![Rat::zero(); self.basis.len()];
        for (c, m) in parse_terms(text)? {
            let part = self.reduce(&parse_monomial(&m, &self.vars)?)?;
            for (o, p) in v.iter_mut().zip(part) {
                *o += &c * p;
            }
        }
        Ok(v)
    }

    /// Structure constants from products of basis monomials, validated.
    pub fn algebra(&self) -> Result<LocalAlgebra, AlgebraError> {
        let table = self
            .basis
            .iter()
            .map(|a| {
                self.basis
                    .iter()
                    .map(|b| {
                        let prod: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                        self.reduce(&prod)
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let alg = LocalAlgebra::new(self.basis_names.clone(), table)?;
        alg.ensure_valid()?;
        Ok(alg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rat {
        Rat::new(p.into(), q.into())
    }

    #[test]
    fn monomials_and_terms() {
        let vars = vec!["x1".to_string(), "x2".to_string()];
        assert_eq!(parse_monomial("x1^2*x2", &vars).unwrap(), vec![2, 1]);
        assert_eq!(parse_monomial("1", &vars).unwrap(), vec![0, 0]);
        assert!(parse_monomial("y", &vars).is_err());
        let t = parse_terms("-x1 + 1/2*x1*x2 - 3").unwrap();
        assert_eq!(
            t,
            vec![(r(-1, 1), "x1".to_string()), (r(1, 2), "x1*x2".to_string()), (r(-3, 1), "1".to_string())]
        );
        assert!(parse_terms("x1 +").is_err());
        assert!(parse_terms("").is_err());
    }

    #[test]
    fn rewriting_uses_relations_between_monomials() {
        // K[x1,x2]/(x1 x2, x1^3 - x2^2)
        let p = Presentation::parse(
            &["x1", "x2"],
            &["1", "x1", "x2", "x1^2", "x1^3"],
            &[("x1*x2", "0"), ("x2^2", "x1^3"), ("x1^4", "0")],
        )
        .unwrap();
        assert_eq!(p.element("x2^2").unwrap(), p.element("x1^3").unwrap());
        assert_eq!(p.element("x2^3").unwrap(), vec![Rat::zero(); 5]);
        let a = p.algebra().unwrap();
        assert_eq!(a.dim(), 5);
    }

    #[test]
    fn inconsistent_rules_fail_validation() {
        // x^2 -> x makes x idempotent, so m is not nilpotent
        let p = Presentation::parse(&["x"], &["1", "x"], &[("x^2", "x")]).unwrap();
        assert!(matches!(p.algebra(), Err(AlgebraError::Invalid(_))));
        // a rule loop
        let q = Presentation::parse(&["x", "y"], &["1", "x", "y"], &[("x^2", "y^2"), ("y^2", "x^2"), ("x*y", "0")]).unwrap();
        assert!(matches!(q.algebra(), Err(AlgebraError::Malformed(_))));
        // an incomplete rule set
        let s = Presentation::parse(&["x"], &["1", "x"], &[]).unwrap();
        assert!(matches!(s.algebra(), Err(AlgebraError::Malformed(_))));
    }
}
