//! Bundled local algebras and `(R, W)` pairs with their expected hypersurface
//! degree, quadric rank and, where known, the quadric itself.
//!
//! The data lives in `data/catalog.json`:
//!
//! ```text
//! { "schema_version": 1,
//!   "algebras": [{"name", "vars", "basis", "rules": [[lead, rhs], ...]}],
//!   "pairs": [{"label", "algebra", "subspace": [poly, ...], "degree", "rank", "form"?}] }
//! ```
//!
//! Algebras are presentations (see [`Presentation`]); subspace generators are
//! polynomials in the variables, reduced into the basis on load.

use std::sync::OnceLock;

use num_traits::Zero;
use serde::Deserialize;

use super::presentation::parse_terms;
use super::{parse_monomial, AlgebraError, LocalAlgebra, Presentation, Subspace};
use crate::linalg::Rat;
use crate::toric::QuadraticForm;

pub const CATALOG_SCHEMA_VERSION: u32 = 1;

const CATALOG_JSON: &str = include_str!("../../data/catalog.json");

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCatalog {
    schema_version: u32,
    algebras: Vec<RawAlgebra>,
    pairs: Vec<RawPair>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    name: String,
    vars: Vec<String>,
    basis: Vec<String>,
    rules: Vec<(String, String)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPair {
    label: String,
    algebra: String,
    subspace: Vec<String>,
    degree: usize,
    rank: usize,
    form: Option<String>,
}

#[derive(Clone, Debug)]
pub struct CatalogAlgebra {
    pub name: String,
    pub presentation: Presentation,
    pub algebra: LocalAlgebra,
}

#[derive(Clone, Debug)]
pub struct CatalogPair {
    pub label: String,
    pub algebra_name: String,
    pub algebra: LocalAlgebra,
    /// Generators as written in the data file.
    pub generators: Vec<String>,
    pub subspace: Subspace,
    pub expected_degree: usize,
    pub expected_rank: usize,
    pub expected_form: Option<QuadraticForm>,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub algebras: Vec<CatalogAlgebra>,
    pub pairs: Vec<CatalogPair>,
}

impl Catalog {
    pub fn parse(json: &str) -> Result<Self, AlgebraError> {
        let raw: RawCatalog = serde_json::from_str(json).map_err(|e| AlgebraError::Malformed(format!("catalog: {e}")))?;
        if raw.schema_version != CATALOG_SCHEMA_VERSION {
            return Err(AlgebraError::Malformed(format!(
                "catalog schema version {} is not {CATALOG_SCHEMA_VERSION}",
                raw.schema_version
            )));
        }
        let mut algebras = Vec::new();
        for a in raw.algebras {
            let vars: Vec<&str> = a.vars.iter().map(String::as_str).collect();
            let basis: Vec<&str> = a.basis.iter().map(String::as_str).collect();
            let rules: Vec<(&str, &str)> = a.rules.iter().map(|(l, r)| (l.as_str(), r.as_str())).collect();
            let presentation = Presentation::parse(&vars, &basis, &rules)?;
            let algebra = presentation.algebra()?;
            algebras.push(CatalogAlgebra { name: a.name, presentation, algebra });
        }
        let mut pairs = Vec::new();
        for p in raw.pairs {
            let source = algebras
                .iter()
                .find(|a| a.name == p.algebra)
                .ok_or_else(|| AlgebraError::Malformed(format!("pair {} names unknown algebra {}", p.label, p.algebra)))?;
            let vectors = p.subspace.iter().map(|g| source.presentation.element(g)).collect::<Result<Vec<_>, _>>()?;
            let subspace = source.algebra.subspace(vectors)?;
            let expected_form = p.form.as_deref().map(|f| parse_quadric(f, source.algebra.dim())).transpose()?;
            pairs.push(CatalogPair {
                label: p.label,
                algebra_name: p.algebra,
                algebra: source.algebra.clone(),
                generators: p.subspace,
                subspace,
                expected_degree: p.degree,
                expected_rank: p.rank,
                expected_form,
            });
        }
        Ok(Catalog { algebras, pairs })
    }

    pub fn algebra(&self, name: &str) -> Option<&CatalogAlgebra> {
        self.algebras.iter().find(|a| a.name == name)
    }

    pub fn pair(&self, label: &str) -> Option<&CatalogPair> {
        self.pairs.iter().find(|p| p.label == label)
    }

    /// Pairs whose label starts with `prefix`, e.g. `"dim5/"`.
    pub fn pairs_with_prefix<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a CatalogPair> + 'a {
        self.pairs.iter().filter(move |p| p.label.starts_with(prefix))
    }
}

/// The bundled catalog, parsed and validated once.
pub fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| Catalog::parse(CATALOG_JSON).expect("bundled catalog is valid"))
}

/// A quadratic form written in `X0, X1, ...`, such as `2*X0*X2 - X1^2`.
pub fn parse_quadric(text: &str, nvars: usize) -> Result<QuadraticForm, AlgebraError> {
    let vars: Vec<String> = (0..nvars).map(|i| format!("X{i}")).collect();
    let mut terms = Vec::new();
    for (c, mono) in parse_terms(text)? {
        let e = parse_monomial(&mono, &vars)?;
        let idx: Vec<usize> = e.iter().enumerate().flat_map(|(i, k)| std::iter::repeat(i).take(*k as usize)).collect();
        if idx.len() != 2 {
            return Err(AlgebraError::Parse { input: text.into(), reason: format!("{mono} is not quadratic") });
        }
        terms.push((idx[0], idx[1], c));
    }
    Ok(QuadraticForm::from_terms(nvars, &terms))
}

/// The pair `(K[x1,x2]/(x1 x2, x1^3 - x2^3), <x1, x2, x1^2 + alpha x2^2, x1^3>)`.
pub fn w_alpha(alpha: &Rat) -> CatalogPair {
    let source = catalog().algebra("dim6/x1x2,x1^3-x2^3").expect("bundled");
    let element = |g: &str| source.presentation.element(g).expect("well-formed generator");
    let mixed: Vec<Rat> = element("x1^2").iter().zip(element("x2^2")).map(|(a, b)| a + alpha * b).collect();
    let vectors = vec![element("x1"), element("x2"), mixed, element("x1^3")];
    let generators = vec!["x1".to_string(), "x2".to_string(), format!("x1^2 + ({alpha})*x2^2"), "x1^3".to_string()];
    let subspace = source.algebra.subspace(vectors).expect("independent generators in m");
    CatalogPair {
        label: format!("w-alpha/{alpha}"),
        algebra_name: source.name.clone(),
        algebra: source.algebra.clone(),
        generators,
        subspace,
        expected_degree: 2,
        expected_rank: if alpha.is_zero() { 3 } else { 4 },
        expected_form: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_catalog_loads() {
        let c = catalog();
        assert_eq!(c.pairs_with_prefix("dim4/").count(), 3);
        assert_eq!(c.pairs_with_prefix("dim5/").count(), 11);
        assert!(c.algebras.iter().all(|a| a.algebra.validate().is_valid()));
        assert!(c.algebra("dim4/R4").is_some());
    }

    #[test]
    fn schema_is_enforced() {
        let bumped = CATALOG_JSON.replacen("\"schema_version\": 1", "\"schema_version\": 2", 1);
        assert!(matches!(Catalog::parse(&bumped), Err(AlgebraError::Malformed(_))));
        let bad_ref = r#"{"schema_version": 1, "algebras": [], "pairs": [{"label": "p", "algebra": "none", "subspace": [], "degree": 2, "rank": 3}]}"#;
        assert!(matches!(Catalog::parse(bad_ref), Err(AlgebraError::Malformed(_))));
    }

    #[test]
    fn quadric_parsing() {
        let q = parse_quadric("X0*X2 - 1/2*X1^2", 4).unwrap();
        assert_eq!(q.coefficient(0, 2), Rat::from_integer(1.into()));
        assert_eq!(q.coefficient(1, 1), Rat::new((-1).into(), 2.into()));
        assert!(parse_quadric("X0", 4).is_err());
    }

    #[test]
    fn w_alpha_subspace() {
        let p = w_alpha(&Rat::from_integer(0.into()));
        assert_eq!(p.subspace.dim(), 4);
        assert_eq!(p.algebra.hypersurface_degree(&p.subspace), Ok(2));
        assert_eq!(p.expected_rank, 3);
    }

    #[test]
    fn every_pair_reproduces_its_rank() {
        for p in &catalog().pairs {
            assert_eq!(p.algebra.hypersurface_degree(&p.subspace), Ok(p.expected_degree), "{}", p.label);
            let q = crate::localalg::orbit_quadric(&p.algebra, &p.subspace).unwrap_or_else(|e| panic!("{}: {e}", p.label));
            assert_eq!(q.rank, p.expected_rank, "{}", p.label);
            if let Some(f) = &p.expected_form {
                assert!(q.quadric.proportional_to(f), "{}: {}", p.label, q.form);
            }
        }
    }
}
