//! The `toric-add` command line: JSON in, JSON out.
//!
//! Exit status is 0 on success, 1 when a computation rejects its input (the
//! error is printed as `{"error": {"kind", "message"}}` on standard output),
//! and 2 on usage errors.

pub mod json;
mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::linalg::Rat;
use crate::localalg::{
    self, catalog, orbit_quadric, verify_additive_action, w_alpha, ActionKind, AlgebraError, LocalAlgebra, Subspace,
};
use crate::polytope::{classify_inscribed_hypersurface_polytopes, LatticePolytope, PolytopeError};
use crate::toric::{self, Fan, ToricError};

pub use verify::{verification_report, Claim};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl CliError {
    /// Stable machine-readable name of the error case.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Input(_) => "input",
            CliError::Polytope(e) => match e {
                PolytopeError::ZeroDimension => "polytope.zero_dimension",
                PolytopeError::Empty => "polytope.empty",
                PolytopeError::DimensionMismatch { .. } => "polytope.dimension_mismatch",
                PolytopeError::DuplicatePoint(_) => "polytope.duplicate_point",
                PolytopeError::NotFullDimensional { .. } => "polytope.not_full_dimensional",
                PolytopeError::NotAVertex(_) => "polytope.not_a_vertex",
                PolytopeError::InvalidWitness(_) => "polytope.invalid_witness",
            },
            CliError::Toric(e) => match e {
                ToricError::NotHypersurface { .. } => "toric.not_hypersurface",
                ToricError::RaysDoNotSpan { .. } => "toric.rays_do_not_span",
                ToricError::UnpointedGrading => "toric.unpointed_grading",
                ToricError::TooManyRays { .. } => "toric.too_many_rays",
                ToricError::InvalidFan(_) => "toric.invalid_fan",
            },
            CliError::Algebra(e) => match e {
                AlgebraError::Malformed(_) => "algebra.malformed",
                AlgebraError::DimensionMismatch { .. } => "algebra.dimension_mismatch",
                AlgebraError::NotInMaximalIdeal(_) => "algebra.not_in_maximal_ideal",
                AlgebraError::DependentSubspace => "algebra.dependent_subspace",
                AlgebraError::NotAHyperplane { .. } => "algebra.not_a_hyperplane",
                AlgebraError::ZeroIdealImmediately => "algebra.zero_ideal_immediately",
                AlgebraError::DoesNotGenerate => "algebra.does_not_generate",
                AlgebraError::DegreeNotTwo(_) => "algebra.degree_not_two",
                AlgebraError::NonUniqueQuadric { .. } => "algebra.non_unique_quadric",
                AlgebraError::HoldoutMismatch(_) => "algebra.holdout_mismatch",
                AlgebraError::Invalid(_) => "algebra.invalid",
                AlgebraError::Parse { .. } => "algebra.parse",
            },
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "toric-add", version, about = "Exact computations for toric hypersurfaces with additive actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Pretty-printed JSON (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Plain `key: value` lines instead of JSON.
    #[arg(long, global = true)]
    text: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lattice polytope computations.
    #[command(subcommand)]
    Polytope(PolytopeCmd),
    /// Toric varieties of polytopes and fans.
    #[command(subcommand)]
    Toric(ToricCmd),
    /// Local algebras and their orbit hypersurfaces.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Recompute every checked claim and report pass/fail per claim.
    Verify {
        /// Largest dimension for the exhaustive classification.
        #[arg(long, default_value_t = 4)]
        dim_max: usize,
        /// Leave out wall-clock timings, so the output is byte-stable.
        #[arg(long)]
        no_timings: bool,
    },
}

#[derive(Subcommand, Debug)]
enum PolytopeCmd {
    /// Facet inequalities.
    Facets(PolytopeSource),
    /// All lattice points.
    Points(PolytopeSource),
    /// Edges as pairs of vertex indices.
    Edges(PolytopeSource),
    /// Whether the polytope is inscribed in a rectangle, with a witness.
    Inscribed(PolytopeSource),
    /// Normality up to a dilation bound, and very ampleness.
    Normal {
        #[command(flatten)]
        source: PolytopeSource,
        /// Largest dilation checked; defaults to max(dim - 1, 1).
        #[arg(long)]
        kmax: Option<u32>,
    },
    /// Inscribed polytopes with dim + 2 lattice points, up to equivalence.
    Classify {
        #[arg(long)]
        dim: usize,
    },
}

#[derive(Subcommand, Debug)]
enum ToricCmd {
    /// The binomial equation of a hypersurface polytope.
    Equation(PolytopeSource),
    /// The normal fan.
    Fan(PolytopeSource),
    /// The divisor class group and the degree of each ray.
    Clgroup(PolytopeSource),
    /// Dimension of the connected automorphism group via the Cox ring.
    Autdim(PolytopeSource),
    /// Order of the automorphism component group.
    Components(PolytopeSource),
}

#[derive(Subcommand, Debug)]
enum AlgebraCmd {
    /// Check the algebra axioms.
    Validate(AlgebraSource),
    /// Exponential of an element of the maximal ideal.
    Exp {
        #[command(flatten)]
        source: AlgebraSource,
        /// Element written in the basis names, e.g. "x1 - 1/2*x1*x2".
        #[arg(long, allow_hyphen_values = true)]
        elem: String,
    },
    /// Degree of the orbit-closure hypersurface of a pair.
    Degree(AlgebraSource),
    /// The quadric through the orbit closure of a degree-two pair.
    OrbitQuadric(AlgebraSource),
    /// List the bundled pairs, or print one as pair JSON.
    Catalog {
        #[arg(long)]
        label: Option<String>,
    },
    /// Check a normalized additive action on a quadric.
    ActionCheck {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        dim: usize,
    },
}

#[derive(Args, Debug)]
struct PolytopeSource {
    /// JSON file: a polytope, or for toric commands also a fan.
    #[arg(long = "in", value_name = "FILE", conflicts_with = "family")]
    input: Option<PathBuf>,
    /// A named polytope instead of a file.
    #[arg(long, value_enum, requires = "dim")]
    family: Option<Family>,
    #[arg(long)]
    dim: Option<usize>,
}

#[derive(Args, Debug)]
struct AlgebraSource {
    /// JSON file: an algebra or a pair.
    #[arg(long = "in", value_name = "FILE", conflicts_with_all = ["label", "alpha"])]
    input: Option<PathBuf>,
    /// A bundled pair label or algebra name.
    #[arg(long, conflicts_with = "alpha")]
    label: Option<String>,
    /// The one-parameter family of pairs in dimension 6, at this value.
    #[arg(long, value_name = "P/Q", allow_hyphen_values = true, value_parser = parse_rat)]
    alpha: Option<Rat>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Family {
    /// conv(0, 2e_1, e_2, ..., e_n)
    A,
    /// conv(0, e_1, ..., e_n, e_1 + e_2)
    B,
    /// The standard simplex.
    Simplex,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Kind {
    Q3,
    Q4,
}

fn parse_rat(s: &str) -> Result<Rat, String> {
    Rat::from_str(s.trim()).map_err(|_| format!("{s:?} is not a rational number like 3 or -1/2"))
}

/// Runs the command line and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let (stream, code): (&mut dyn Write, i32) = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (out, 0),
                _ => (err, 2),
            };
            let _ = write!(stream, "{}", e.render());
            return code;
        }
    };
    let text = cli.text;
    let (value, code) = match dispatch(cli.command) {
        Ok(result) => result,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return 2;
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            (json!({ "error": { "kind": e.kind(), "message": e.to_string() } }), 1)
        }
    };
    let rendered = if text { render_text(&value) } else { json::pretty(&value) };
    let _ = writeln!(out, "{rendered}");
    code
}

fn dispatch(command: Command) -> Result<(Value, i32), CliError> {
    match command {
        Command::Polytope(cmd) => polytope_command(cmd).map(|v| (v, 0)),
        Command::Toric(cmd) => toric_command(cmd).map(|v| (v, 0)),
        Command::Algebra(cmd) => algebra_command(cmd).map(|v| (v, 0)),
        Command::Verify { dim_max, no_timings } => {
            let report = verification_report(dim_max, !no_timings);
            let code = if report["status"] == "pass" { 0 } else { 1 };
            Ok((report, code))
        }
    }
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{} is not valid JSON: {e}", path.display())))
}

/// The polytope, or for toric commands possibly a fan given directly.
enum Geometry {
    Polytope(LatticePolytope),
    Fan(Fan),
}

fn geometry(source: &PolytopeSource) -> Result<Geometry, CliError> {
    if let Some(path) = &source.input {
        let v = read_json(path)?;
        return if v.get("rays").is_some() {
            Ok(Geometry::Fan(json::read_fan(&v)?))
        } else {
            Ok(Geometry::Polytope(json::read_polytope(&v)?))
        };
    }
    let (Some(family), Some(n)) = (source.family, source.dim) else {
        return Err(CliError::Usage("give either --in FILE or --family with --dim".into()));
    };
    let p = match family {
        Family::A if n >= 1 => LatticePolytope::family_a(n),
        Family::B if n >= 2 => LatticePolytope::family_b(n),
        Family::Simplex if n >= 1 => LatticePolytope::unit_simplex(n),
        _ => return Err(CliError::Usage(format!("--dim {n} is too small for --family {family:?}"))),
    };
    Ok(Geometry::Polytope(p))
}

fn polytope_of(source: &PolytopeSource) -> Result<LatticePolytope, CliError> {
    match geometry(source)? {
        Geometry::Polytope(p) => Ok(p),
        Geometry::Fan(_) => Err(CliError::Input("this command needs a polytope, not a fan".into())),
    }
}

fn fan_of(source: &PolytopeSource) -> Result<Fan, CliError> {
    Ok(match geometry(source)? {
        Geometry::Polytope(p) => toric::normal_fan(&p),
        Geometry::Fan(f) => f,
    })
}

fn polytope_command(cmd: PolytopeCmd) -> Result<Value, CliError> {
    Ok(match cmd {
        PolytopeCmd::Facets(s) => {
            let p = polytope_of(&s)?;
            let facets: Vec<Value> = p
                .facets()
                .iter()
                .map(|h| json!({ "normal": json::int_list(&h.normal), "offset": json::int(&h.offset), "inequality": h.to_string() }))
                .collect();
            json!({ "dim": p.dim(), "facets": facets })
        }
        PolytopeCmd::Points(s) => {
            let points = polytope_of(&s)?.lattice_points();
            json!({ "count": points.len(), "points": json::int_rows(&points) })
        }
        PolytopeCmd::Edges(s) => {
            let p = polytope_of(&s)?;
            json!({ "vertices": json::int_rows(p.vertices()), "edges": p.edges() })
        }
        PolytopeCmd::Inscribed(s) => {
            let p = polytope_of(&s)?;
            match p.inscribed_witness() {
                Some(w) => {
                    let normalized = p.normalize_at_vertex(&w)?;
                    json!({
                        "inscribed": true,
                        "witness": { "vertex": json::int_list(&w.vertex), "basis": json::int_rows(&w.basis) },
                        "normalized": json::polytope(&normalized),
                    })
                }
                None => json!({ "inscribed": false, "witness": null, "normalized": null }),
            }
        }
        PolytopeCmd::Normal { source, kmax } => {
            let p = polytope_of(&source)?;
            let k = kmax.unwrap_or_else(|| p.default_normality_bound());
            let failure = p.first_normality_failure(k);
            json!({
                "kmax": k,
                "normal": failure.is_none(),
                "first_failure": failure,
                "very_ample": p.very_ample_with_bound(k).as_str(),
            })
        }
        PolytopeCmd::Classify { dim } => {
            if dim == 0 {
                return Err(CliError::Usage("--dim must be at least 1".into()));
            }
            Value::Array(classify_inscribed_hypersurface_polytopes(dim).iter().map(json::polytope).collect())
        }
    })
}

fn toric_command(cmd: ToricCmd) -> Result<Value, CliError> {
    Ok(match cmd {
        ToricCmd::Equation(s) => {
            let eq = toric::hypersurface_equation(&polytope_of(&s)?)?;
            let rank = eq.quadratic_form().map(|q| q.rank());
            json!({ "binomial": eq.to_string(), "rank": rank })
        }
        ToricCmd::Fan(s) => {
            let f = fan_of(&s)?;
            let mut v = json::fan(&f);
            v["simplicial"] = json!(f.is_simplicial());
            v
        }
        ToricCmd::Clgroup(s) => {
            let g = toric::class_group(&fan_of(&s)?)?;
            json!({
                "group": g.describe(),
                "free_rank": g.free_rank,
                "torsion": json::int_list(&g.torsion),
                "degrees": g.degrees.iter().map(json::class_degree).collect::<Vec<_>>(),
            })
        }
        ToricCmd::Autdim(s) => {
            let r = toric::cox_aut_report(&fan_of(&s)?)?;
            let blocks: Vec<Value> = r
                .gs_blocks
                .iter()
                .map(|b| json!({ "degree": json::class_degree(&b.degree), "variables": b.variables }))
                .collect();
            json!({
                "class_group": r.class_group.describe(),
                "degrees": r.class_group.degrees.iter().map(json::class_degree).collect::<Vec<_>>(),
                "degree_blocks": blocks,
                "non_variable_monomials": r.non_variable_monomials,
                "gs_dim": r.gs_dim,
                "ru_dim": r.ru_dim,
                "h_dim": r.h_dim,
                "aut0_dim": r.aut0_dim,
            })
        }
        ToricCmd::Components(s) => {
            let f = fan_of(&s)?;
            let autos = toric::fan_automorphisms(&f)?;
            json!({ "automorphisms": autos.len(), "order": toric::component_group_order(&f)? })
        }
    })
}

/// An algebra with its subspace, if the source supplies one.
fn algebra_input(source: &AlgebraSource) -> Result<(String, LocalAlgebra, Option<Subspace>), CliError> {
    if let Some(path) = &source.input {
        let v = read_json(path)?;
        if v.get("subspace").is_some() {
            let (label, a, w) = json::read_pair(&v)?;
            return Ok((label, a, Some(w)));
        }
        return Ok((String::new(), json::read_algebra(&v)?, None));
    }
    if let Some(label) = &source.label {
        let c = catalog();
        if let Some(p) = c.pair(label) {
            return Ok((p.label.clone(), p.algebra.clone(), Some(p.subspace.clone())));
        }
        if let Some(a) = c.algebra(label) {
            return Ok((a.name.clone(), a.algebra.clone(), None));
        }
        return Err(CliError::Input(format!("no bundled pair or algebra is labelled {label:?}")));
    }
    if let Some(alpha) = &source.alpha {
        let p = w_alpha(alpha);
        return Ok((p.label, p.algebra, Some(p.subspace)));
    }
    Err(CliError::Usage("give one of --in FILE, --label NAME or --alpha P/Q".into()))
}

fn pair_input(source: &AlgebraSource) -> Result<(String, LocalAlgebra, Subspace), CliError> {
    match algebra_input(source)? {
        (label, a, Some(w)) => Ok((label, a, w)),
        _ => Err(CliError::Input("this command needs a pair with a subspace".into())),
    }
}

fn algebra_command(cmd: AlgebraCmd) -> Result<Value, CliError> {
    Ok(match cmd {
        AlgebraCmd::Validate(s) => {
            let (_, a, _) = algebra_input(&s)?;
            let v = a.validate();
            json!({
                "valid": v.is_valid(),
                "commutative": v.commutative,
                "associative": v.associative,
                "unit": v.unit,
                "nilpotent": v.nilpotent,
                "first_violation": v.first_violation,
            })
        }
        AlgebraCmd::Exp { source, elem } => {
            let (_, a, _) = algebra_input(&source)?;
            a.ensure_valid()?;
            let w = a.parse_element(&elem)?;
            let e = a.exp(&w)?;
            json!({ "exp": a.format_element(&e), "coordinates": json::rat_list(&e) })
        }
        AlgebraCmd::Degree(s) => {
            let (label, a, w) = pair_input(&s)?;
            json!({ "label": label, "degree": a.hypersurface_degree(&w)? })
        }
        AlgebraCmd::OrbitQuadric(s) => {
            let (label, a, w) = pair_input(&s)?;
            let q = orbit_quadric(&a, &w)?;
            json!({
                "label": label,
                "form": q.form.to_string(),
                "rank": q.rank,
                "samples": q.samples,
                "holdout": q.holdout,
            })
        }
        AlgebraCmd::Catalog { label: Some(label) } => {
            let p = catalog().pair(&label).ok_or_else(|| CliError::Input(format!("no bundled pair is labelled {label:?}")))?;
            json::pair(&p.label, &p.algebra, &p.subspace)
        }
        AlgebraCmd::Catalog { label: None } => {
            let c = catalog();
            let pairs: Vec<Value> = c
                .pairs
                .iter()
                .map(|p| {
                    json!({
                        "label": p.label,
                        "algebra": p.algebra_name,
                        "basis": p.algebra.basis_names(),
                        "subspace": p.generators,
                        "expected_degree": p.expected_degree,
                        "expected_rank": p.expected_rank,
                        "expected_form": p.expected_form.as_ref().map(|f| f.to_string()),
                    })
                })
                .collect();
            json!({ "schema_version": localalg::CATALOG_SCHEMA_VERSION, "pairs": pairs })
        }
        AlgebraCmd::ActionCheck { kind, dim } => {
            let kind = match kind {
                Kind::Q3 => ActionKind::Q3,
                Kind::Q4 => ActionKind::Q4,
            };
            let c = verify_additive_action(kind, dim)?;
            json!({
                "kind": kind.as_str(),
                "n": dim,
                "composition": c.composition,
                "invariance": c.invariance,
                "jacobian_rank": c.jacobian_rank,
                "pass": c.pass(),
            })
        }
    })
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            items.iter().map(scalar_text).collect::<Vec<_>>().join(", ")
        }
        other => other.to_string(),
    }
}

/// One `key: value` line per top-level field; arrays become one line per item.
fn render_text(v: &Value) -> String {
    match v {
        Value::Object(m) => m.iter().map(|(k, x)| format!("{k}: {}", scalar_text(x))).collect::<Vec<_>>().join("\n"),
        Value::Array(items) => items.iter().map(scalar_text).collect::<Vec<_>>().join("\n"),
        other => scalar_text(other),
    }
}
