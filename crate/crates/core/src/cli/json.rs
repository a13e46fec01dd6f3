//! JSON forms of the domain types. Integers are JSON numbers of any size;
//! rationals are strings such as `"-1/2"` so that they survive every parser.
//!
//! - polytope: `{"dim": n, "vertices": [[int, ...], ...]}`
//! - fan: `{"rays": [[int, ...], ...], "max_cones": [[index, ...], ...]}`
//! - algebra: `{"dim": m, "basis": [name, ...], "table": [[[rat, ...]]]}`
//! - pair: an algebra plus `{"subspace": [[rat, ...], ...], "label": str}`

use std::str::FromStr;

use serde_json::{json, Map, Value};

use super::CliError;
use crate::linalg::{Int, IntVector, Rat};
use crate::localalg::{LocalAlgebra, Subspace};
use crate::polytope::LatticePolytope;
use crate::toric::{ClassDegree, Fan};

pub fn int(x: &Int) -> Value {
    serde_json::from_str(&x.to_string()).expect("an integer is a JSON number")
}

pub fn int_list(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn int_rows(rows: &[IntVector]) -> Value {
    Value::Array(rows.iter().map(|r| int_list(r)).collect())
}

pub fn rat(x: &Rat) -> Value {
    Value::String(x.to_string())
}

pub fn rat_list(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

pub fn polytope(p: &LatticePolytope) -> Value {
    json!({ "dim": p.dim(), "vertices": int_rows(p.vertices()) })
}

pub fn fan(f: &Fan) -> Value {
    json!({ "rays": int_rows(f.rays()), "max_cones": f.max_cones() })
}

pub fn class_degree(d: &ClassDegree) -> Value {
    json!({ "free": int_list(&d.free), "torsion": int_list(&d.torsion) })
}

pub fn algebra(a: &LocalAlgebra) -> Map<String, Value> {
    let table: Vec<Value> = a.table().iter().map(|row| Value::Array(row.iter().map(|v| rat_list(v)).collect())).collect();
    let mut m = Map::new();
    m.insert("dim".into(), json!(a.dim()));
    m.insert("basis".into(), json!(a.basis_names()));
    m.insert("table".into(), Value::Array(table));
    m
}

pub fn pair(label: &str, a: &LocalAlgebra, w: &Subspace) -> Value {
    let mut m = algebra(a);
    m.insert("subspace".into(), Value::Array(w.basis().iter().map(|v| rat_list(v)).collect()));
    m.insert("label".into(), json!(label));
    Value::Object(m)
}

/// Indented JSON with arrays of scalars kept on one line.
pub fn pretty(v: &Value) -> String {
    let mut out = String::new();
    write_pretty(v, 0, &mut out);
    out
}

fn write_pretty(v: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Array(items) if items.iter().any(|x| x.is_array() || x.is_object()) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_pretty(x, depth + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push_str(&format!("[{}]", inner.join(", ")));
        }
        Value::Object(m) if !m.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                out.push_str(&format!("{}{}: ", pad(depth + 1), Value::String(k.clone())));
                write_pretty(x, depth + 1, out);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}

fn bad(what: &str, detail: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{what}: {detail}"))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    v.get(key).ok_or_else(|| bad("missing field", key))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array().ok_or_else(|| bad(what, "expected an array"))
}

pub fn read_int(v: &Value) -> Result<Int, CliError> {
    match v {
        Value::Number(n) => Int::from_str(&n.to_string()).map_err(|_| bad("expected an integer", n)),
        Value::String(s) => Int::from_str(s.trim()).map_err(|_| bad("expected an integer", s)),
        other => Err(bad("expected an integer", other)),
    }
}

pub fn read_rat(v: &Value) -> Result<Rat, CliError> {
    match v {
        Value::Number(n) => Rat::from_str(&n.to_string()).map_err(|_| bad("expected a rational", n)),
        Value::String(s) => Rat::from_str(s.trim()).map_err(|_| bad("expected a rational", s)),
        other => Err(bad("expected a rational", other)),
    }
}

fn read_usize(v: &Value, what: &str) -> Result<usize, CliError> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| bad(what, "expected a nonnegative integer"))
}

fn read_int_rows(v: &Value, what: &str) -> Result<Vec<IntVector>, CliError> {
    array(v, what)?.iter().map(|r| array(r, what)?.iter().map(read_int).collect()).collect()
}

pub fn read_polytope(v: &Value) -> Result<LatticePolytope, CliError> {
    let dim = read_usize(field(v, "dim")?, "dim")?;
    let vertices = read_int_rows(field(v, "vertices")?, "vertices")?;
    Ok(LatticePolytope::new(dim, vertices)?)
}

pub fn read_fan(v: &Value) -> Result<Fan, CliError> {
    let rays = read_int_rows(field(v, "rays")?, "rays")?;
    let cones = array(field(v, "max_cones")?, "max_cones")?
        .iter()
        .map(|c| array(c, "max_cones")?.iter().map(|i| read_usize(i, "cone index")).collect())
        .collect::<Result<Vec<Vec<usize>>, CliError>>()?;
    Ok(Fan::new(rays, cones)?)
}

/// An algebra; structure constants are checked for shape only.
pub fn read_algebra(v: &Value) -> Result<LocalAlgebra, CliError> {
    let dim = read_usize(field(v, "dim")?, "dim")?;
    let basis: Vec<String> = array(field(v, "basis")?, "basis")?
        .iter()
        .map(|b| b.as_str().map(str::to_string).ok_or_else(|| bad("basis", "expected strings")))
        .collect::<Result<_, _>>()?;
    if basis.len() != dim {
        return Err(bad("basis", format!("{} names for dimension {dim}", basis.len())));
    }
    let table = array(field(v, "table")?, "table")?
        .iter()
        .map(|row| array(row, "table")?.iter().map(|cell| array(cell, "table")?.iter().map(read_rat).collect()).collect())
        .collect::<Result<Vec<Vec<Vec<Rat>>>, CliError>>()?;
    Ok(LocalAlgebra::new(basis, table)?)
}

/// A validated algebra with its subspace and label.
pub fn read_pair(v: &Value) -> Result<(String, LocalAlgebra, Subspace), CliError> {
    let a = read_algebra(v)?;
    a.ensure_valid()?;
    let vectors = array(field(v, "subspace")?, "subspace")?
        .iter()
        .map(|w| array(w, "subspace")?.iter().map(read_rat).collect())
        .collect::<Result<Vec<Vec<Rat>>, CliError>>()?;
    let w = a.subspace(vectors)?;
    let label = v.get("label").and_then(Value::as_str).unwrap_or("").to_string();
    Ok((label, a, w))
}
