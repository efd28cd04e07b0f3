//! JSON forms of fields, scalars, matrices, algebras and modules.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::StructureAlgebra;
use crate::error::{Error, Result};
use crate::exactmath::{format_vector, FieldSpec, Matrix, Scalar};
use crate::modules::{ModuleSide, RModule};

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

/// Accepts `{"kind":"rational"}`, `{"kind":"prime","p":5}`, `"Q"`, `"F_5"`
/// or a bare prime.
pub fn field_from_json(v: &Value) -> Result<FieldSpec> {
    match v {
        Value::String(s) => match s.trim() {
            "Q" | "QQ" | "rational" => Ok(FieldSpec::Rational),
            t => {
                let p = t
                    .strip_prefix("F_")
                    .or_else(|| t.strip_prefix("GF"))
                    .unwrap_or(t)
                    .parse::<u64>()
                    .map_err(|_| schema(format!("unknown field {t:?}")))?;
                FieldSpec::prime(p)
            }
        },
        Value::Number(n) => FieldSpec::prime(
            n.as_u64()
                .ok_or_else(|| schema("field modulus must be a positive integer"))?,
        ),
        Value::Object(_) => match serde_json::from_value::<FieldSpec>(v.clone()) {
            Ok(FieldSpec::Prime { p }) => FieldSpec::prime(p),
            Ok(f) => Ok(f),
            Err(e) => Err(schema(format!("field: {e}"))),
        },
        _ => Err(schema("field must be an object or a string")),
    }
}

pub fn field_to_json(f: FieldSpec) -> Value {
    serde_json::to_value(f).expect("field serializes")
}

pub fn scalar_from_json(field: FieldSpec, v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => field.parse(s),
        Value::Number(n) => field.parse(&n.to_string()),
        _ => Err(schema(format!("expected a scalar, found {v}"))),
    }
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| schema(format!("{what} must be an array")))
}

pub fn vector_from_json(field: FieldSpec, v: &Value) -> Result<Vec<Scalar>> {
    array(v, "vector")?.iter().map(|x| scalar_from_json(field, x)).collect()
}

pub fn vector_to_json(v: &[Scalar]) -> Value {
    json!(format_vector(v))
}

pub fn matrix_from_json(field: FieldSpec, v: &Value) -> Result<Matrix> {
    let rows = array(v, "matrix")?
        .iter()
        .map(|r| vector_from_json(field, r))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(field, rows)
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| vector_to_json(r)).collect())
}

fn usize_of(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| schema(format!("{what} must be a nonnegative integer")))
}

/// `{"field", "dim", "basis"?, "unit"?, "mu": [[i,j,k,"c"], …]}`.
pub fn algebra_from_json(v: &Value) -> Result<StructureAlgebra> {
    let field = field_from_json(v.get("field").ok_or_else(|| schema("algebra needs \"field\""))?)?;
    let dim = usize_of(v.get("dim").ok_or_else(|| schema("algebra needs \"dim\""))?, "dim")?;
    let labels = match v.get("basis") {
        None | Some(Value::Null) => None,
        Some(b) => Some(
            array(b, "basis")?
                .iter()
                .map(|l| {
                    l.as_str()
                        .map(str::to_owned)
                        .ok_or_else(|| schema("basis labels must be strings"))
                })
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    let unit = match v.get("unit") {
        None | Some(Value::Null) => None,
        Some(u) => Some(vector_from_json(field, u)?),
    };
    let mut entries = Vec::new();
    for e in array(v.get("mu").ok_or_else(|| schema("algebra needs \"mu\""))?, "mu")? {
        let e = array(e, "mu entry")?;
        if e.len() != 4 {
            return Err(schema("mu entries are [i, j, k, scalar]"));
        }
        entries.push((
            usize_of(&e[0], "i")?,
            usize_of(&e[1], "j")?,
            usize_of(&e[2], "k")?,
            scalar_from_json(field, &e[3])?,
        ));
    }
    StructureAlgebra::new(field, dim, labels, entries, unit)
}

pub fn algebra_to_json(a: &StructureAlgebra) -> Value {
    let mu: Vec<Value> = a
        .structure_constants()
        .iter()
        .map(|c| json!([c.i, c.j, c.k, c.value.to_string()]))
        .collect();
    json!({
        "field": field_to_json(a.field()),
        "dim": a.dim(),
        "basis": a.labels(),
        "unit": vector_to_json(a.unit()),
        "mu": mu,
    })
}

/// `{"dim", "side", "action"}`; the `"algebra"` entry is resolved by the caller.
pub fn module_from_json(v: &Value, algebra: Arc<StructureAlgebra>) -> Result<RModule> {
    let field = algebra.field();
    let dim = usize_of(v.get("dim").ok_or_else(|| schema("module needs \"dim\""))?, "dim")?;
    let side = match v.get("side").and_then(Value::as_str) {
        Some("left") | None => ModuleSide::Left,
        Some("right") => ModuleSide::Right,
        Some(other) => return Err(schema(format!("side must be \"left\" or \"right\", found {other:?}"))),
    };
    let action = array(
        v.get("action").ok_or_else(|| schema("module needs \"action\""))?,
        "action",
    )?
    .iter()
    .map(|m| matrix_from_json(field, m))
    .collect::<Result<Vec<_>>>()?;
    RModule::new(algebra, side, dim, action)
}

pub fn module_to_json(u: &RModule) -> Value {
    json!({
        "algebra": algebra_to_json(u.algebra()),
        "dim": u.dim(),
        "side": u.side(),
        "action": u.action().iter().map(matrix_to_json).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::standard::{matrix_algebra, truncated_polynomial};
    use crate::modules::regular_module;

    #[test]
    fn algebra_round_trip() {
        for a in [
            truncated_polynomial(FieldSpec::Rational, 4),
            matrix_algebra(FieldSpec::prime(5).unwrap(), 2),
        ] {
            let back = algebra_from_json(&algebra_to_json(&a)).unwrap();
            assert_eq!(back, a);
        }
    }

    #[test]
    fn fields_in_several_spellings() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(field_from_json(&json!("F_5")).unwrap(), f5);
        assert_eq!(field_from_json(&json!(5)).unwrap(), f5);
        assert_eq!(field_from_json(&json!({"kind": "prime", "p": 5})).unwrap(), f5);
        assert_eq!(field_from_json(&json!("Q")).unwrap(), FieldSpec::Rational);
        assert_eq!(
            field_from_json(&json!({"kind": "prime", "p": 6})),
            Err(Error::NotPrime(6))
        );
    }

    #[test]
    fn unit_is_solved_and_errors_are_reported() {
        let v = json!({"field": {"kind": "rational"}, "dim": 2, "mu": [[0,0,0,"1"],[0,1,1,1],[1,0,1,"1"]]});
        let a = algebra_from_json(&v).unwrap();
        assert_eq!(a.unit(), &[FieldSpec::Rational.one(), FieldSpec::Rational.zero()]);
        let bad = json!({"field": "Q", "dim": 2, "mu": [[0,0,0]]});
        assert!(matches!(algebra_from_json(&bad), Err(Error::Schema(_))));
    }

    #[test]
    fn module_round_trip() {
        let a = Arc::new(truncated_polynomial(FieldSpec::Rational, 3));
        let u = regular_module(a.clone(), ModuleSide::Right);
        let v = module_to_json(&u);
        let back = module_from_json(&v, a).unwrap();
        assert_eq!(back.action(), u.action());
        assert_eq!(back.side(), ModuleSide::Right);
    }
}
