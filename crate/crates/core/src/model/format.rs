//! JSON instance format.
//!
//! ```json
//! { "vars": 1,
//!   "bases": [ { "min_poly": [-2, 1] } ],
//!   "equations": [ { "base": 0, "coeffs": [["1"]], "rhs": ["4"] } ] }
//! ```

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use super::{ExpEquation, ExpSystem};
use crate::algebra::{format_rational, parse_rational, FieldElement, IntPolynomial, NumberField, Rational};
use crate::error::{Error, Result, ValidationError};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str, ctx: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| parse_err(format!("{ctx}: missing key {key:?}")))
}

fn as_array<'a>(v: &'a Value, ctx: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(format!("{ctx}: expected an array")))
}

fn as_index(v: &Value, ctx: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| parse_err(format!("{ctx}: expected a non-negative integer")))
}

/// JSON integer or decimal string.
pub(crate) fn parse_big_int(v: &Value, ctx: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| parse_err(format!("{ctx}: expected an integer, found {n}"))),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("{ctx}: invalid integer {s:?}"))),
        _ => Err(parse_err(format!("{ctx}: expected an integer"))),
    }
}

/// Rational as `"a/b"`, `"a"`, or a bare JSON integer.
fn parse_rational_value(v: &Value, ctx: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| match e {
            Error::Parse(m) => parse_err(format!("{ctx}: {m}")),
            other => other,
        }),
        Value::Number(_) => Ok(Rational::from_integer(parse_big_int(v, ctx)?)),
        _ => Err(parse_err(format!("{ctx}: expected a rational string"))),
    }
}

pub(crate) fn big_int_to_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(small) => json!(small),
        None => json!(v.to_string()),
    }
}

fn coord_vector(v: &Value, d: usize, equation: usize, ctx: &str) -> Result<Vec<Rational>> {
    let items = as_array(v, ctx)?;
    if items.len() != d {
        return Err(ValidationError::CoefficientLength { equation, expected: d, found: items.len() }.into());
    }
    items
        .iter()
        .enumerate()
        .map(|(h, item)| parse_rational_value(item, &format!("{ctx}[{h}]")))
        .collect()
}

/// Parses and validates an instance document.
pub fn parse_system(text: &str) -> Result<ExpSystem> {
    let root: Value = serde_json::from_str(text).map_err(|e| parse_err(format!("invalid JSON: {e}")))?;
    let obj = root.as_object().ok_or_else(|| parse_err("instance must be a JSON object"))?;
    let k = as_index(get(obj, "vars", "instance")?, "vars")?;

    let mut fields = Vec::new();
    for (b, base) in as_array(get(obj, "bases", "instance")?, "bases")?.iter().enumerate() {
        let ctx = format!("bases[{b}]");
        let bobj = base.as_object().ok_or_else(|| parse_err(format!("{ctx}: expected an object")))?;
        let coeffs = as_array(get(bobj, "min_poly", &ctx)?, &ctx)?
            .iter()
            .enumerate()
            .map(|(j, c)| parse_big_int(c, &format!("{ctx}.min_poly[{j}]")))
            .collect::<Result<Vec<_>>>()?;
        fields.push(NumberField::new(IntPolynomial::new(coeffs), b)?);
    }

    let mut equations = Vec::new();
    for (i, eq) in as_array(get(obj, "equations", "instance")?, "equations")?.iter().enumerate() {
        let ctx = format!("equations[{i}]");
        let eobj = eq.as_object().ok_or_else(|| parse_err(format!("{ctx}: expected an object")))?;
        let base = as_index(get(eobj, "base", &ctx)?, &format!("{ctx}.base"))?;
        let field = fields
            .get(base)
            .ok_or(ValidationError::BaseIndexOutOfRange { equation: i, base })?
            .clone();
        let d = field.degree();
        let raw_coeffs = as_array(get(eobj, "coeffs", &ctx)?, &format!("{ctx}.coeffs"))?;
        if raw_coeffs.len() != k {
            return Err(ValidationError::CoefficientLength { equation: i, expected: k, found: raw_coeffs.len() }.into());
        }
        let coeffs = raw_coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let coords = coord_vector(c, d, i, &format!("{ctx}.coeffs[{j}]"))?;
                Ok(FieldElement::from_coords(coords, &field))
            })
            .collect::<Result<Vec<_>>>()?;
        let rhs = match eobj.get("rhs") {
            Some(v) => FieldElement::from_coords(coord_vector(v, d, i, &format!("{ctx}.rhs"))?, &field),
            None => FieldElement::zero(&field),
        };
        equations.push(ExpEquation::new(base, coeffs, rhs));
    }
    ExpSystem::new(fields, equations, k)
}

fn element_to_json(e: &FieldElement) -> Value {
    Value::Array(e.coords().iter().map(|c| json!(format_rational(c))).collect())
}

/// Canonical JSON form; [`parse_system`] inverts it.
pub fn system_to_json(system: &ExpSystem) -> Value {
    let bases: Vec<Value> = system
        .fields()
        .iter()
        .map(|f| json!({ "min_poly": f.min_poly().coeffs().iter().map(big_int_to_json).collect::<Vec<_>>() }))
        .collect();
    let equations: Vec<Value> = system
        .equations()
        .iter()
        .map(|eq| {
            json!({
                "base": eq.base(),
                "coeffs": eq.coeffs().iter().map(element_to_json).collect::<Vec<_>>(),
                "rhs": element_to_json(eq.rhs()),
            })
        })
        .collect();
    json!({ "vars": system.num_vars(), "bases": bases, "equations": equations })
}

pub fn system_to_json_string(system: &ExpSystem) -> String {
    serde_json::to_string_pretty(&system_to_json(system)).expect("JSON values always serialize")
}
