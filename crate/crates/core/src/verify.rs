//! Exact verification of candidate solutions.
//!
//! Equations over a root of unity reduce exponents modulo the order. For
//! other bases the terms (with the right-hand side as a term at exponent 0)
//! are sorted by exponent and split wherever two consecutive exponents are
//! further apart than the equation's gap bound: the sum vanishes iff every
//! group vanishes, and each group is evaluated after shifting by its own
//! minimum. Exponents of any size therefore cost only a few small powers.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::algebra::{format_rational, FieldElement};
use crate::bounds::gap_bound;
use crate::error::{Error, Result};
use crate::model::{ExpEquation, ExpSystem};

/// Largest `|x_j|` for which a nonzero residual is materialized.
pub const RESIDUAL_EXPONENT_LIMIT: u64 = 1 << 14;

/// Spans up to this size are evaluated in one shifted pass.
const DIRECT_SPAN: u64 = 4096;

#[derive(Clone, Debug, PartialEq)]
pub struct EquationCheck {
    pub satisfied: bool,
    /// `Σ_j q_j α^{x_j} - q_0`; `None` when nonzero and too large to expand.
    pub residual: Option<FieldElement>,
}

fn check_len(system: &ExpSystem, x: &[BigInt]) -> Result<()> {
    if x.len() != system.num_vars() {
        return Err(Error::DimensionMismatch { expected: system.num_vars(), found: x.len() });
    }
    Ok(())
}

/// Whether `x` solves every equation of `system`.
pub fn verify(system: &ExpSystem, x: &[BigInt]) -> Result<bool> {
    check_len(system, x)?;
    for eq in system.equations() {
        if !equation_holds(eq, x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Per-equation satisfaction and residuals.
pub fn verify_report(system: &ExpSystem, x: &[BigInt]) -> Result<Vec<EquationCheck>> {
    check_len(system, x)?;
    let small = x.iter().all(|v| v.abs() <= BigInt::from(RESIDUAL_EXPONENT_LIMIT));
    system
        .equations()
        .iter()
        .map(|eq| {
            let satisfied = equation_holds(eq, x)?;
            let residual = if satisfied {
                Some(FieldElement::zero(eq.field()))
            } else if small {
                Some(residual(eq, x)?)
            } else {
                None
            };
            Ok(EquationCheck { satisfied, residual })
        })
        .collect()
}

/// The unshifted residual, computed with full powers.
fn residual(eq: &ExpEquation, x: &[BigInt]) -> Result<FieldElement> {
    let alpha = FieldElement::generator(eq.field());
    let mut acc = -eq.rhs();
    for (q, e) in eq.coeffs().iter().zip(x) {
        if !q.is_zero() {
            acc = acc + q * &alpha.pow(e)?;
        }
    }
    Ok(acc)
}

/// Whether a single equation holds at `x`.
pub fn equation_holds(eq: &ExpEquation, x: &[BigInt]) -> Result<bool> {
    let field = eq.field();
    let alpha = FieldElement::generator(field);
    if let Some(n) = field.root_of_unity_order() {
        let n = BigInt::from(n);
        let mut acc = -eq.rhs();
        for (q, e) in eq.coeffs().iter().zip(x) {
            if !q.is_zero() {
                let r = ((e % &n) + &n) % &n;
                acc = acc + q * &alpha.pow(&r)?;
            }
        }
        return Ok(acc.is_zero());
    }

    let mut terms: Vec<(BigInt, FieldElement)> = eq
        .coeffs()
        .iter()
        .zip(x)
        .filter(|(q, _)| !q.is_zero())
        .map(|(q, e)| (e.clone(), q.clone()))
        .collect();
    if !eq.rhs().is_zero() {
        terms.push((BigInt::zero(), -eq.rhs()));
    }
    if terms.is_empty() {
        return Ok(true);
    }
    terms.sort_by(|a, b| a.0.cmp(&b.0));

    let span = &terms[terms.len() - 1].0 - &terms[0].0;
    let split_at = if span <= BigInt::from(DIRECT_SPAN) { None } else { Some(gap_bound(eq)?) };

    let mut start = 0;
    for i in 1..=terms.len() {
        let boundary = i == terms.len()
            || split_at.as_ref().is_some_and(|g| &(&terms[i].0 - &terms[i - 1].0) > g);
        if boundary {
            if !shifted_sum(&alpha, &terms[start..i])?.is_zero() {
                return Ok(false);
            }
            start = i;
        }
    }
    Ok(true)
}

/// `Σ q α^{e - e_min}` over a group of sorted terms.
fn shifted_sum(alpha: &FieldElement, terms: &[(BigInt, FieldElement)]) -> Result<FieldElement> {
    let base = &terms[0].0;
    let mut acc = FieldElement::zero(alpha.field());
    for (e, q) in terms {
        acc = acc + q * &alpha.pow(&(e - base))?;
    }
    Ok(acc)
}

/// Independent evaluator: `α^e` by repeated multiplication (by `α^{-1}` for
/// negative `e`).
pub fn naive_power(alpha: &FieldElement, e: i64) -> Result<FieldElement> {
    let step = if e >= 0 { alpha.clone() } else { alpha.inverse()? };
    let mut acc = FieldElement::one(alpha.field());
    for _ in 0..e.unsigned_abs() {
        acc = &acc * &step;
    }
    Ok(acc)
}

/// Verification through [`naive_power`] only, for machine-sized exponents.
pub fn verify_naive(system: &ExpSystem, x: &[i64]) -> Result<bool> {
    if x.len() != system.num_vars() {
        return Err(Error::DimensionMismatch { expected: system.num_vars(), found: x.len() });
    }
    for eq in system.equations() {
        let alpha = FieldElement::generator(eq.field());
        let mut acc = -eq.rhs();
        for (q, &e) in eq.coeffs().iter().zip(x) {
            if !q.is_zero() {
                acc = acc + q * &naive_power(&alpha, e)?;
            }
        }
        if !acc.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Parses `{"x": [...]}` (entries as decimal strings or integers). Documents
/// carrying the object, or a bare array, under `"witness"` are accepted too.
pub fn parse_solution(text: &str) -> Result<Vec<BigInt>> {
    let root: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid solution JSON: {e}")))?;
    let obj = match root.get("witness") {
        Some(Value::Null) => return Err(Error::Parse("solution document has a null witness".into())),
        Some(w) => w,
        None => &root,
    };
    let entries = obj
        .as_array()
        .or_else(|| obj.get("x").and_then(Value::as_array))
        .ok_or_else(|| Error::Parse("solution must have an array \"x\"".into()))?;
    entries
        .iter()
        .enumerate()
        .map(|(i, v)| crate::model::parse_big_int_value(v, &format!("x[{i}]")))
        .collect()
}

pub fn solution_to_json(x: &[BigInt]) -> Value {
    json!({ "x": x.iter().map(|v| v.to_string()).collect::<Vec<_>>() })
}

pub fn report_to_json(checks: &[EquationCheck]) -> Value {
    let residuals: Vec<Value> = checks
        .iter()
        .enumerate()
        .map(|(i, c)| {
            json!({
                "equation": i,
                "satisfied": c.satisfied,
                "residual": c.residual.as_ref().map_or(Value::Null, |r| {
                    Value::Array(r.coords().iter().map(|v| json!(format_rational(v))).collect())
                }),
            })
        })
        .collect();
    json!({ "valid": checks.iter().all(|c| c.satisfied), "residuals": residuals })
}

/// Exponents as `i64` when all of them fit.
pub fn to_i64s(x: &[BigInt]) -> Option<Vec<i64>> {
    x.iter().map(ToPrimitive::to_i64).collect()
}
