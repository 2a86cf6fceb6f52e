//! Certified solution bounds: `κ(d)`, `c(α, s)`, per-equation gap and span
//! bounds, the system span bound, the modulus `N` and the certificate box.
//!
//! Rational bases are handled with exact integer arithmetic (every log is a
//! `log₂` or a comparison of rational powers). Other bases go through
//! [`ln_enclosure`], rounding every quantity in the sound direction.

mod ln;

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::algebra::{ceil_log2, NumberField, Rational};
use crate::error::{Error, Result};
use crate::model::{ExpEquation, ExpSystem};

pub use ln::{ceil_rational, ln_enclosure, Enclosure, Precision};

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

/// `hi(ln 3d)³`, an upper bound on `ln³(3d)`.
fn ln3d_cubed_hi(d: usize, prec: Precision) -> Rational {
    let l = ln_enclosure(&big(3 * d as u64), prec).hi;
    &l * &l * &l
}

/// Lower bound on `κ(d)`: `ln 2` for `d = 1`, `2/(d ln³(3d))` otherwise.
pub fn kappa(d: usize, prec: Precision) -> Rational {
    assert!(d >= 1, "kappa needs d >= 1");
    if d == 1 {
        return ln_enclosure(&big(2), prec).lo;
    }
    Rational::from_integer(big(2)) / (Rational::from_integer(big(d as u64)) * ln3d_cubed_hi(d, prec))
}

pub fn kappa_f64(d: usize) -> f64 {
    ln::to_f64(&kappa(d, Precision::DEFAULT))
}

/// Upper bound on `c(α, s) = ⌈3(ln 2 + 2 ln s)/κ(d)⌉`.
pub fn c_constant(field: &Arc<NumberField>, s: u64) -> Result<BigInt> {
    c_constant_at(field, s, Precision::DEFAULT)
}

pub fn c_constant_at(field: &Arc<NumberField>, s: u64, prec: Precision) -> Result<BigInt> {
    assert!(s >= 1, "c_constant needs s >= 1");
    if field.is_root_of_unity() {
        return Err(Error::IsRootOfUnity);
    }
    let d = field.degree();
    if d == 1 {
        // 3 log₂(2s²) = 3 + log₂(s⁶)
        return Ok(big(3) + big(ceil_log2(&big(s).pow(6))));
    }
    let ln_2s2 = ln_enclosure(&(big(2) * big(s) * big(s)), prec).hi;
    let value = Rational::from_integer(big(3 * d as u64)) * ln_2s2 * ln3d_cubed_hi(d, prec)
        / Rational::from_integer(big(2));
    Ok(ceil_rational(&value))
}

/// Integer magnitudes `|r|` of every coordinate of every term, with the
/// right-hand side counted as one more term when nonzero, after the equation
/// has been scaled to integer coordinates.
fn term_magnitudes(eq: &ExpEquation) -> Vec<Vec<BigInt>> {
    let l = Rational::from_integer(eq.denominator_lcm());
    let mut terms: Vec<&crate::algebra::FieldElement> = eq.coeffs().iter().collect();
    if !eq.rhs().is_zero() {
        terms.push(eq.rhs());
    }
    terms
        .into_iter()
        .map(|t| t.coords().iter().map(|c| (c * &l).to_integer().abs()).collect())
        .collect()
}

fn ensure_not_rou(eq: &ExpEquation) -> Result<()> {
    if eq.field().is_root_of_unity() {
        Err(Error::IsRootOfUnity)
    } else {
        Ok(())
    }
}

/// Upper bound on the gap of a single equation.
pub fn gap_bound(eq: &ExpEquation) -> Result<BigInt> {
    gap_bound_at(eq, Precision::DEFAULT)
}

pub fn gap_bound_at(eq: &ExpEquation, prec: Precision) -> Result<BigInt> {
    ensure_not_rou(eq)?;
    let d = eq.field().degree();
    let mags = term_magnitudes(eq);
    let k = mags.len() as u64;
    // M = k · d · Π (|r| + 1)
    let m = mags
        .iter()
        .flatten()
        .fold(big(k) * big(d as u64), |acc, r| acc * (r + 1u32));
    if d == 1 {
        return Ok(BigInt::one() + big(ceil_log2(&m)));
    }
    if m < big(2) {
        return Ok(big(d as u64));
    }
    let ln_m = ln_enclosure(&m, prec).hi;
    let value = Rational::from_integer(big(d as u64))
        + Rational::new(big(d as u64), big(2)) * ln3d_cubed_hi(d, prec) * ln_m;
    Ok(ceil_rational(&value))
}

/// `min { n >= 0 : β^n >= p }` for a rational `β > 1` and integer `p >= 1`.
fn rational_log_ceil(beta: &Rational, p: &BigInt) -> BigInt {
    let target = Rational::from_integer(p.clone());
    // Exponential search, then bisection, on exact rational powers.
    let pow = |n: u64| -> Rational {
        Rational::new(beta.numer().pow(n as u32), beta.denom().pow(n as u32))
    };
    if target <= Rational::one() {
        return BigInt::zero();
    }
    let mut hi = 1u64;
    while pow(hi) < target {
        hi *= 2;
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if pow(mid) >= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    big(hi)
}

/// Upper bound on the maximal span of a block of one equation.
///
/// Every base admits `(k - 1) · gap`; rational bases also admit
/// `⌈Σ_j |log_{|α|}(|q_j| + 1)|⌉`, and the smaller of the two is returned.
pub fn mspn_bound_equation(eq: &ExpEquation) -> Result<BigInt> {
    mspn_bound_equation_at(eq, Precision::DEFAULT)
}

pub fn mspn_bound_equation_at(eq: &ExpEquation, prec: Precision) -> Result<BigInt> {
    ensure_not_rou(eq)?;
    match eq.field().rational_value() {
        Some(alpha) => Ok(mspn_rational_path(eq, &alpha).min(mspn_general_path(eq, prec)?)),
        None => mspn_general_path(eq, prec),
    }
}

fn mspn_rational_path(eq: &ExpEquation, alpha: &Rational) -> BigInt {
    let a = alpha.abs();
    let beta = if a > Rational::one() { a } else { a.recip() };
    let product = term_magnitudes(eq)
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, r| acc * (r + 1u32));
    rational_log_ceil(&beta, &product)
}

/// `(k - 1) · gap`, available for every base.
pub fn mspn_general_path(eq: &ExpEquation, prec: Precision) -> Result<BigInt> {
    ensure_not_rou(eq)?;
    let k = term_magnitudes(eq).len() as u64;
    Ok(big(k.saturating_sub(1)) * gap_bound_at(eq, prec)?)
}

/// All bounds for a homogeneous system.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    /// `None` for equations over a root of unity.
    pub per_equation_gap: Vec<Option<BigInt>>,
    pub per_equation_mspn: Vec<Option<BigInt>>,
    pub root_of_unity_orders: Vec<Option<u64>>,
    pub system_mspn: BigInt,
    /// `N`: lcm of the root-of-unity orders, 1 if there are none.
    pub modulus: BigInt,
    pub box_limit: BigInt,
    /// Largest distance between consecutive exponents inside one cluster,
    /// `max_i min(gap_i, mspn_i)` over the non-root-of-unity equations.
    pub cluster_gap: BigInt,
}

impl BoundReport {
    pub fn non_rou_count(&self) -> usize {
        self.root_of_unity_orders.iter().filter(|o| o.is_none()).count()
    }

    pub fn to_json(&self) -> Value {
        let opt = |v: &Option<BigInt>| match v {
            Some(x) => json!(x.to_string()),
            None => Value::Null,
        };
        json!({
            "per_equation_gap": self.per_equation_gap.iter().map(opt).collect::<Vec<_>>(),
            "per_equation_mspn": self.per_equation_mspn.iter().map(opt).collect::<Vec<_>>(),
            "root_of_unity_orders": self
                .root_of_unity_orders
                .iter()
                .map(|o| o.map_or(Value::Null, |n| json!(n.to_string())))
                .collect::<Vec<_>>(),
            "system_mspn": self.system_mspn.to_string(),
            "N": self.modulus.to_string(),
            "box_limit": self.box_limit.to_string(),
        })
    }
}

/// Search box `N + mspn(E_{≤t})` of a homogeneous system.
pub fn system_box(system: &ExpSystem) -> Result<BoundReport> {
    system_box_at(system, Precision::DEFAULT)
}

pub fn system_box_at(system: &ExpSystem, prec: Precision) -> Result<BoundReport> {
    if !system.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let mut gaps = Vec::new();
    let mut mspns = Vec::new();
    let mut orders = Vec::new();
    let mut modulus = BigInt::one();
    let mut max_mspn = BigInt::zero();
    let mut cluster_gap = BigInt::zero();
    let mut t = 0u64;
    for eq in system.equations() {
        let order = eq.field().root_of_unity_order();
        orders.push(order);
        match order {
            Some(n) => {
                modulus = modulus.lcm(&big(n));
                gaps.push(None);
                mspns.push(None);
            }
            None => {
                t += 1;
                let g = gap_bound_at(eq, prec)?;
                let m = mspn_bound_equation_at(eq, prec)?;
                cluster_gap = cluster_gap.max((&g).min(&m).clone());
                max_mspn = max_mspn.max(m.clone());
                gaps.push(Some(g));
                mspns.push(Some(m));
            }
        }
    }
    let system_mspn = big(t) * big(system.num_vars() as u64) * max_mspn;
    let box_limit = &modulus + &system_mspn;
    Ok(BoundReport {
        per_equation_gap: gaps,
        per_equation_mspn: mspns,
        root_of_unity_orders: orders,
        system_mspn,
        modulus,
        box_limit,
        cluster_gap,
    })
}

/// Convenience: `box_limit` as a machine integer if it fits.
pub fn box_limit_u64(report: &BoundReport) -> Option<u64> {
    report.box_limit.to_u64()
}
