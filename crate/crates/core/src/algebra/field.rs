//! Arithmetic in ℚ(α) for an algebraic base α given by its integer minimal
//! polynomial.
//!
//! Elements are coordinate vectors in the power basis `1, α, …, α^{d-1}`,
//! always fully reduced modulo the monic form of the minimal polynomial, so
//! equality is plain coordinate equality.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use super::poly::{rpoly_divmod, rpoly_mul, rpoly_sub, trim, IntPolynomial};
use super::rational::{format_rational, Rational};
use crate::error::{Error, Result, ValidationError};

/// The field ℚ(α), α a root of `min_poly`.
///
/// Irreducibility of `min_poly` is a promise; a violation surfaces lazily as
/// [`Error::NotInvertible`] from [`FieldElement::inverse`].
pub struct NumberField {
    min_poly: IntPolynomial,
    /// `min_poly / leading`, length `degree + 1`, last entry 1.
    monic: Vec<Rational>,
    degree: usize,
    rou_order: OnceLock<Option<u64>>,
}

impl NumberField {
    /// Builds the field for the base with minimal polynomial `min_poly`.
    ///
    /// `base` is only used to label validation errors.
    pub fn new(min_poly: IntPolynomial, base: usize) -> Result<Arc<Self>> {
        let degree = match min_poly.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(ValidationError::DegenerateMinPoly { base }.into()),
        };
        let c0 = min_poly.coeff(0);
        if c0.is_zero() {
            return Err(ValidationError::BaseIsZero { base }.into());
        }
        if degree == 1 && c0 == -min_poly.coeff(1) {
            return Err(ValidationError::BaseIsOne { base }.into());
        }
        let lead = Rational::from_integer(min_poly.leading().cloned().expect("nonzero"));
        let monic = min_poly
            .coeffs()
            .iter()
            .map(|c| Rational::from_integer(c.clone()) / &lead)
            .collect();
        Ok(Arc::new(NumberField {
            min_poly,
            monic,
            degree,
            rou_order: OnceLock::new(),
        }))
    }

    /// Convenience constructor from small integer coefficients (low-to-high).
    pub fn from_coeffs(coeffs: &[i64]) -> Result<Arc<Self>> {
        Self::new(IntPolynomial::from_i64s(coeffs), 0)
    }

    pub fn min_poly(&self) -> &IntPolynomial {
        &self.min_poly
    }

    pub fn monic_form(&self) -> &[Rational] {
        &self.monic
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// For a rational base (degree 1), its value.
    pub fn rational_value(&self) -> Option<Rational> {
        (self.degree == 1).then(|| -self.monic[0].clone())
    }

    /// Multiplicative order of α if α is a root of unity.
    ///
    /// Tests `α^n = 1` for `n = 1, …, 2d²`; every root of unity of degree `d`
    /// has order at most `2d²` because `φ(n) ≥ √(n/2)`. Cached per field.
    pub fn root_of_unity_order(self: &Arc<Self>) -> Option<u64> {
        *self.rou_order.get_or_init(|| {
            let limit = 2 * (self.degree as u64) * (self.degree as u64);
            let alpha = FieldElement::generator(self);
            let mut power = alpha.clone();
            for n in 1..=limit {
                if power.is_one() {
                    return Some(n);
                }
                power = &power * &alpha;
            }
            None
        })
    }

    pub fn is_root_of_unity(self: &Arc<Self>) -> bool {
        self.root_of_unity_order().is_some()
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.monic == other.monic
    }
}

impl Eq for NumberField {}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({})", self.min_poly)
    }
}

fn same_field(a: &Arc<NumberField>, b: &Arc<NumberField>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// An element of ℚ(α).
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coords: Vec<Rational>,
}

impl FieldElement {
    /// Reduces `Σ raw[i] α^i` to its canonical coordinates.
    pub fn reduce(raw: &[Rational], field: &Arc<NumberField>) -> Self {
        let d = field.degree;
        let mut work = raw.to_vec();
        reduce_in_place(&mut work, &field.monic);
        work.resize(d, Rational::zero());
        FieldElement { field: field.clone(), coords: work }
    }

    pub fn from_coords(coords: Vec<Rational>, field: &Arc<NumberField>) -> Self {
        if coords.len() == field.degree {
            FieldElement { field: field.clone(), coords }
        } else {
            Self::reduce(&coords, field)
        }
    }

    pub fn from_integers(coords: &[i64], field: &Arc<NumberField>) -> Self {
        let raw: Vec<Rational> = coords.iter().map(|&c| Rational::from_integer(c.into())).collect();
        Self::reduce(&raw, field)
    }

    pub fn from_rational(value: Rational, field: &Arc<NumberField>) -> Self {
        Self::reduce(&[value], field)
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        FieldElement { field: field.clone(), coords: vec![Rational::zero(); field.degree] }
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_rational(Rational::one(), field)
    }

    /// α itself.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::reduce(&[Rational::zero(), Rational::one()], field)
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn has_integer_coords(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on the
    /// representative polynomial and the monic minimal polynomial.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let mut r0: Vec<Rational> = self.field.monic.clone();
        let mut r1: Vec<Rational> = self.coords.clone();
        trim(&mut r1);
        // t-coefficients track the multiplier of `self` in each remainder.
        let mut t0: Vec<Rational> = Vec::new();
        let mut t1: Vec<Rational> = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, r) = rpoly_divmod(&r0, &r1);
            let t = rpoly_sub(&t0, &rpoly_mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.len() != 1 {
            return Err(Error::NotInvertible);
        }
        let scale = r0[0].recip();
        let raw: Vec<Rational> = t0.iter().map(|c| c * &scale).collect();
        Ok(Self::reduce(&raw, &self.field))
    }

    /// `self^exponent` by binary square-and-multiply; negative exponents go
    /// through [`FieldElement::inverse`].
    pub fn pow(&self, exponent: &BigInt) -> Result<Self> {
        let base = if exponent.sign() == Sign::Minus { self.inverse()? } else { self.clone() };
        let e = exponent.magnitude();
        let mut result = Self::one(&self.field);
        let bits = e.bits();
        for i in (0..bits).rev() {
            result = &result * &result;
            if e.bit(i) {
                result = &result * &base;
            }
        }
        Ok(result)
    }

    pub fn pow_i64(&self, exponent: i64) -> Result<Self> {
        self.pow(&BigInt::from(exponent))
    }

    /// Least common multiple of the coordinate denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Absolute values of the coordinates.
    pub fn coord_abs(&self) -> impl Iterator<Item = Rational> + '_ {
        self.coords.iter().map(|c| c.abs())
    }
}

fn reduce_in_place(work: &mut Vec<Rational>, monic: &[Rational]) {
    let d = monic.len() - 1;
    trim(work);
    while work.len() > d {
        let top = work.len() - 1;
        let c = work[top].clone();
        if !c.is_zero() {
            let shift = top - d;
            for (j, m) in monic.iter().enumerate().take(d) {
                work[shift + j] -= &c * m;
            }
        }
        work.pop();
        trim(work);
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        same_field(&self.field, &other.field) && self.coords == other.coords
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: &FieldElement) -> FieldElement {
        assert!(same_field(&self.field, &rhs.field), "field mismatch in addition");
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: &FieldElement) -> FieldElement {
        assert!(same_field(&self.field, &rhs.field), "field mismatch in subtraction");
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: &FieldElement) -> FieldElement {
        assert!(same_field(&self.field, &rhs.field), "field mismatch in multiplication");
        let d = self.field.degree;
        if d == 1 {
            return FieldElement {
                field: self.field.clone(),
                coords: vec![&self.coords[0] * &rhs.coords[0]],
            };
        }
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        FieldElement::reduce(&prod, &self.field)
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        &self + &rhs
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        &self - &rhs
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn sqrt2() -> Arc<NumberField> {
        NumberField::from_coeffs(&[-2, 0, 1]).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let f = sqrt2();
        assert_eq!(FieldElement::reduce(&[q(0, 1)], &f).coords(), &[q(0, 1), q(0, 1)]);
        assert_eq!(
            FieldElement::reduce(&[q(0, 1), q(0, 1), q(1, 1)], &f).coords(),
            &[q(2, 1), q(0, 1)]
        );
        // 1 + x + x^2 + x^3 mod x^3 - x - 1 by long division: x^3 -> x + 1.
        let g = NumberField::from_coeffs(&[-1, -1, 0, 1]).unwrap();
        let r = FieldElement::reduce(&[q(1, 1), q(1, 1), q(1, 1), q(1, 1)], &g);
        assert_eq!(r.coords(), &[q(2, 1), q(2, 1), q(1, 1)]);
    }

    #[test]
    fn non_monic_reduction() {
        // α = 3/2 from 2x - 3.
        let f = NumberField::from_coeffs(&[-3, 2]).unwrap();
        let a = FieldElement::generator(&f);
        assert_eq!(a.coords(), &[q(3, 2)]);
        assert_eq!(a.pow_i64(-2).unwrap().coords(), &[q(4, 9)]);
    }

    #[test]
    fn inverse_examples() {
        let f = sqrt2();
        let a = FieldElement::generator(&f);
        assert_eq!(a.inverse().unwrap().coords(), &[q(0, 1), q(1, 2)]);
        assert!(FieldElement::one(&f).inverse().unwrap().is_one());
        let b = FieldElement::from_integers(&[1, 1], &f);
        let inv = b.inverse().unwrap();
        assert_eq!(inv.coords(), &[q(-1, 1), q(1, 1)]);
        assert!((&b * &inv).is_one());
        assert!(matches!(FieldElement::zero(&f).inverse(), Err(Error::ZeroInverse)));
    }

    #[test]
    fn reducible_modulus_is_detected() {
        // x^2 - 1 = (x - 1)(x + 1): the element 1 + α is a zero divisor.
        let f = NumberField::from_coeffs(&[-1, 0, 1]).unwrap();
        let z = FieldElement::from_integers(&[1, 1], &f);
        assert!(matches!(z.inverse(), Err(Error::NotInvertible)));
    }

    #[test]
    fn pow_examples() {
        let f = sqrt2();
        let a = FieldElement::generator(&f);
        assert!(a.pow_i64(0).unwrap().is_one());
        assert_eq!(a.pow_i64(11).unwrap().coords(), &[q(0, 1), q(32, 1)]);
        let two = NumberField::from_coeffs(&[-2, 1]).unwrap();
        let b = FieldElement::generator(&two);
        assert_eq!(b.pow_i64(10).unwrap().coords(), &[q(1024, 1)]);
        assert!(matches!(FieldElement::zero(&f).pow_i64(-1), Err(Error::ZeroInverse)));
    }

    #[test]
    fn root_of_unity_examples() {
        assert_eq!(NumberField::from_coeffs(&[1, 1]).unwrap().root_of_unity_order(), Some(2));
        assert_eq!(NumberField::from_coeffs(&[1, 0, 1]).unwrap().root_of_unity_order(), Some(4));
        assert_eq!(sqrt2().root_of_unity_order(), None);
    }

    #[test]
    fn validation_of_bases() {
        assert!(matches!(
            NumberField::from_coeffs(&[0, 1]),
            Err(Error::Validation(ValidationError::BaseIsZero { .. }))
        ));
        assert!(matches!(
            NumberField::from_coeffs(&[-3, 3]),
            Err(Error::Validation(ValidationError::BaseIsOne { .. }))
        ));
        assert!(matches!(
            NumberField::from_coeffs(&[5]),
            Err(Error::Validation(ValidationError::DegenerateMinPoly { .. }))
        ));
    }
}
