//! Instance representation: systems of algebraic equations with exponents,
//! their validation, size accounting, denominator clearing and
//! homogenization.

mod format;

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{bit_length, FieldElement, NumberField, Rational};
use crate::error::{Error, Result, ValidationError};

pub use format::{parse_system, system_to_json, system_to_json_string};
pub(crate) use format::parse_big_int as parse_big_int_value;

/// One row `Σ_j q_j α^{x_j} = q_0` of a system.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpEquation {
    base: usize,
    coeffs: Vec<FieldElement>,
    rhs: FieldElement,
}

impl ExpEquation {
    pub fn new(base: usize, coeffs: Vec<FieldElement>, rhs: FieldElement) -> Self {
        ExpEquation { base, coeffs, rhs }
    }

    /// Index into the owning system's field list.
    pub fn base(&self) -> usize {
        self.base
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &FieldElement {
        &self.coeffs[j]
    }

    pub fn rhs(&self) -> &FieldElement {
        &self.rhs
    }

    pub fn is_homogeneous(&self) -> bool {
        self.rhs.is_zero()
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.rhs.field()
    }

    /// Multiplies both sides by the rational `factor`.
    pub fn scaled(&self, factor: &Rational) -> Self {
        ExpEquation {
            base: self.base,
            coeffs: self.coeffs.iter().map(|c| c.scale(factor)).collect(),
            rhs: self.rhs.scale(factor),
        }
    }

    /// Lcm of every coordinate denominator of the coefficients and the rhs.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .chain(std::iter::once(&self.rhs))
            .fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator_lcm()))
    }
}

/// A validated system over `num_vars` exponent variables.
///
/// Internally variables are 0-based positions; externally (file formats,
/// cluster structures) they are numbered `1..=k`.
#[derive(Clone, Debug)]
pub struct ExpSystem {
    fields: Vec<Arc<NumberField>>,
    equations: Vec<ExpEquation>,
    num_vars: usize,
}

impl ExpSystem {
    pub fn new(
        fields: Vec<Arc<NumberField>>,
        equations: Vec<ExpEquation>,
        num_vars: usize,
    ) -> Result<Self> {
        if num_vars == 0 {
            return Err(ValidationError::NoVariables.into());
        }
        for (i, eq) in equations.iter().enumerate() {
            let Some(field) = fields.get(eq.base) else {
                return Err(ValidationError::BaseIndexOutOfRange { equation: i, base: eq.base }.into());
            };
            if eq.coeffs.len() != num_vars {
                return Err(ValidationError::CoefficientLength {
                    equation: i,
                    expected: num_vars,
                    found: eq.coeffs.len(),
                }
                .into());
            }
            let foreign = eq
                .coeffs
                .iter()
                .chain(std::iter::once(&eq.rhs))
                .any(|c| **c.field() != **field);
            if foreign {
                return Err(Error::Internal(format!(
                    "equation {i} has coefficients outside the field of base {}",
                    eq.base
                )));
            }
        }
        for j in 0..num_vars {
            if equations.iter().all(|eq| eq.coeffs[j].is_zero()) {
                return Err(ValidationError::AllZeroColumn { var: j + 1 }.into());
            }
        }
        Ok(ExpSystem { fields, equations, num_vars })
    }

    pub fn fields(&self) -> &[Arc<NumberField>] {
        &self.fields
    }

    pub fn equations(&self) -> &[ExpEquation] {
        &self.equations
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn field_of(&self, equation: usize) -> &Arc<NumberField> {
        &self.fields[self.equations[equation].base]
    }

    pub fn is_homogeneous(&self) -> bool {
        self.equations.iter().all(ExpEquation::is_homogeneous)
    }

    pub fn has_integer_coords(&self) -> bool {
        self.equations.iter().all(|eq| {
            eq.coeffs.iter().all(FieldElement::has_integer_coords) && eq.rhs.has_integer_coords()
        })
    }

    /// Bit-length surrogate of the encoding size.
    ///
    /// Sums `bitlen|a| + bitlen|b|` over every coordinate `a/b` of every
    /// coefficient and right-hand side, plus `bitlen(|c|+1)` over the minimal
    /// polynomial coefficients of each equation's base (`bitlen(0) = 1`).
    pub fn size_of(&self) -> u64 {
        let mut total = 0u64;
        for eq in &self.equations {
            for value in eq.coeffs.iter().chain(std::iter::once(&eq.rhs)) {
                for c in value.coords() {
                    total += bit_length(c.numer()) + bit_length(c.denom());
                }
            }
            for c in self.fields[eq.base].min_poly().coeffs() {
                total += bit_length(&(c.abs() + 1u32));
            }
        }
        total
    }

    /// Scales each equation by the lcm of its denominators so that every
    /// coordinate becomes an integer. The solution set is unchanged.
    pub fn clear_denominators(&self) -> ExpSystem {
        let equations = self
            .equations
            .iter()
            .map(|eq| {
                let l = eq.denominator_lcm();
                if l.is_one() {
                    eq.clone()
                } else {
                    eq.scaled(&Rational::from_integer(l))
                }
            })
            .collect();
        ExpSystem { fields: self.fields.clone(), equations, num_vars: self.num_vars }
    }

    /// The homogeneous system `E'` with auxiliary variable `x_0`.
    ///
    /// When every right-hand side is already zero no auxiliary variable is
    /// added and the inner system equals `self`.
    pub fn homogenize(&self) -> HomogenizedSystem {
        if self.is_homogeneous() {
            return HomogenizedSystem { inner: self.clone(), origin: self.clone(), auxiliary: false };
        }
        let equations = self
            .equations
            .iter()
            .map(|eq| {
                let mut coeffs = Vec::with_capacity(self.num_vars + 1);
                coeffs.push(-&eq.rhs);
                coeffs.extend(eq.coeffs.iter().cloned());
                ExpEquation::new(eq.base, coeffs, FieldElement::zero(eq.field()))
            })
            .collect();
        let inner = ExpSystem { fields: self.fields.clone(), equations, num_vars: self.num_vars + 1 };
        HomogenizedSystem { inner, origin: self.clone(), auxiliary: true }
    }

    /// Copy of the system with equations in a different order.
    pub fn with_equation_order(&self, order: &[usize]) -> ExpSystem {
        ExpSystem {
            fields: self.fields.clone(),
            equations: order.iter().map(|&i| self.equations[i].clone()).collect(),
            num_vars: self.num_vars,
        }
    }
}

/// `E'` together with the system it came from.
#[derive(Clone, Debug)]
pub struct HomogenizedSystem {
    inner: ExpSystem,
    origin: ExpSystem,
    auxiliary: bool,
}

impl HomogenizedSystem {
    pub fn inner(&self) -> &ExpSystem {
        &self.inner
    }

    pub fn origin(&self) -> &ExpSystem {
        &self.origin
    }

    /// Whether position 0 of the inner system is the auxiliary `x_0`.
    pub fn has_auxiliary(&self) -> bool {
        self.auxiliary
    }

    /// Maps a solution of `E'` to one of `E`: `(x_1 - x_0, …, x_k - x_0)`.
    pub fn dehomogenize(&self, x: &[BigInt]) -> Vec<BigInt> {
        if !self.auxiliary {
            return x.to_vec();
        }
        x[1..].iter().map(|v| v - &x[0]).collect()
    }

    /// Maps a solution of `E` to one of `E'` by setting `x_0 = 0`.
    pub fn lift(&self, x: &[BigInt]) -> Vec<BigInt> {
        if !self.auxiliary {
            return x.to_vec();
        }
        std::iter::once(BigInt::zero()).chain(x.iter().cloned()).collect()
    }
}

/// Incremental construction of systems with small integer data, mostly for
/// tests, examples and generators.
#[derive(Default)]
pub struct SystemBuilder {
    fields: Vec<Arc<NumberField>>,
    rows: Vec<(usize, Vec<Vec<Rational>>, Vec<Rational>)>,
}

impl SystemBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers a base by its minimal polynomial (low-to-high) and returns
    /// its index.
    pub fn base(&mut self, min_poly: &[i64]) -> Result<usize> {
        let idx = self.fields.len();
        let field = NumberField::new(crate::algebra::IntPolynomial::from_i64s(min_poly), idx)?;
        self.fields.push(field);
        Ok(idx)
    }

    pub fn base_field(&mut self, field: Arc<NumberField>) -> usize {
        self.fields.push(field);
        self.fields.len() - 1
    }

    /// Adds `Σ_j coeffs[j] α^{x_j} = rhs` with integer coordinate vectors.
    pub fn equation(&mut self, base: usize, coeffs: &[&[i64]], rhs: &[i64]) -> &mut Self {
        let conv = |v: &[i64]| v.iter().map(|&c| Rational::from_integer(c.into())).collect::<Vec<_>>();
        self.rows.push((base, coeffs.iter().map(|c| conv(c)).collect(), conv(rhs)));
        self
    }

    pub fn equation_rational(
        &mut self,
        base: usize,
        coeffs: Vec<Vec<Rational>>,
        rhs: Vec<Rational>,
    ) -> &mut Self {
        self.rows.push((base, coeffs, rhs));
        self
    }

    pub fn build(&self, num_vars: usize) -> Result<ExpSystem> {
        let mut equations = Vec::with_capacity(self.rows.len());
        for (i, (base, coeffs, rhs)) in self.rows.iter().enumerate() {
            let field = self
                .fields
                .get(*base)
                .ok_or(ValidationError::BaseIndexOutOfRange { equation: i, base: *base })?;
            let coeffs = coeffs.iter().map(|c| FieldElement::reduce(c, field)).collect();
            equations.push(ExpEquation::new(*base, coeffs, FieldElement::reduce(rhs, field)));
        }
        ExpSystem::new(self.fields.clone(), equations, num_vars)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_to_x_equals_four() -> ExpSystem {
        let mut b = SystemBuilder::new();
        let two = b.base(&[-2, 1]).unwrap();
        b.equation(two, &[&[1]], &[4]);
        b.build(1).unwrap()
    }

    #[test]
    fn size_is_monotone_in_coefficient_magnitude() {
        let small = two_to_x_equals_four();
        let mut b = SystemBuilder::new();
        let two = b.base(&[-2, 1]).unwrap();
        b.equation(two, &[&[1]], &[16]);
        let big = b.build(1).unwrap();
        assert!(small.size_of() > 0);
        assert!(big.size_of() > small.size_of());
    }

    #[test]
    fn squaring_a_coefficient_roughly_doubles_its_bit_length() {
        for a in [3i64, 7, 100, 12345] {
            let la = bit_length(&BigInt::from(a));
            let la2 = bit_length(&BigInt::from(a * a));
            assert!(la2 >= 2 * la - 1);
        }
    }

    #[test]
    fn size_ignores_equation_order() {
        let mut b = SystemBuilder::new();
        let two = b.base(&[-2, 1]).unwrap();
        let three = b.base(&[-3, 1]).unwrap();
        b.equation(two, &[&[1], &[-7]], &[4]);
        b.equation(three, &[&[5], &[0]], &[0]);
        let s = b.build(2).unwrap();
        assert_eq!(s.size_of(), s.with_equation_order(&[1, 0]).size_of());
    }

    #[test]
    fn clears_denominators_per_equation() {
        let mut b = SystemBuilder::new();
        let two = b.base(&[-2, 1]).unwrap();
        let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
        b.equation_rational(two, vec![vec![r(1, 2)], vec![r(1, 3)]], vec![r(1, 1)]);
        let s = b.build(2).unwrap().clear_denominators();
        let eq = &s.equations()[0];
        assert_eq!(eq.coeff(0).coords(), &[r(3, 1)]);
        assert_eq!(eq.coeff(1).coords(), &[r(2, 1)]);
        assert_eq!(eq.rhs().coords(), &[r(6, 1)]);

        let integral = two_to_x_equals_four();
        let cleared = integral.clear_denominators();
        assert_eq!(cleared.equations(), integral.equations());
    }

    #[test]
    fn homogenize_adds_auxiliary_column() {
        let s = two_to_x_equals_four();
        let h = s.homogenize();
        assert!(h.has_auxiliary());
        assert_eq!(h.inner().num_vars(), 2);
        let eq = &h.inner().equations()[0];
        assert_eq!(eq.coeff(0), &FieldElement::from_integers(&[-4], eq.field()));
        assert!(eq.is_homogeneous());
        let x = |v: &[i64]| v.iter().map(|&a| BigInt::from(a)).collect::<Vec<_>>();
        assert_eq!(h.dehomogenize(&x(&[0, 2])), x(&[2]));
        assert_eq!(h.dehomogenize(&x(&[5, 7])), x(&[2]));
        assert_eq!(h.lift(&x(&[2])), x(&[0, 2]));
    }

    #[test]
    fn homogenize_is_identity_on_homogeneous_input() {
        let mut b = SystemBuilder::new();
        let two = b.base(&[-2, 1]).unwrap();
        b.equation(two, &[&[1], &[-1]], &[0]);
        let s = b.build(2).unwrap();
        let h = s.homogenize();
        assert!(!h.has_auxiliary());
        assert_eq!(h.inner().num_vars(), 2);
    }

    #[test]
    fn rejects_all_zero_column() {
        let mut b = SystemBuilder::new();
        let two = b.base(&[-2, 1]).unwrap();
        b.equation(two, &[&[1], &[0]], &[0]);
        assert!(matches!(
            b.build(2),
            Err(Error::Validation(ValidationError::AllZeroColumn { var: 2 }))
        ));
    }
}
