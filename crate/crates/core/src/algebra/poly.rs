//! Dense integer polynomials and the small amount of rational polynomial
//! arithmetic needed for inversion in a number field.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;

/// Dense polynomial with integer coefficients, stored low-to-high.
///
/// The leading coefficient is nonzero unless the polynomial is zero, in which
/// case the coefficient list is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = -BigInt::one();
        coeffs[n] = BigInt::one();
        Self::new(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Exact quotient by a divisor with leading coefficient ±1.
    ///
    /// Returns `None` when the division leaves a remainder.
    pub fn div_exact_by_unit_leading(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.degree()?;
        let lead = divisor.leading()?;
        if !lead.abs().is_one() {
            return None;
        }
        let Some(nd) = self.degree() else {
            return Some(Self::zero());
        };
        if nd < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = &rem[i + dd] * lead;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(quot))
    }

    /// Content (gcd of coefficients), positive; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// The `n`-th cyclotomic polynomial, obtained by dividing `x^n - 1` by every
/// `Φ_d` with `d | n`, `d < n`.
pub fn cyclotomic(n: usize) -> IntPolynomial {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut table: Vec<Option<IntPolynomial>> = vec![None; n + 1];
    cyclotomic_memo(n, &mut table)
}

fn cyclotomic_memo(n: usize, table: &mut Vec<Option<IntPolynomial>>) -> IntPolynomial {
    if let Some(p) = &table[n] {
        return p.clone();
    }
    let mut poly = IntPolynomial::x_pow_minus_one(n);
    for d in 1..n {
        if n % d == 0 {
            let phi = cyclotomic_memo(d, table);
            poly = poly
                .div_exact_by_unit_leading(&phi)
                .expect("cyclotomic factor divides x^n - 1");
        }
    }
    table[n] = Some(poly.clone());
    poly
}

// Rational polynomials as plain coefficient vectors, low-to-high, trimmed.

pub(crate) fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn rpoly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out: Vec<Rational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn rpoly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Division with remainder; `b` must be nonzero.
pub(crate) fn rpoly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    let mut rem = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    while rem.len() > db && !rem.is_empty() {
        let shift = rem.len() - 1 - db;
        let c = &rem[rem.len() - 1] * &lead_inv;
        for (j, y) in b.iter().enumerate() {
            rem[shift + j] -= &c * y;
        }
        quot[shift] = c;
        let top = rem.len() - 1;
        rem[top] = Rational::zero();
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), IntPolynomial::from_i64s(&[-1, 1]));
        assert_eq!(cyclotomic(2), IntPolynomial::from_i64s(&[1, 1]));
        assert_eq!(cyclotomic(4), IntPolynomial::from_i64s(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), IntPolynomial::from_i64s(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), IntPolynomial::from_i64s(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn cyclotomic_product_is_x_n_minus_one() {
        for n in 1..=30 {
            let mut prod = IntPolynomial::from_i64s(&[1]);
            for d in (1..=n).filter(|d| n % d == 0) {
                prod = prod.mul(&cyclotomic(d));
            }
            assert_eq!(prod, IntPolynomial::x_pow_minus_one(n), "n = {n}");
        }
    }

    #[test]
    fn cyclotomic_105_has_a_coefficient_minus_two() {
        assert!(cyclotomic(105).coeffs().iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn trims_and_displays() {
        let p = IntPolynomial::from_i64s(&[-2, 0, 1, 0, 0]);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.to_string(), "x^2 - 2");
        assert_eq!(IntPolynomial::from_i64s(&[0]).degree(), None);
    }

    #[test]
    fn rational_divmod() {
        let r = |n: i64| Rational::from_integer(n.into());
        // (x^3 + x^2 + x + 1) = (x^3 - x - 1) * 1 + (x^2 + 2x + 2)
        let (q, rem) = rpoly_divmod(&[r(1), r(1), r(1), r(1)], &[r(-1), r(-1), r(0), r(1)]);
        assert_eq!(q, vec![r(1)]);
        assert_eq!(rem, vec![r(2), r(2), r(1)]);
    }
}
