//! Certified enclosures of natural logarithms of positive integers.
//!
//! `ln x = m ln 2 + 2 atanh((x - 2^m)/(x + 2^m))` with `2^m <= x < 2^{m+1}`
//! and `ln 2 = 2 atanh(1/3)`. The atanh series is summed exactly in rationals
//! and closed with a geometric tail bound, then rounded outward onto a
//! dyadic grid and widened by a relative factor that shrinks with the
//! precision, so that a higher precision always yields a nested interval.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::Rational;

/// Working precision in bits (at least 53).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision(u32);

impl Precision {
    pub const DEFAULT: Precision = Precision(53);

    pub fn new(bits: u32) -> Self {
        Precision(bits.max(53))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn doubled(self) -> Self {
        Precision(self.0 * 2)
    }

    /// Relative widening `10^-9 · 2^{53 - bits}`.
    fn inflation(self) -> Rational {
        Rational::new(BigInt::one(), BigInt::from(1_000_000_000u64) << (self.0 - 53))
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct Enclosure {
    pub lo: Rational,
    pub hi: Rational,
}

impl Enclosure {
    pub fn contains(&self, v: f64) -> bool {
        let lo = to_f64(&self.lo);
        let hi = to_f64(&self.hi);
        lo <= v && v <= hi
    }
}

pub(crate) fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// `(S, S + T)` with `S + [0, T]` enclosing `atanh(t)` for `0 <= t <= 1/3`.
fn atanh_bounds(t: &Rational, target: &Rational) -> (Rational, Rational) {
    if t.is_zero() {
        return (Rational::zero(), Rational::zero());
    }
    let t2 = t * t;
    let mut sum = Rational::zero();
    let mut power = t.clone();
    let mut n = 1u64;
    loop {
        sum += &power / Rational::from_integer(n.into());
        power = &power * &t2;
        n += 2;
        let tail = &power / (Rational::from_integer(n.into()) * (Rational::one() - &t2));
        if tail <= *target {
            return (sum.clone(), sum + tail);
        }
    }
}

fn floor_to_grid(r: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let scaled = r * Rational::from_integer(scale.clone());
    Rational::new(scaled.numer().div_floor(scaled.denom()), scale)
}

fn ceil_to_grid(r: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let scaled = r * Rational::from_integer(scale.clone());
    Rational::new(scaled.numer().div_ceil(scaled.denom()), scale)
}

/// Enclosure of `ln x` for an integer `x >= 2`.
pub fn ln_enclosure(x: &BigInt, prec: Precision) -> Enclosure {
    assert!(x >= &BigInt::from(2), "ln_enclosure needs x >= 2");
    let bits = prec.bits();
    let target = Rational::new(BigInt::one(), BigInt::one() << (bits + 24));
    let m = x.bits() - 1;
    let pow = BigInt::one() << m;
    let (l2_lo, l2_hi) = atanh_bounds(&Rational::new(BigInt::one(), BigInt::from(3)), &target);
    let t = Rational::new(x - &pow, x + &pow);
    let (ty_lo, ty_hi) = atanh_bounds(&t, &target);
    let two = Rational::from_integer(2.into());
    let mm = Rational::from_integer(m.into());
    let lo = &two * (&mm * l2_lo + ty_lo);
    let hi = &two * (&mm * l2_hi + ty_hi);
    let eps = prec.inflation();
    let lo = floor_to_grid(&lo, bits) / (Rational::one() + &eps);
    let hi = ceil_to_grid(&hi, bits) * (Rational::one() + &eps);
    debug_assert!(!lo.is_negative());
    Enclosure { lo, hi }
}

/// Smallest integer `>= r`.
pub fn ceil_rational(r: &Rational) -> BigInt {
    r.numer().div_ceil(r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encloses_reference_values() {
        let cases = [
            (2u64, std::f64::consts::LN_2),
            (3, 3f64.ln()),
            (6, 6f64.ln()),
            (1000, 1000f64.ln()),
            (1 << 40, 40.0 * std::f64::consts::LN_2),
        ];
        for (x, v) in cases {
            let e = ln_enclosure(&BigInt::from(x), Precision::DEFAULT);
            assert!(e.contains(v), "ln {x}: {e:?}");
            assert!(to_f64(&e.hi) - to_f64(&e.lo) < 1e-7);
        }
    }

    #[test]
    fn higher_precision_nests() {
        for x in [2u64, 3, 5, 6, 9, 12, 77, 1 << 20, 123_456_789] {
            let x = BigInt::from(x);
            let mut p = Precision::DEFAULT;
            let mut e = ln_enclosure(&x, p);
            for _ in 0..3 {
                p = p.doubled();
                let f = ln_enclosure(&x, p);
                assert!(f.lo >= e.lo && f.hi <= e.hi, "x = {x}, bits = {}", p.bits());
                e = f;
            }
        }
    }

    #[test]
    fn ln2_digits() {
        let e = ln_enclosure(&BigInt::from(2), Precision::new(200));
        // 0.69314718055994530941723212145817656807...
        let lo = Rational::new(BigInt::from(693_147_180_559_945_309u64), BigInt::from(10u64).pow(18));
        let hi = lo.clone() + Rational::new(BigInt::one(), BigInt::from(10u64).pow(18));
        assert!(e.lo >= lo && e.hi <= hi, "{e:?}");
    }
}
