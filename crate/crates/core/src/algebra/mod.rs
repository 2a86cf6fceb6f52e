//! Exact arithmetic: rationals, integer polynomials, ℚ(α), and
//! root-of-unity detection.

mod field;
mod poly;
mod rational;

pub use field::{FieldElement, NumberField};
pub use poly::{cyclotomic, IntPolynomial};
pub use rational::{bit_length, ceil_log2, format_rational, parse_rational, Rational};
