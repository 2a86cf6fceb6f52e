//! Exact arithmetic in ℚ(√2): powers, inverses and reduction modulo x² − 2.

use expodio::algebra::{format_rational, FieldElement, NumberField, Rational};
use num_bigint::BigInt;

fn show(x: &FieldElement) -> String {
    let c: Vec<String> = x.coords().iter().map(format_rational).collect();
    format!("[{}]", c.join(", "))
}

fn main() -> expodio::Result<()> {
    let field = NumberField::from_coeffs(&[-2, 0, 1])?;
    let alpha = FieldElement::generator(&field);
    let a = FieldElement::from_integers(&[1, 1], &field); // 1 + √2

    for e in [-3i64, 0, 5, 20] {
        println!("(1+√2)^{e:<3} = {}", show(&a.pow(&BigInt::from(e))?));
    }
    let inv = a.inverse()?;
    println!("(1+√2)^-1 = {}, product is one: {}", show(&inv), (&a * &inv).is_one());
    let half = FieldElement::from_integers(&[2], &field).inverse()?;
    println!("1/2 = {}", show(&half));

    let raw: Vec<Rational> = [1, 0, 3, 0, 1].iter().map(|&c| Rational::from_integer(c.into())).collect();
    let reduced = FieldElement::reduce(&raw, &field);
    println!("1 + 3α² + α⁴ reduces to {}", show(&reduced));
    println!("α⁴ = 4: {}", alpha.pow_i64(4)? == FieldElement::from_integers(&[4], &field));
    Ok(())
}
