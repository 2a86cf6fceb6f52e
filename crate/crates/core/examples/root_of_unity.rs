//! Detects roots of unity from minimal polynomials and builds cyclotomic polynomials.

use expodio::algebra::{cyclotomic, NumberField};

fn main() -> expodio::Result<()> {
    let cases: &[(&str, &[i64])] = &[
        ("-1", &[1, 1]),
        ("i", &[1, 0, 1]),
        ("primitive cube root", &[1, 1, 1]),
        ("2", &[-2, 1]),
        ("√2", &[-2, 0, 1]),
        ("(1+i)/√2", &[1, 0, 0, 0, 1]),
        ("(3+4i)/5", &[5, -6, 5]),
    ];
    for (name, coeffs) in cases {
        let field = NumberField::from_coeffs(coeffs)?;
        match field.root_of_unity_order() {
            Some(n) => println!("{name:>20}: root of unity of order {n}"),
            None => println!("{name:>20}: not a root of unity"),
        }
    }
    for n in [5, 12, 30] {
        println!("Φ_{n} = {:?}", cyclotomic(n).coeffs());
    }
    Ok(())
}
