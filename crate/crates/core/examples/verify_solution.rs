//! Checks candidate solutions exactly, including exponents far beyond machine size.

use expodio::model::SystemBuilder;
use expodio::verify::{report_to_json, verify, verify_report};
use num_bigint::BigInt;

fn main() -> expodio::Result<()> {
    // 2^x1 - 2^x2 + 3·2^x3 = 0
    let mut b = SystemBuilder::new();
    let two = b.base(&[-2, 1])?;
    b.equation(two, &[&[1], &[-1], &[3]], &[0]);
    let system = b.build(3)?;

    let good = [2, 4, 2].map(BigInt::from);
    let bad = [2, 4, 3].map(BigInt::from);
    println!("(2,4,2): {}", verify(&system, &good)?);
    println!("(2,4,3): {}", serde_json::to_string(&report_to_json(&verify_report(&system, &bad)?)).unwrap());

    let huge: BigInt = BigInt::from(1u8) << 80;
    let shifted = [&huge + 2, &huge + 4, &huge + 2];
    println!("shifted by 2^80: {}", verify(&system, &shifted)?);
    Ok(())
}
