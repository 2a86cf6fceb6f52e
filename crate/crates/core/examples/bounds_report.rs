//! Prints the certified search bounds for a few systems, at two precisions.

use expodio::bounds::{kappa_f64, system_box, system_box_at, Precision};
use expodio::model::SystemBuilder;

fn main() -> expodio::Result<()> {
    for d in 1..=4 {
        println!("κ({d}) ≈ {:.10}", kappa_f64(d));
    }

    let mut b = SystemBuilder::new();
    let two = b.base(&[-2, 1])?;
    let i = b.base(&[1, 0, 1])?;
    b.equation(two, &[&[1], &[1], &[-1]], &[0]);
    b.equation(i, &[&[1, 0], &[0, 1], &[1, 0]], &[0, 0]);
    let system = b.build(3)?;
    println!("{}", serde_json::to_string_pretty(&system_box(&system)?.to_json()).unwrap());

    let mut b = SystemBuilder::new();
    let sqrt2 = b.base(&[-2, 0, 1])?;
    b.equation(sqrt2, &[&[1, 0], &[0, -1]], &[0, 0]);
    let system = b.build(2)?;
    for bits in [53, 200] {
        let report = system_box_at(&system, Precision::new(bits))?;
        println!("√2 system at {bits} bits: box {}", report.box_limit);
    }
    Ok(())
}
