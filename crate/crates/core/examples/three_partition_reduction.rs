//! Builds a 3-PARTITION equation over base 2, checks its witness and perturbations.

use expodio::algebra::NumberField;
use expodio::reductions::{encode_3partition, ThreePartitionInstance};
use expodio::verify::verify;

fn main() -> expodio::Result<()> {
    let field = NumberField::from_coeffs(&[-2, 1])?;
    let inst = ThreePartitionInstance::new(vec![5, 5, 6, 5, 5, 6])?;
    let enc = encode_3partition(&inst, &field)?;
    let w = enc.witness.clone().expect("positive instance");
    println!("c = {}, witness = {:?}", enc.c, w.iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("witness verifies: {}", verify(&enc.system, &w)?);

    let mut rejected = 0;
    for i in 0..w.len() {
        for delta in [-1, 1] {
            let mut y = w.clone();
            y[i] += delta;
            rejected += usize::from(!verify(&enc.system, &y)?);
        }
    }
    println!("{rejected} of {} single-step perturbations rejected", 2 * w.len());
    Ok(())
}
