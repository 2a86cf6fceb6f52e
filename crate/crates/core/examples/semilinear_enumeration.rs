//! Enumerates the solution set as cosets and samples points from each.

use expodio::model::SystemBuilder;
use expodio::solve::Limits;
use expodio::structure::enumerate_semilinear;
use expodio::verify::verify;

fn main() -> expodio::Result<()> {
    // 2^x1 + 2^x2 = 2^x3,  (-1)^x1 + (-1)^x3 = 0
    let mut b = SystemBuilder::new();
    let two = b.base(&[-2, 1])?;
    let m1 = b.base(&[1, 1])?;
    b.equation(two, &[&[1], &[1], &[-1]], &[0]);
    b.equation(m1, &[&[1], &[0], &[1]], &[0]);
    let system = b.build(3)?;

    let set = enumerate_semilinear(&system, &Limits::default())?;
    println!("{}", serde_json::to_string_pretty(&set.to_json()).unwrap());
    for coset in &set.cosets {
        for beta in -2..=2 {
            let betas = vec![beta; coset.periods.len()];
            let x = coset.point(&set.modulus, &betas);
            assert!(verify(&system, &x)?);
        }
    }
    println!("sampled points from {} cosets all verify", set.cosets.len());
    Ok(())
}
