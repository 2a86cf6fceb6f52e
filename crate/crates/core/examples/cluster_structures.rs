//! Lists every cluster structure of a solution.

use expodio::model::SystemBuilder;
use expodio::structure::find_cluster_structures;
use num_bigint::BigInt;

fn main() -> expodio::Result<()> {
    // 2^x1 - 2^x2 + 2^x3 - 2^x4 = 0
    let mut b = SystemBuilder::new();
    let two = b.base(&[-2, 1])?;
    b.equation(two, &[&[1], &[-1], &[1], &[-1]], &[0]);
    let system = b.build(4)?;

    for x in [[0, 0, 5, 5], [3, 3, 3, 3], [7, 1, 1, 7]] {
        let x = x.map(BigInt::from);
        let found = find_cluster_structures(&system, &x)?;
        let shown: Vec<String> = found.iter().map(ToString::to_string).collect();
        println!("{:?}: {}", x.iter().map(ToString::to_string).collect::<Vec<_>>(), shown.join("  or  "));
    }

    // With a constant term the auxiliary index 0 joins a cluster.
    let mut b = SystemBuilder::new();
    let two = b.base(&[-2, 1])?;
    b.equation(two, &[&[1], &[1]], &[5]);
    let system = b.build(2)?;
    let found = find_cluster_structures(&system, &[BigInt::from(2), BigInt::from(0)])?;
    println!("2^x1 + 2^x2 = 5 at (2,0): {}", found[0]);
    Ok(())
}
