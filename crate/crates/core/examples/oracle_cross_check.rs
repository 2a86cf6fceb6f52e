//! Compares the bounded decision procedure with exhaustive search over its box.

use expodio::model::SystemBuilder;
use expodio::solve::{decide, oracle_search};

fn main() -> expodio::Result<()> {
    // 2^x1 + 2^x2 + 2^x3 = 2^x4 + 6
    let mut b = SystemBuilder::new();
    let two = b.base(&[-2, 1])?;
    b.equation(two, &[&[1], &[1], &[1], &[-1]], &[6]);
    let system = b.build(4)?;

    let result = decide(&system)?;
    let bound = i64::try_from(&result.stats.box_limit).expect("small box");
    let all = oracle_search(&system, -1, bound)?;
    println!("decide: {} (box {bound})", result.status.as_str());
    println!("oracle: {} solutions in [-1, {bound}]^4, first {:?}", all.len(), all.first());
    assert_eq!(result.is_sat(), !all.is_empty());
    Ok(())
}
