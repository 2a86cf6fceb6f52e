//! Decides a non-homogeneous mixed system and compares strategies.

use expodio::model::SystemBuilder;
use expodio::solve::{decide_with, Limits, Strategy};

fn main() -> expodio::Result<()> {
    // 3·2^x1 + 2^x2 = 2^x3 + 12,  i^x1 + i^x3 = 0
    let mut b = SystemBuilder::new();
    let two = b.base(&[-2, 1])?;
    let i = b.base(&[1, 0, 1])?;
    b.equation(two, &[&[3], &[1], &[-1]], &[12]);
    b.equation(i, &[&[1, 0], &[0, 0], &[1, 0]], &[0, 0]);
    let system = b.build(3)?;

    for strategy in [Strategy::Clustered, Strategy::BoxScan { prune: true }, Strategy::BoxScan { prune: false }] {
        let result = decide_with(&system, &Limits::default().with_strategy(strategy))?;
        println!(
            "{strategy:?}: {} {:?} after {} candidates, box {}",
            result.status.as_str(),
            result.witness.as_ref().map(|w| w.iter().map(ToString::to_string).collect::<Vec<_>>()),
            result.stats.candidates_tested,
            result.stats.box_limit,
        );
    }
    Ok(())
}
