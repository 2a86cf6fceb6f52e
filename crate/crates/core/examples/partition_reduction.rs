//! Encodes PARTITION instances over roots of unity and compares the solver with subset sums.

use expodio::reductions::{encode_partition, partition_oracle, PartitionInstance};
use expodio::solve::decide;

fn main() -> expodio::Result<()> {
    let instances: &[&[u64]] = &[&[1, 2, 3], &[3, 5, 8, 2, 2], &[2, 4, 8], &[1, 1, 4, 6], &[7, 3, 2, 2]];
    for values in instances {
        let inst = PartitionInstance::new(values.to_vec())?;
        let expected = partition_oracle(&inst)?;
        for n in [2, 3, 4] {
            let answer = match encode_partition(&inst, n) {
                Ok(system) => decide(&system)?.is_sat(),
                Err(_) => false,
            };
            println!("{values:?} n={n}: solver {answer}, subset sum {expected}");
            assert_eq!(answer, expected);
        }
    }
    Ok(())
}
