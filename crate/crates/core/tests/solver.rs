//! Decision procedure: strategy agreement, witness placement, determinism.

mod common;

use expodio::bounds::Precision;
use expodio::model::{system_to_json_string, SystemBuilder};
use expodio::solve::{decide, decide_with, oracle_find_first, oracle_search, Limits, Prepared, Strategy};
use expodio::verify::verify;
use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// Whether `[0, box]^dims` has at most `limit` points.
fn box_fits(system: &expodio::model::ExpSystem, extra_dims: i32, limit: f64) -> bool {
    let prep = Prepared::new(system, Precision::DEFAULT).unwrap();
    let side = prep.report.box_limit.to_f64().unwrap() + 1.0;
    side.powi(prep.num_vars() as i32 + extra_dims) <= limit
}

#[test]
fn strategies_agree_with_each_other_and_the_oracle() {
    let (mut pruned_runs, mut plain_runs) = (0, 0);
    for (i, system) in common::corpus(1234, 250).iter().enumerate() {
        let clustered = decide(system).unwrap();
        if box_fits(system, -1, 1e5) {
            let pruned =
                decide_with(system, &Limits::default().with_strategy(Strategy::BoxScan { prune: true })).unwrap();
            assert_eq!(clustered.status, pruned.status, "instance {i}: {}", system_to_json_string(system));
            if let Some(w) = &pruned.witness {
                assert!(verify(system, w).unwrap());
            }
            pruned_runs += 1;
            if box_fits(system, 0, 2e6) {
                let plain =
                    decide_with(system, &Limits::default().with_strategy(Strategy::BoxScan { prune: false })).unwrap();
                assert_eq!(plain.status, pruned.status, "instance {i}");
                assert_eq!(plain.witness, pruned.witness, "instance {i}");
                plain_runs += 1;
            }
        }
        let b = clustered.stats.box_limit.to_i64().unwrap() + 5;
        assert_eq!(clustered.is_sat(), !oracle_search(system, -b, b).unwrap().is_empty(), "instance {i}");
        if let Some(w) = &clustered.witness {
            assert!(verify(system, w).unwrap());
        }
    }
    assert!(pruned_runs > 150 && plain_runs > 100, "{pruned_runs} pruned, {plain_runs} plain scans");
}

#[test]
fn homogeneous_witnesses_lie_in_the_box() {
    for system in common::corpus(77, 300).iter().filter(|s| s.is_homogeneous()) {
        let r = decide(system).unwrap();
        if let Some(w) = &r.witness {
            assert!(w.iter().all(|v| *v >= BigInt::from(0) && *v <= r.stats.box_limit), "{w:?}");
        }
    }
}

#[test]
fn box_scan_returns_the_lexicographically_least_solution() {
    for system in common::corpus(2024, 200).iter().filter(|s| s.is_homogeneous() && box_fits(s, -1, 1e5)) {
        let r = decide_with(system, &Limits::default().with_strategy(Strategy::BoxScan { prune: true })).unwrap();
        let hi = r.stats.box_limit.to_i64().unwrap();
        let first = oracle_find_first(system, 0, hi).unwrap();
        assert_eq!(r.witness, first.map(|x| common::big(&x)));
    }
}

#[test]
fn parallel_runs_match_sequential_runs() {
    for system in common::corpus(99, 120) {
        let one = decide(&system).unwrap();
        let many = decide_with(&system, &Limits::default().with_jobs(4)).unwrap();
        assert_eq!(one.status, many.status);
        assert_eq!(one.witness, many.witness);
        assert_eq!(one.to_json(), decide(&system).unwrap().to_json());
    }
}

#[test]
fn small_worked_examples() {
    let mut b = SystemBuilder::new();
    let two = b.base(&[-2, 1]).unwrap();
    b.equation(two, &[&[1], &[1]], &[5]);
    let s = b.build(2).unwrap();
    let w = decide(&s).unwrap().witness.unwrap();
    assert!(w == common::big(&[0, 2]) || w == common::big(&[2, 0]));
    assert_eq!(oracle_search(&s, 0, 4).unwrap(), vec![vec![0, 2], vec![2, 0]]);

    let mut b = SystemBuilder::new();
    let two = b.base(&[-2, 1]).unwrap();
    b.equation(two, &[&[1], &[-1]], &[0]);
    let s = b.build(2).unwrap();
    let diag: Vec<Vec<i64>> = (-3..=3).map(|a| vec![a, a]).collect();
    assert_eq!(oracle_search(&s, -3, 3).unwrap(), diag);
}

#[test]
fn negative_only_solution_is_found() {
    // 4 · 2^x = 1 forces x = -2
    let mut b = SystemBuilder::new();
    let two = b.base(&[-2, 1]).unwrap();
    b.equation(two, &[&[4]], &[1]);
    let s = b.build(1).unwrap();
    assert_eq!(decide(&s).unwrap().witness.unwrap(), common::big(&[-2]));

    // (3/2)^x1 · 4 = 9 forces x1 = 2 over a rational base
    let mut b = SystemBuilder::new();
    let q = b.base(&[-3, 2]).unwrap();
    b.equation(q, &[&[4]], &[9]);
    let s = b.build(1).unwrap();
    assert_eq!(decide(&s).unwrap().witness.unwrap(), common::big(&[2]));
}
