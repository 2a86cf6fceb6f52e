//! Cluster structures against brute-force set-partition enumeration, and
//! the shift law for every structure found.

mod common;

use expodio::algebra::FieldElement;
use expodio::model::{ExpSystem, SystemBuilder};
use expodio::solve::{oracle_search, Limits, Prepared};
use expodio::bounds::Precision;
use expodio::structure::{enumerate_semilinear, find_cluster_structures, ClusterStructure};
use expodio::verify::verify;
use num_bigint::BigInt;
use rand::Rng;

/// Direct evaluation of `Σ_{j∈part} q_j α^{y_j}` in every non-root-of-unity equation.
fn vanishes(system: &ExpSystem, y: &[BigInt], part: &[usize]) -> bool {
    system.equations().iter().filter(|eq| !eq.field().is_root_of_unity()).all(|eq| {
        let alpha = FieldElement::generator(eq.field());
        let mut acc = FieldElement::zero(eq.field());
        for &p in part {
            acc = &acc + &(eq.coeff(p) * &alpha.pow(&y[p]).unwrap());
        }
        acc.is_zero()
    })
}

fn minimal(system: &ExpSystem, y: &[BigInt], part: &[usize]) -> bool {
    let n = part.len();
    (1..(1u32 << n) - 1).all(|m| {
        let sub: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).map(|i| part[i]).collect();
        !vanishes(system, y, &sub)
    })
}

fn set_partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let Some((&first, rest)) = items.split_first() else { return vec![vec![]] };
    let mut out = Vec::new();
    for p in set_partitions(rest) {
        for i in 0..p.len() {
            let mut q = p.clone();
            q[i].insert(0, first);
            out.push(q);
        }
        let mut q = p;
        q.push(vec![first]);
        out.push(q);
    }
    out
}

fn brute_force(system: &ExpSystem, x: &[BigInt]) -> Vec<ClusterStructure> {
    let hom = system.homogenize();
    let inner = hom.inner();
    let y = hom.lift(x);
    let offset = usize::from(!hom.has_auxiliary());
    let positions: Vec<usize> = (0..inner.num_vars()).collect();
    let mut out: Vec<ClusterStructure> = set_partitions(&positions)
        .into_iter()
        .filter(|p| p.iter().all(|part| vanishes(inner, &y, part) && minimal(inner, &y, part)))
        .map(|p| ClusterStructure::new(p.into_iter().map(|c| c.into_iter().map(|j| j + offset).collect()).collect()))
        .collect();
    out.sort();
    out
}

#[test]
fn matches_brute_force_on_corpus() {
    let mut compared = 0;
    let mut multiple = 0;
    for system in common::corpus(404, 400) {
        for x in oracle_search(&system, -6, 6).unwrap().into_iter().step_by(3).take(25) {
            let x = common::big(&x);
            let found = find_cluster_structures(&system, &x).unwrap();
            assert_eq!(found, brute_force(&system, &x), "system {}", expodio::model::system_to_json_string(&system));
            compared += 1;
            multiple += usize::from(found.len() > 1);
        }
    }
    assert!(compared > 100, "only {compared} solutions compared");
    assert!(multiple > 0, "no solution with several structures");
}

#[test]
fn four_term_alternating_sum() {
    let mut b = SystemBuilder::new();
    let two = b.base(&[-2, 1]).unwrap();
    b.equation(two, &[&[1], &[-1], &[1], &[-1]], &[0]);
    let s = b.build(4).unwrap();
    for x in oracle_search(&s, -3, 3).unwrap() {
        let x = common::big(&x);
        assert_eq!(find_cluster_structures(&s, &x).unwrap(), brute_force(&s, &x));
    }
    let found = find_cluster_structures(&s, &common::big(&[0, 1, 1, 0])).unwrap();
    assert_eq!(found, vec![ClusterStructure::new(vec![vec![1, 4], vec![2, 3]])]);
}

#[test]
fn shift_law_holds_for_every_structure() {
    let mut rng = common::rng(9);
    for system in common::corpus(505, 120) {
        let prep = Prepared::new(&system, Precision::DEFAULT).unwrap();
        let modulus = prep.report.modulus.clone();
        let hom = &prep.homogenized;
        let offset = usize::from(!hom.has_auxiliary());
        for x in oracle_search(&system, -5, 5).unwrap().into_iter().take(10) {
            let x = common::big(&x);
            for structure in find_cluster_structures(&system, &x).unwrap() {
                let mut y = hom.lift(&x);
                for cluster in structure.clusters() {
                    let beta: i64 = rng.gen_range(-10..=10);
                    for &j in cluster {
                        y[j - offset] += &modulus * beta;
                    }
                }
                assert!(verify(hom.inner(), &y).unwrap());
                assert!(verify(&system, &hom.dehomogenize(&y)).unwrap());
            }
        }
    }
}

#[test]
fn not_a_solution_is_rejected() {
    let mut b = SystemBuilder::new();
    let two = b.base(&[-2, 1]).unwrap();
    b.equation(two, &[&[1]], &[4]);
    let s = b.build(1).unwrap();
    assert!(matches!(find_cluster_structures(&s, &common::big(&[3])), Err(expodio::Error::NotASolution)));
    let found = find_cluster_structures(&s, &common::big(&[2])).unwrap();
    assert_eq!(found, vec![ClusterStructure::new(vec![vec![0, 1]])]);
}

#[test]
fn enumeration_is_deterministic() {
    for system in common::corpus(606, 30) {
        let a = enumerate_semilinear(&system, &Limits::default()).unwrap();
        let b = enumerate_semilinear(&system, &Limits::default().with_jobs(3)).unwrap();
        assert_eq!(a, b);
    }
}
