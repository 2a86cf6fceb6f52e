//! Seeded random instances shared by the integration tests.
#![allow(dead_code)]

use expodio::algebra::{FieldElement, NumberField};
use expodio::model::{ExpSystem, SystemBuilder};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Minimal polynomials of 2, 3, -2, 3/2, -1, i and √2.
pub const BASES: [&[i64]; 7] = [&[-2, 1], &[-3, 1], &[2, 1], &[-3, 2], &[1, 1], &[1, 0, 1], &[-2, 0, 1]];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_coords(rng: &mut ChaCha8Rng, d: usize, zero_bias: f64) -> Vec<i64> {
    if rng.gen_bool(zero_bias) {
        return vec![0; d];
    }
    loop {
        let v: Vec<i64> = (0..d).map(|_| if d > 1 && rng.gen_bool(0.4) { 0 } else { rng.gen_range(-5..=5) }).collect();
        if v.iter().any(|&c| c != 0) {
            return v;
        }
    }
}

/// A random system with `k <= 3`, one or two equations, and coordinates in
/// `[-5, 5]`. About a third of the instances have a planted solution.
pub fn random_system(rng: &mut ChaCha8Rng) -> ExpSystem {
    loop {
        let k = rng.gen_range(1..=3);
        let s = if rng.gen_bool(0.3) { 2 } else { 1 };
        let planted = rng.gen_bool(0.35);
        let homogeneous = !planted && rng.gen_bool(0.5);
        let mut b = SystemBuilder::new();
        let mut ok = true;
        for _ in 0..s {
            let poly = BASES[rng.gen_range(0..BASES.len())];
            let d = poly.len() - 1;
            let base = b.base(poly).expect("valid base");
            let zero_bias = if s == 2 { 0.3 } else { 0.1 };
            let coeffs: Vec<Vec<i64>> = (0..k).map(|_| random_coords(rng, d, zero_bias)).collect();
            let rhs: Vec<i64> = if homogeneous {
                vec![0; d]
            } else if planted {
                let field = NumberField::from_coeffs(poly).unwrap();
                let alpha = FieldElement::generator(&field);
                let mut acc = FieldElement::zero(&field);
                for c in &coeffs {
                    let e = rng.gen_range(-2..=3);
                    acc = acc + FieldElement::from_integers(c, &field) * alpha.pow_i64(e).unwrap();
                }
                let ints: Option<Vec<i64>> = acc
                    .coords()
                    .iter()
                    .map(|r| if r.is_integer() { r.to_integer().to_i64() } else { None })
                    .collect();
                match ints {
                    Some(v) if v.iter().all(|c| c.abs() <= 5) => v,
                    _ => {
                        ok = false;
                        vec![0; d]
                    }
                }
            } else {
                random_coords(rng, d, 0.0)
            };
            let refs: Vec<&[i64]> = coeffs.iter().map(Vec::as_slice).collect();
            b.equation(base, &refs, &rhs);
        }
        if !ok {
            continue;
        }
        if let Ok(system) = b.build(k) {
            return system;
        }
    }
}

pub fn corpus(seed: u64, count: usize) -> Vec<ExpSystem> {
    let mut r = rng(seed);
    (0..count).map(|_| random_system(&mut r)).collect()
}

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&a| BigInt::from(a)).collect()
}
