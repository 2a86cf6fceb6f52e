//! Instance generators for PARTITION and 3-PARTITION with known answers.

use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::algebra::{cyclotomic, FieldElement, NumberField};
use crate::bounds::c_constant;
use crate::error::{Error, Result};
use crate::model::{ExpEquation, ExpSystem};

/// Largest value sum the subset-sum table will accept.
pub const PARTITION_ORACLE_LIMIT: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionInstance {
    values: Vec<u64>,
}

impl PartitionInstance {
    pub fn new(values: Vec<u64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidInstance("empty multiset".into()));
        }
        if values.contains(&0) {
            return Err(Error::InvalidInstance("values must be positive".into()));
        }
        Ok(PartitionInstance { values })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn total(&self) -> u64 {
        self.values.iter().sum()
    }

    /// `L`, when the total is even.
    pub fn half_sum(&self) -> Option<u64> {
        let t = self.total();
        (t % 2 == 0).then_some(t / 2)
    }
}

/// `Σ q_i α^{x_i} = L + Lα` over a primitive `n`-th root of unity.
pub fn encode_partition(inst: &PartitionInstance, n: usize) -> Result<ExpSystem> {
    if n < 2 {
        return Err(Error::InvalidInstance(format!("root of unity order {n} must be at least 2")));
    }
    let l = inst
        .half_sum()
        .ok_or_else(|| Error::InvalidInstance(format!("odd total {}", inst.total())))?;
    let field = NumberField::new(cyclotomic(n), 0)?;
    let coeffs = inst
        .values
        .iter()
        .map(|&q| FieldElement::from_rational(BigInt::from(q).into(), &field))
        .collect();
    let l = crate::algebra::Rational::from_integer(l.into());
    let rhs = FieldElement::reduce(&[l.clone(), l], &field);
    ExpSystem::new(vec![field], vec![ExpEquation::new(0, coeffs, rhs)], inst.values.len())
}

fn subset_with_sum(values: &[u64], target: u64) -> Result<Option<Vec<bool>>> {
    let total: u64 = values.iter().sum();
    if total > PARTITION_ORACLE_LIMIT {
        return Err(Error::ResourceLimitExceeded(format!(
            "value sum {total} exceeds {PARTITION_ORACLE_LIMIT}"
        )));
    }
    let t = target as usize;
    // first[s]: index of the value that first reached sum s
    let mut first = vec![usize::MAX; t + 1];
    first[0] = values.len();
    for (i, &v) in values.iter().enumerate() {
        let v = v as usize;
        for s in (v..=t).rev() {
            if first[s] == usize::MAX && first[s - v] != usize::MAX && first[s - v] != i {
                first[s] = i;
            }
        }
    }
    if first[t] == usize::MAX {
        return Ok(None);
    }
    let mut chosen = vec![false; values.len()];
    let mut s = t;
    while s > 0 {
        let i = first[s];
        chosen[i] = true;
        s -= values[i] as usize;
    }
    Ok(Some(chosen))
}

/// Subset-sum ground truth.
pub fn partition_oracle(inst: &PartitionInstance) -> Result<bool> {
    if inst.total() > PARTITION_ORACLE_LIMIT {
        return Err(Error::ResourceLimitExceeded(format!(
            "value sum {} exceeds {PARTITION_ORACLE_LIMIT}",
            inst.total()
        )));
    }
    match inst.half_sum() {
        None => Ok(false),
        Some(l) => Ok(subset_with_sum(&inst.values, l)?.is_some()),
    }
}

/// A solution of [`encode_partition`]: exponent 0 on one half, 1 on the other.
pub fn partition_witness(inst: &PartitionInstance) -> Result<Option<Vec<BigInt>>> {
    let Some(l) = inst.half_sum() else { return Ok(None) };
    Ok(subset_with_sum(&inst.values, l)?
        .map(|chosen| chosen.iter().map(|&c| BigInt::from(u8::from(!c))).collect()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreePartitionInstance {
    values: Vec<u64>,
    k: usize,
    l: u64,
}

impl ThreePartitionInstance {
    pub fn new(values: Vec<u64>) -> Result<Self> {
        if values.is_empty() || values.len() % 3 != 0 {
            return Err(Error::InvalidInstance(format!(
                "{} values cannot form triples",
                values.len()
            )));
        }
        let k = values.len() / 3;
        let total: u64 = values.iter().sum();
        if total % k as u64 != 0 {
            return Err(Error::InvalidInstance(format!("total {total} is not divisible by {k}")));
        }
        let l = total / k as u64;
        if let Some(&a) = values.iter().find(|&&a| !(4 * a > l && 2 * a < l)) {
            return Err(Error::InvalidInstance(format!("value {a} is outside ({l}/4, {l}/2)")));
        }
        Ok(ThreePartitionInstance { values, k, l })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn target(&self) -> u64 {
        self.l
    }

    /// Index triples each summing to `L`, if they exist.
    pub fn triples(&self) -> Option<Vec<[usize; 3]>> {
        let mut used = vec![false; self.values.len()];
        let mut out = Vec::new();
        self.fill(&mut used, &mut out).then_some(out)
    }

    fn fill(&self, used: &mut [bool], out: &mut Vec<[usize; 3]>) -> bool {
        let Some(a) = used.iter().position(|u| !u) else { return true };
        used[a] = true;
        let n = self.values.len();
        for b in a + 1..n {
            if used[b] {
                continue;
            }
            used[b] = true;
            for c in b + 1..n {
                if used[c] || self.values[a] + self.values[b] + self.values[c] != self.l {
                    continue;
                }
                used[c] = true;
                out.push([a, b, c]);
                if self.fill(used, out) {
                    return true;
                }
                out.pop();
                used[c] = false;
            }
            used[b] = false;
        }
        used[a] = false;
        false
    }
}

/// A generated 3-PARTITION equation.
#[derive(Clone, Debug)]
pub struct ThreePartitionEncoding {
    pub system: ExpSystem,
    pub c: BigInt,
    /// Present iff the instance is positive.
    pub witness: Option<Vec<BigInt>>,
}

/// `Σ q_{a_i} α^{x_i} = q_L (1 + α^{2cL} + … + α^{2cL(k−1)})` with
/// `q_y = 1 + α^c + … + α^{(y−1)c}`.
pub fn encode_3partition(
    inst: &ThreePartitionInstance,
    field: &Arc<NumberField>,
) -> Result<ThreePartitionEncoding> {
    let l = inst.l;
    let c = c_constant(field, l * inst.k as u64)?;
    let alpha = FieldElement::generator(field);
    let step = alpha.pow(&c)?;
    let one = FieldElement::one(field);
    let geometric = |ratio: &FieldElement, terms: u64| {
        let mut acc = one.clone();
        for _ in 1..terms {
            acc = &(&acc * ratio) + &one;
        }
        acc
    };
    let mut q = std::collections::HashMap::new();
    for &a in inst.values.iter().chain([&l]) {
        q.entry(a).or_insert_with(|| geometric(&step, a));
    }
    let block = alpha.pow(&(BigInt::from(2 * l) * &c))?;
    let rhs = &q[&l] * &geometric(&block, inst.k as u64);
    let coeffs = inst.values.iter().map(|a| q[a].clone()).collect();
    let system = ExpSystem::new(
        vec![field.clone()],
        vec![ExpEquation::new(0, coeffs, rhs)],
        inst.values.len(),
    )?;

    let witness = inst.triples().map(|triples| {
        let mut x = vec![BigInt::default(); inst.values.len()];
        for (i, [p, r, s]) in triples.into_iter().enumerate() {
            let start = BigInt::from(2 * i as u64 * l);
            x[p] = &c * &start;
            x[r] = &c * (&start + inst.values[p]);
            x[s] = &c * (&start + inst.values[p] + inst.values[r]);
        }
        x
    });
    Ok(ThreePartitionEncoding { system, c, witness })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroundTruth {
    Sat,
    Unsat,
    Unknown,
}

impl GroundTruth {
    pub fn as_str(self) -> &'static str {
        match self {
            GroundTruth::Sat => "sat",
            GroundTruth::Unsat => "unsat",
            GroundTruth::Unknown => "unknown",
        }
    }
}

/// Known answer accompanying a generated instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sidecar {
    pub ground_truth: GroundTruth,
    pub witness: Option<Vec<BigInt>>,
}

impl Sidecar {
    pub fn to_json(&self) -> Value {
        json!({
            "ground_truth": self.ground_truth.as_str(),
            "witness": self
                .witness
                .as_ref()
                .map_or(Value::Null, |w| json!(w.iter().map(BigInt::to_string).collect::<Vec<_>>())),
        })
    }
}

/// Sidecar for [`encode_partition`]; unknown when the oracle is out of range.
pub fn partition_sidecar(inst: &PartitionInstance) -> Sidecar {
    match partition_witness(inst) {
        Ok(Some(w)) => Sidecar { ground_truth: GroundTruth::Sat, witness: Some(w) },
        Ok(None) => Sidecar { ground_truth: GroundTruth::Unsat, witness: None },
        Err(_) => Sidecar { ground_truth: GroundTruth::Unknown, witness: None },
    }
}

pub fn three_partition_sidecar(enc: &ThreePartitionEncoding) -> Sidecar {
    Sidecar {
        ground_truth: if enc.witness.is_some() { GroundTruth::Sat } else { GroundTruth::Unsat },
        witness: enc.witness.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solve::decide;
    use crate::verify::verify;

    fn xs(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&a| BigInt::from(a)).collect()
    }

    #[test]
    fn partition_encoding() {
        let inst = PartitionInstance::new(vec![1, 2, 3]).unwrap();
        let s = encode_partition(&inst, 2).unwrap();
        assert!(s.equations()[0].rhs().is_zero());
        assert!(verify(&s, &xs(&[0, 0, 1])).unwrap());
        assert!(decide(&s).unwrap().is_sat());

        let inst = PartitionInstance::new(vec![1, 1]).unwrap();
        let s = encode_partition(&inst, 3).unwrap();
        assert_eq!(s.equations()[0].rhs(), &FieldElement::from_integers(&[1, 1], s.field_of(0)));
        assert!(verify(&s, &xs(&[0, 1])).unwrap());

        let inst = PartitionInstance::new(vec![1, 2]).unwrap();
        assert!(matches!(encode_partition(&inst, 2), Err(Error::InvalidInstance(_))));
        assert!(PartitionInstance::new(vec![]).is_err());
    }

    #[test]
    fn oracle_examples() {
        let check = |v: &[u64]| partition_oracle(&PartitionInstance::new(v.to_vec()).unwrap()).unwrap();
        assert!(check(&[1, 2, 3]));
        assert!(!check(&[1, 1, 1]));
        assert!(check(&[3, 5, 8, 2, 2]));
        assert!(!check(&[2, 4, 8]));
        let huge = PartitionInstance::new(vec![600_000, 600_000]).unwrap();
        assert!(matches!(partition_oracle(&huge), Err(Error::ResourceLimitExceeded(_))));
    }

    #[test]
    fn partition_witness_verifies() {
        let inst = PartitionInstance::new(vec![3, 5, 8, 2, 2]).unwrap();
        let w = partition_witness(&inst).unwrap().unwrap();
        for n in 2..6 {
            assert!(verify(&encode_partition(&inst, n).unwrap(), &w).unwrap());
        }
    }

    #[test]
    fn three_partition_witness() {
        let field = NumberField::from_coeffs(&[-2, 1]).unwrap();
        let inst = ThreePartitionInstance::new(vec![5, 5, 6, 5, 5, 6]).unwrap();
        let enc = encode_3partition(&inst, &field).unwrap();
        assert_eq!(enc.c, BigInt::from(33));
        let w = enc.witness.unwrap();
        assert_eq!(w, xs(&[0, 165, 330, 1056, 1221, 1386]));
        assert!(verify(&enc.system, &w).unwrap());
    }

    #[test]
    fn three_partition_single_triple() {
        let field = NumberField::from_coeffs(&[-3, 1]).unwrap();
        let inst = ThreePartitionInstance::new(vec![5, 5, 6]).unwrap();
        let enc = encode_3partition(&inst, &field).unwrap();
        let c = enc.c.clone();
        assert_eq!(enc.witness.clone().unwrap(), vec![BigInt::from(0), &c * 5, &c * 10]);
        assert!(verify(&enc.system, &enc.witness.unwrap()).unwrap());
    }

    #[test]
    fn three_partition_negative_and_invalid() {
        let inst = ThreePartitionInstance::new(vec![9, 9, 9, 11, 11, 11]).unwrap();
        assert!(inst.triples().is_none());
        assert!(ThreePartitionInstance::new(vec![4, 5, 7]).is_err());
        assert!(ThreePartitionInstance::new(vec![5, 5]).is_err());
        let rou = NumberField::from_coeffs(&[1, 1]).unwrap();
        let ok = ThreePartitionInstance::new(vec![5, 5, 6]).unwrap();
        assert!(matches!(encode_3partition(&ok, &rou), Err(Error::IsRootOfUnity)));
    }

    #[test]
    fn permuted_triples() {
        let field = NumberField::from_coeffs(&[-2, 1]).unwrap();
        let inst = ThreePartitionInstance::new(vec![5, 6, 5, 5, 6, 5]).unwrap();
        let enc = encode_3partition(&inst, &field).unwrap();
        assert!(verify(&enc.system, enc.witness.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn sidecar_json() {
        let inst = PartitionInstance::new(vec![1, 1, 1]).unwrap();
        assert_eq!(partition_sidecar(&inst).to_json(), json!({"ground_truth": "unsat", "witness": null}));
    }
}
