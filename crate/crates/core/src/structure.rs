//! Cluster structures of solutions and the semilinear solution set.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::algebra::FieldElement;
use crate::bounds::gap_bound;
use crate::error::{Error, Result};
use crate::model::ExpSystem;
use crate::solve::clustered::Engine;
use crate::solve::{Limits, Meter, Prepared};
use crate::verify::verify;

/// A partition of the variable indices into clusters.
///
/// Indices are external: `1..=k` for the variables and `0` for the
/// auxiliary variable of a non-homogeneous system.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ClusterStructure {
    clusters: Vec<Vec<usize>>,
}

impl ClusterStructure {
    pub fn new(mut clusters: Vec<Vec<usize>>) -> Self {
        for c in &mut clusters {
            c.sort_unstable();
        }
        clusters.sort();
        ClusterStructure { clusters }
    }

    pub fn clusters(&self) -> &[Vec<usize>] {
        &self.clusters
    }

    pub fn to_json(&self) -> Value {
        json!(self.clusters)
    }
}

impl fmt::Display for ClusterStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .clusters
            .iter()
            .map(|c| format!("{{{}}}", c.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Vanishing test for index subsets of one non-root-of-unity equation.
///
/// Exponents are split wherever consecutive values are further apart than
/// the gap bound; a subset vanishes iff its part in every group does, and
/// within a group the terms are evaluated relative to the group minimum.
struct SubsetSums {
    groups: Vec<u32>,
    /// Sums over all masks of the group-relative terms.
    sums: Vec<FieldElement>,
}

impl SubsetSums {
    fn new(terms: &[(FieldElement, BigInt)], gap: &BigInt) -> Result<Self> {
        let n = terms.len();
        let field = terms[0].0.field().clone();
        let alpha = FieldElement::generator(&field);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| terms[a].1.cmp(&terms[b].1));
        let mut groups = Vec::new();
        let mut relative = vec![FieldElement::zero(&field); n];
        let mut start = 0;
        for i in 1..=n {
            if i == n || &terms[order[i]].1 - &terms[order[i - 1]].1 > *gap {
                let base = &terms[order[start]].1;
                let mut mask = 0u32;
                for &j in &order[start..i] {
                    mask |= 1 << j;
                    relative[j] = &terms[j].0 * &alpha.pow(&(&terms[j].1 - base))?;
                }
                groups.push(mask);
                start = i;
            }
        }
        let mut sums = Vec::with_capacity(1 << n);
        sums.push(FieldElement::zero(&field));
        for mask in 1usize..(1 << n) {
            let low = mask.trailing_zeros() as usize;
            let s = &sums[mask & (mask - 1)] + &relative[low];
            sums.push(s);
        }
        Ok(SubsetSums { groups, sums })
    }

    fn vanishes(&self, mask: u32) -> bool {
        self.groups.iter().all(|g| self.sums[(mask & g) as usize].is_zero())
    }
}

/// Every cluster structure of the solution `x` of `system`.
pub fn find_cluster_structures(system: &ExpSystem, x: &[BigInt]) -> Result<Vec<ClusterStructure>> {
    find_cluster_structures_limited(system, x, 12)
}

pub fn find_cluster_structures_limited(
    system: &ExpSystem,
    x: &[BigInt],
    max_vars: usize,
) -> Result<Vec<ClusterStructure>> {
    if system.num_vars() > max_vars {
        return Err(Error::TooManyVariables { found: system.num_vars(), max: max_vars });
    }
    if !verify(system, x)? {
        return Err(Error::NotASolution);
    }
    let hom = system.homogenize();
    let inner = hom.inner().clear_denominators();
    let lifted = hom.lift(x);
    let n = inner.num_vars();

    let mut tests = Vec::new();
    for eq in inner.equations() {
        if eq.field().is_root_of_unity() {
            continue;
        }
        let terms: Vec<(FieldElement, BigInt)> =
            eq.coeffs().iter().cloned().zip(lifted.iter().cloned()).collect();
        tests.push(SubsetSums::new(&terms, &gap_bound(eq)?)?);
    }

    let total = 1usize << n;
    let vanish: Vec<bool> = (0..total).map(|m| tests.iter().all(|t| t.vanishes(m as u32))).collect();
    // proper[m]: some nonempty proper submask of m vanishes
    let mut proper = vec![false; total];
    for m in 1..total {
        let mut bits = m;
        while bits != 0 {
            let j = bits & bits.wrapping_neg();
            bits &= !j;
            let sub = m & !j;
            if sub != 0 && (vanish[sub] || proper[sub]) {
                proper[m] = true;
                break;
            }
        }
    }
    let minimal: Vec<bool> = (0..total).map(|m| m != 0 && vanish[m] && !proper[m]).collect();

    let external = |p: usize| if hom.has_auxiliary() { p } else { p + 1 };
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    partitions((total - 1) as u32, &minimal, &mut chosen, &mut |parts: &[u32]| {
        out.push(ClusterStructure::new(
            parts
                .iter()
                .map(|&m| (0..n).filter(|&p| m >> p & 1 == 1).map(external).collect())
                .collect(),
        ));
    });
    if out.is_empty() {
        return Err(Error::Internal("solution without a cluster structure".into()));
    }
    out.sort();
    Ok(out)
}

fn partitions<F: FnMut(&[u32])>(remaining: u32, allowed: &[bool], chosen: &mut Vec<u32>, emit: &mut F) {
    if remaining == 0 {
        emit(chosen);
        return;
    }
    let low = remaining & remaining.wrapping_neg();
    let rest = remaining & !low;
    let mut sub = 0u32;
    loop {
        let part = sub | low;
        if allowed[part as usize] {
            chosen.push(part);
            partitions(remaining & !part, allowed, chosen, emit);
            chosen.pop();
        }
        if sub == rest {
            return;
        }
        sub = (sub | !rest).wrapping_add(1) & rest;
    }
}

/// `base + N · span_ℤ { Δ_J : J ∈ periods }`, with 0-based coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Coset {
    pub base: Vec<BigInt>,
    /// Disjoint index sets, each sorted; the list is sorted.
    pub periods: Vec<Vec<usize>>,
}

impl Coset {
    /// `base + N Σ_i betas[i] Δ_{periods[i]}`.
    pub fn point(&self, modulus: &BigInt, betas: &[i64]) -> Vec<BigInt> {
        let mut x = self.base.clone();
        for (period, &b) in self.periods.iter().zip(betas) {
            for &j in period {
                x[j] += modulus * b;
            }
        }
        x
    }

    pub fn contains(&self, modulus: &BigInt, x: &[BigInt]) -> bool {
        let mut in_period = vec![false; x.len()];
        for period in &self.periods {
            let shift = &x[period[0]] - &self.base[period[0]];
            if !shift.is_multiple_of(modulus) {
                return false;
            }
            for &j in period {
                in_period[j] = true;
                if x[j].clone() - &self.base[j] != shift {
                    return false;
                }
            }
        }
        (0..x.len()).all(|j| in_period[j] || x[j] == self.base[j])
    }

    fn canonical(mut self, modulus: &BigInt) -> Self {
        for period in &self.periods {
            let min = period.iter().map(|&j| self.base[j].clone()).min().expect("nonempty period");
            let shift = min.div_floor(modulus) * modulus;
            if !shift.is_zero() {
                for &j in period {
                    self.base[j] -= &shift;
                }
            }
        }
        for p in &mut self.periods {
            p.sort_unstable();
        }
        self.periods.sort();
        self
    }
}

/// A finite union of cosets sharing one modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilinearSet {
    pub num_vars: usize,
    pub modulus: BigInt,
    pub cosets: Vec<Coset>,
}

impl SemilinearSet {
    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let cosets: Vec<Value> = self
            .cosets
            .iter()
            .map(|c| {
                let periods: Vec<Vec<u8>> = c
                    .periods
                    .iter()
                    .map(|p| (0..self.num_vars).map(|j| u8::from(p.contains(&j))).collect())
                    .collect();
                json!({
                    "base": c.base.iter().map(BigInt::to_string).collect::<Vec<_>>(),
                    "periods": periods,
                })
            })
            .collect();
        json!({ "modulus": self.modulus.to_string(), "cosets": cosets })
    }
}

/// Whether some coset of `set` contains `x`.
pub fn coset_contains(set: &SemilinearSet, x: &[BigInt]) -> Result<bool> {
    if x.len() != set.num_vars {
        return Err(Error::DimensionMismatch { expected: set.num_vars, found: x.len() });
    }
    Ok(set.cosets.iter().any(|c| c.contains(&set.modulus, x)))
}

/// The full solution set as a union of cosets.
pub fn enumerate_semilinear(system: &ExpSystem, limits: &Limits) -> Result<SemilinearSet> {
    if system.num_vars() > limits.max_vars {
        return Err(Error::TooManyVariables { found: system.num_vars(), max: limits.max_vars });
    }
    let prep = Prepared::new(system, limits.precision)?;
    let meter = Meter::new(limits);
    let engine = Engine::new(&prep, limits, &meter)?;
    let certs = engine.all_certificates()?;
    let modulus = prep.report.modulus.clone();
    let aux = prep.homogenized.has_auxiliary();
    let k = system.num_vars();

    let mut seen = BTreeSet::new();
    for cert in certs {
        let values: Vec<BigInt> = cert.values.iter().map(|&v| BigInt::from(v)).collect();
        let base = prep.homogenized.dehomogenize(&values);
        let periods: Vec<Vec<usize>> = cert
            .clusters
            .iter()
            .filter(|&&c| !(aux && c & 1 == 1))
            .map(|&c| {
                (0..prep.num_vars())
                    .filter(|&p| c >> p & 1 == 1)
                    .map(|p| if aux { p - 1 } else { p })
                    .collect()
            })
            .collect();
        seen.insert(Coset { base, periods }.canonical(&modulus));
    }
    let cosets: Vec<Coset> = seen.into_iter().collect();
    for c in &cosets {
        if !verify(system, &c.base)? {
            return Err(Error::Internal(format!("coset base {:?} is not a solution", c.base)));
        }
    }
    Ok(SemilinearSet { num_vars: k, modulus, cosets })
}

/// Largest absolute base coordinate, for reporting.
pub fn max_base_magnitude(set: &SemilinearSet) -> BigInt {
    set.cosets.iter().flat_map(|c| c.base.iter().map(|v| v.abs())).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::SystemBuilder;

    fn xs(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&a| BigInt::from(a)).collect()
    }

    fn diagonal() -> ExpSystem {
        let mut b = SystemBuilder::new();
        let two = b.base(&[-2, 1]).unwrap();
        b.equation(two, &[&[1], &[-1]], &[0]);
        b.build(2).unwrap()
    }

    #[test]
    fn forced_pair() {
        let s = diagonal();
        let found = find_cluster_structures(&s, &xs(&[3, 3])).unwrap();
        assert_eq!(found, vec![ClusterStructure::new(vec![vec![1, 2]])]);
        assert!(matches!(find_cluster_structures(&s, &xs(&[3, 4])), Err(Error::NotASolution)));
    }

    #[test]
    fn roots_of_unity_give_singletons() {
        let mut b = SystemBuilder::new();
        let m1 = b.base(&[1, 1]).unwrap();
        b.equation(m1, &[&[3], &[3]], &[0]);
        let s = b.build(2).unwrap();
        let found = find_cluster_structures(&s, &xs(&[0, 1])).unwrap();
        assert_eq!(found, vec![ClusterStructure::new(vec![vec![1], vec![2]])]);
    }

    #[test]
    fn multiple_structures() {
        let mut b = SystemBuilder::new();
        let two = b.base(&[-2, 1]).unwrap();
        b.equation(two, &[&[1], &[-1], &[1], &[-1]], &[0]);
        let s = b.build(4).unwrap();
        let found = find_cluster_structures(&s, &xs(&[0, 0, 5, 5])).unwrap();
        assert_eq!(found, vec![ClusterStructure::new(vec![vec![1, 2], vec![3, 4]])]);
        let found = find_cluster_structures(&s, &xs(&[0, 0, 0, 0])).unwrap();
        assert_eq!(
            found,
            vec![
                ClusterStructure::new(vec![vec![1, 2], vec![3, 4]]),
                ClusterStructure::new(vec![vec![1, 4], vec![2, 3]]),
            ]
        );
    }

    #[test]
    fn huge_exponents() {
        let s = diagonal();
        let big: BigInt = BigInt::from(1u8) << 100;
        let found = find_cluster_structures(&s, &[big.clone(), big]).unwrap();
        assert_eq!(found.len(), 1);
    }

    #[test]
    fn semilinear_examples() {
        let set = enumerate_semilinear(&diagonal(), &Limits::default()).unwrap();
        assert_eq!(set.modulus, BigInt::from(1));
        assert_eq!(set.cosets, vec![Coset { base: xs(&[0, 0]), periods: vec![vec![0, 1]] }]);
        assert!(coset_contains(&set, &xs(&[7, 7])).unwrap());
        assert!(!coset_contains(&set, &xs(&[7, 8])).unwrap());

        let mut b = SystemBuilder::new();
        let m1 = b.base(&[1, 1]).unwrap();
        b.equation(m1, &[&[3], &[3]], &[0]);
        let set = enumerate_semilinear(&b.build(2).unwrap(), &Limits::default()).unwrap();
        assert_eq!(set.modulus, BigInt::from(2));
        assert_eq!(
            set.cosets,
            vec![
                Coset { base: xs(&[0, 1]), periods: vec![vec![0], vec![1]] },
                Coset { base: xs(&[1, 0]), periods: vec![vec![0], vec![1]] },
            ]
        );
        assert!(coset_contains(&set, &xs(&[4, 7])).unwrap());

        let mut b = SystemBuilder::new();
        let two = b.base(&[-2, 1]).unwrap();
        b.equation(two, &[&[1]], &[4]);
        let set = enumerate_semilinear(&b.build(1).unwrap(), &Limits::default()).unwrap();
        assert_eq!(set.cosets, vec![Coset { base: xs(&[2]), periods: vec![] }]);
    }

    #[test]
    fn json_shape() {
        let set = enumerate_semilinear(&diagonal(), &Limits::default()).unwrap();
        assert_eq!(
            set.to_json(),
            json!({"modulus": "1", "cosets": [{"base": ["0", "0"], "periods": [[1, 1]]}]})
        );
    }
}
