//! Search over normalized cluster certificates.
//!
//! For a cluster `J` the engine lists every offset pattern `o: J → [0, cap]`
//! with minimum 0 whose terms vanish in each non-root-of-unity equation and
//! no proper subset of which does. Patterns are grown as chains sorted by
//! `(offset, position)` whose consecutive offsets differ by at most the
//! cluster gap; the last member is found by a table lookup. A certificate is
//! a set partition into such clusters together with a start `m_J ∈ [0, N)`
//! for each cluster, subject to the root-of-unity equations.

use std::sync::{Arc, OnceLock};

use num_traits::Zero;
use rustc_hash::FxHashMap;

use super::{to_u64, Limits, Meter, Prepared};
use crate::algebra::{FieldElement, Rational};
use crate::error::{Error, Result};

/// Offsets of one cluster, indexed like the cluster's members in ascending
/// position order.
pub(crate) type Pattern = Vec<u64>;

/// A normalized certificate: a partition of the positions and a value for
/// every position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Certificate {
    pub clusters: Vec<u32>,
    pub values: Vec<u64>,
}

const MAX_TABLE_ENTRIES: u64 = 20_000_000;

pub(crate) struct Engine<'a> {
    n: usize,
    gap: u64,
    cap: u64,
    modulus: u64,
    box_limit: u64,
    jobs: usize,
    meter: &'a Meter,
    /// Per non-root-of-unity equation and position: `q α^v` for `v ∈ [0, cap]`,
    /// empty when the coefficient is zero.
    tab: Vec<Vec<Vec<FieldElement>>>,
    rev: Vec<Vec<FxHashMap<FieldElement, u64>>>,
    zeros: Vec<FieldElement>,
    /// Positions with a zero coefficient in every non-root-of-unity equation.
    free: Vec<bool>,
    /// Per root-of-unity equation and position: `q α^e` for `e ∈ [0, order)`.
    rou_tab: Vec<Vec<Vec<FieldElement>>>,
    memo: Vec<OnceLock<Arc<Vec<Pattern>>>>,
}

impl<'a> Engine<'a> {
    pub(crate) fn new(prep: &Prepared, limits: &Limits, meter: &'a Meter) -> Result<Self> {
        let system = &prep.system;
        let report = &prep.report;
        let n = system.num_vars();
        if n > 20 {
            return Err(Error::TooManyVariables { found: n, max: 20 });
        }
        let gap = to_u64(&report.cluster_gap, "cluster gap")?;
        let system_mspn = to_u64(&report.system_mspn, "span bound")?;
        let modulus = to_u64(&report.modulus, "modulus")?;
        let box_limit = match &limits.box_override {
            Some(b) => to_u64(b, "box limit")?,
            None => to_u64(&report.box_limit, "box limit")?,
        };
        let cap = system_mspn.min(gap.saturating_mul(n as u64 - 1)).min(box_limit);

        let mut tab = Vec::new();
        let mut rev = Vec::new();
        let mut zeros = Vec::new();
        let mut rou_tab = Vec::new();
        let non_rou = report.non_rou_count() as u64;
        if non_rou * n as u64 * (cap + 1) > MAX_TABLE_ENTRIES {
            return Err(Error::ResourceLimitExceeded(format!(
                "offset tables of size {} exceed the limit",
                non_rou * n as u64 * (cap + 1)
            )));
        }
        for (eq, order) in system.equations().iter().zip(&report.root_of_unity_orders) {
            let alpha = FieldElement::generator(eq.field());
            match order {
                None => {
                    let mut powers = Vec::with_capacity(cap as usize + 1);
                    let mut p = FieldElement::one(eq.field());
                    for _ in 0..=cap {
                        powers.push(p.clone());
                        p = &p * &alpha;
                    }
                    let mut t_eq = Vec::with_capacity(n);
                    let mut r_eq = Vec::with_capacity(n);
                    for q in eq.coeffs() {
                        if q.is_zero() {
                            t_eq.push(Vec::new());
                            r_eq.push(FxHashMap::default());
                            continue;
                        }
                        let row: Vec<FieldElement> = powers.iter().map(|p| q * p).collect();
                        let mut map = FxHashMap::default();
                        for (v, val) in row.iter().enumerate() {
                            map.entry(val.clone()).or_insert(v as u64);
                        }
                        t_eq.push(row);
                        r_eq.push(map);
                    }
                    tab.push(t_eq);
                    rev.push(r_eq);
                    zeros.push(FieldElement::zero(eq.field()));
                }
                Some(order) => {
                    let mut row_powers = Vec::new();
                    let mut p = FieldElement::one(eq.field());
                    for _ in 0..*order {
                        row_powers.push(p.clone());
                        p = &p * &alpha;
                    }
                    rou_tab.push(
                        eq.coeffs().iter().map(|q| row_powers.iter().map(|p| q * p).collect()).collect(),
                    );
                }
            }
        }
        let free = (0..n).map(|p| tab.iter().all(|t: &Vec<Vec<FieldElement>>| t[p].is_empty())).collect();
        if modulus > 1 << 20 {
            return Err(Error::ResourceLimitExceeded(format!("modulus {modulus} is too large to search")));
        }
        Ok(Engine {
            n,
            gap,
            cap,
            modulus,
            box_limit,
            jobs: limits.jobs.max(1),
            meter,
            tab,
            rev,
            zeros,
            free,
            rou_tab,
            memo: (0..1usize << n).map(|_| OnceLock::new()).collect(),
        })
    }

    fn members(mask: u32) -> Vec<usize> {
        (0..32).filter(|&i| mask >> i & 1 == 1).collect()
    }

    /// Cheap necessary conditions for `mask` to support any pattern.
    fn admissible(&self, mask: u32) -> bool {
        let members = Self::members(mask);
        if members.len() == 1 {
            return self.free[members[0]];
        }
        if members.iter().any(|&p| self.free[p]) {
            return false;
        }
        self.tab.iter().all(|t| members.iter().filter(|&&p| !t[p].is_empty()).count() != 1)
    }

    pub(crate) fn patterns(&self, mask: u32) -> Result<Arc<Vec<Pattern>>> {
        if let Some(p) = self.memo[mask as usize].get() {
            return Ok(p.clone());
        }
        let computed = Arc::new(self.compute_patterns(mask)?);
        Ok(self.memo[mask as usize].get_or_init(|| computed).clone())
    }

    fn compute_patterns(&self, mask: u32) -> Result<Vec<Pattern>> {
        if !self.admissible(mask) {
            return Ok(Vec::new());
        }
        let members = Self::members(mask);
        if members.len() == 1 {
            return Ok(vec![vec![0]]);
        }
        let mut chain = Chain {
            engine: self,
            members: &members,
            offsets: vec![0; members.len()],
            used: vec![false; members.len()],
            out: Vec::new(),
        };
        for u in 0..members.len() {
            let partial: Vec<FieldElement> = (0..self.tab.len()).map(|ii| self.term(ii, members[u], 0)).collect();
            chain.used[u] = true;
            chain.offsets[u] = 0;
            chain.step(1, 0, u, &partial)?;
            chain.used[u] = false;
        }
        Ok(chain.out)
    }

    fn term(&self, ii: usize, p: usize, v: u64) -> FieldElement {
        match self.tab[ii][p].get(v as usize) {
            Some(t) => t.clone(),
            None => self.zeros[ii].clone(),
        }
    }

    /// Computes every pattern table up front on `jobs` threads.
    fn precompute_parallel(&self) -> Result<()> {
        let masks: Vec<u32> = (1..(1u32 << self.n)).filter(|&m| self.admissible(m)).collect();
        let jobs = self.jobs;
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..jobs)
                .map(|w| {
                    let masks = &masks;
                    scope.spawn(move || -> Result<()> {
                        for &m in masks.iter().skip(w).step_by(jobs) {
                            self.patterns(m)?;
                        }
                        Ok(())
                    })
                })
                .collect();
            handles
                .into_iter()
                .try_for_each(|h| h.join().map_err(|_| Error::Internal("search worker panicked".into()))?)
        })
    }

    /// Visits set partitions of all positions into clusters with at least
    /// one pattern, in restricted-growth order. The callback returns `true`
    /// to stop.
    fn walk<F>(&self, visit: &mut F) -> Result<bool>
    where
        F: FnMut(&[u32]) -> Result<bool>,
    {
        let full = if self.n == 32 { u32::MAX } else { (1u32 << self.n) - 1 };
        let mut chosen = Vec::new();
        self.walk_rec(full, &mut chosen, visit)
    }

    fn walk_rec<F>(&self, remaining: u32, chosen: &mut Vec<u32>, visit: &mut F) -> Result<bool>
    where
        F: FnMut(&[u32]) -> Result<bool>,
    {
        if remaining == 0 {
            return visit(chosen);
        }
        let low = remaining & remaining.wrapping_neg();
        let rest = remaining & !low;
        let mut sub = 0u32;
        loop {
            let cluster = sub | low;
            if !self.patterns(cluster)?.is_empty() {
                chosen.push(cluster);
                if self.walk_rec(remaining & !cluster, chosen, visit)? {
                    return Ok(true);
                }
                chosen.pop();
            }
            if sub == rest {
                return Ok(false);
            }
            sub = (sub | !rest).wrapping_add(1) & rest;
        }
    }

    /// Placements `(pattern, start)` of a cluster and their contribution to
    /// the root-of-unity equations.
    fn options(&self, cluster: u32) -> Result<Vec<(Vec<u64>, Vec<Rational>)>> {
        let members = Self::members(cluster);
        let mut out = Vec::new();
        for pat in self.patterns(cluster)?.iter() {
            let top = pat.iter().copied().max().unwrap_or(0);
            for m in 0..self.modulus {
                if m + top > self.box_limit {
                    break;
                }
                let values: Vec<u64> = pat.iter().map(|o| m + o).collect();
                let mut contrib = Vec::new();
                for table in &self.rou_tab {
                    let order = table[0].len() as u64;
                    let mut acc = FieldElement::zero(table[0][0].field());
                    for (&p, &v) in members.iter().zip(&values) {
                        acc = acc + table[p][(v % order) as usize].clone();
                    }
                    contrib.extend(acc.coords().iter().cloned());
                }
                out.push((values, contrib));
            }
        }
        Ok(out)
    }

    fn assemble(&self, clusters: &[u32], chosen: &[&Vec<u64>]) -> Certificate {
        let mut values = vec![0u64; self.n];
        for (&c, vals) in clusters.iter().zip(chosen) {
            for (&p, &v) in Self::members(c).iter().zip(vals.iter()) {
                values[p] = v;
            }
        }
        Certificate { clusters: clusters.to_vec(), values }
    }

    /// First certificate in search order: partitions in restricted-growth
    /// order, and for each partition the first root-of-unity-consistent
    /// placement found by a forward pass over distinct partial sums.
    pub(crate) fn first_certificate(&self) -> Result<Option<Certificate>> {
        if self.jobs > 1 {
            self.precompute_parallel()?;
        }
        let mut found = None;
        self.walk(&mut |clusters| {
            let opts: Vec<_> = clusters.iter().map(|&c| self.options(c)).collect::<Result<_>>()?;
            if let Some(choice) = self.first_combination(&opts)? {
                let chosen: Vec<&Vec<u64>> = choice.iter().zip(&opts).map(|(&i, o)| &o[i].0).collect();
                found = Some(self.assemble(clusters, &chosen));
                return Ok(true);
            }
            Ok(false)
        })?;
        Ok(found)
    }

    pub(crate) fn first_solution(&self) -> Result<Option<Vec<num_bigint::BigInt>>> {
        Ok(self
            .first_certificate()?
            .map(|c| c.values.into_iter().map(num_bigint::BigInt::from).collect()))
    }

    fn first_combination(&self, opts: &[Vec<(Vec<u64>, Vec<Rational>)>]) -> Result<Option<Vec<usize>>> {
        let width: usize = self.rou_tab.iter().map(|t| t[0][0].coords().len()).sum();
        let mut keys: Vec<Vec<Rational>> = vec![vec![Rational::zero(); width]];
        let mut back: Vec<Vec<(usize, usize)>> = Vec::new();
        for layer in opts {
            // distinct contributions only
            let mut seen: FxHashMap<&Vec<Rational>, ()> = FxHashMap::default();
            let distinct: Vec<usize> =
                (0..layer.len()).filter(|&i| seen.insert(&layer[i].1, ()).is_none()).collect();
            let mut next_keys = Vec::new();
            let mut index: FxHashMap<Vec<Rational>, usize> = FxHashMap::default();
            let mut links = Vec::new();
            for (si, key) in keys.iter().enumerate() {
                self.meter.tick(distinct.len() as u64)?;
                for &oi in &distinct {
                    let nk: Vec<Rational> = key.iter().zip(&layer[oi].1).map(|(a, b)| a + b).collect();
                    if !index.contains_key(&nk) {
                        index.insert(nk.clone(), next_keys.len());
                        next_keys.push(nk);
                        links.push((si, oi));
                    }
                }
            }
            keys = next_keys;
            back.push(links);
        }
        let Some(mut state) = keys.iter().position(|k| k.iter().all(Zero::is_zero)) else {
            return Ok(None);
        };
        let mut choice = vec![0; opts.len()];
        for l in (0..opts.len()).rev() {
            let (parent, oi) = back[l][state];
            choice[l] = oi;
            state = parent;
        }
        Ok(Some(choice))
    }

    /// Every normalized certificate, grouped by partition.
    pub(crate) fn all_certificates(&self) -> Result<Vec<Certificate>> {
        if self.jobs > 1 {
            self.precompute_parallel()?;
        }
        let mut out = Vec::new();
        self.walk(&mut |clusters| {
            let opts: Vec<_> = clusters.iter().map(|&c| self.options(c)).collect::<Result<_>>()?;
            let width: usize = self.rou_tab.iter().map(|t| t[0][0].coords().len()).sum();
            let mut picked = Vec::with_capacity(opts.len());
            self.all_combinations(&opts, &mut picked, vec![Rational::zero(); width], &mut |choice| {
                let chosen: Vec<&Vec<u64>> = choice.iter().zip(&opts).map(|(&i, o)| &o[i].0).collect();
                out.push(self.assemble(clusters, &chosen));
            })?;
            Ok(false)
        })?;
        Ok(out)
    }

    fn all_combinations<F: FnMut(&[usize])>(
        &self,
        opts: &[Vec<(Vec<u64>, Vec<Rational>)>],
        picked: &mut Vec<usize>,
        sum: Vec<Rational>,
        emit: &mut F,
    ) -> Result<()> {
        let depth = picked.len();
        if depth == opts.len() {
            if sum.iter().all(Zero::is_zero) {
                emit(picked);
            }
            return Ok(());
        }
        self.meter.tick(opts[depth].len() as u64)?;
        for (i, (_, contrib)) in opts[depth].iter().enumerate() {
            let next: Vec<Rational> = sum.iter().zip(contrib).map(|(a, b)| a + b).collect();
            picked.push(i);
            self.all_combinations(opts, picked, next, emit)?;
            picked.pop();
        }
        Ok(())
    }
}

struct Chain<'e, 'a> {
    engine: &'e Engine<'a>,
    members: &'e [usize],
    offsets: Vec<u64>,
    used: Vec<bool>,
    out: Vec<Pattern>,
}

impl Chain<'_, '_> {
    fn step(&mut self, placed: usize, last_v: u64, last_u: usize, partial: &[FieldElement]) -> Result<()> {
        let e = self.engine;
        let m = self.members.len();
        if placed == m - 1 {
            let u = (0..m).find(|&u| !self.used[u]).expect("one member left");
            return self.close(u, last_v, last_u, partial);
        }
        for u in 0..m {
            if self.used[u] {
                continue;
            }
            let p = self.members[u];
            let lo = if u > last_u { last_v } else { last_v + 1 };
            let hi = (last_v + e.gap).min(e.cap);
            if lo > hi {
                continue;
            }
            e.meter.tick(hi - lo + 1)?;
            self.used[u] = true;
            for v in lo..=hi {
                let next: Vec<FieldElement> =
                    (0..e.tab.len()).map(|ii| &partial[ii] + &e.term(ii, p, v)).collect();
                // a vanishing proper subset contradicts minimality
                if next.iter().all(FieldElement::is_zero) {
                    continue;
                }
                self.offsets[u] = v;
                self.step(placed + 1, v, u, &next)?;
            }
            self.used[u] = false;
        }
        Ok(())
    }

    fn close(&mut self, u: usize, last_v: u64, last_u: usize, partial: &[FieldElement]) -> Result<()> {
        let e = self.engine;
        let p = self.members[u];
        let ii0 = (0..e.tab.len()).find(|&ii| !e.tab[ii][p].is_empty()).expect("non-free member");
        let target = -&partial[ii0];
        let Some(&v) = e.rev[ii0][p].get(&target) else {
            return Ok(());
        };
        let ordered = v > last_v || (v == last_v && u > last_u);
        if !ordered || v - last_v > e.gap || v > e.cap {
            return Ok(());
        }
        for ii in 0..e.tab.len() {
            if ii != ii0 && !(&partial[ii] + &e.term(ii, p, v)).is_zero() {
                return Ok(());
            }
        }
        self.offsets[u] = v;
        if self.has_vanishing_proper_subset() {
            return Ok(());
        }
        self.out.push(self.offsets.clone());
        Ok(())
    }

    fn has_vanishing_proper_subset(&self) -> bool {
        let e = self.engine;
        let m = self.members.len();
        let full = (1usize << m) - 1;
        let mut sums: Vec<Vec<FieldElement>> = Vec::with_capacity(full + 1);
        sums.push(e.zeros.clone());
        for mask in 1..full {
            let low = mask.trailing_zeros() as usize;
            let prev = &sums[mask & (mask - 1)];
            let p = self.members[low];
            let s: Vec<FieldElement> =
                (0..e.tab.len()).map(|ii| &prev[ii] + &e.term(ii, p, self.offsets[low])).collect();
            if s.iter().all(FieldElement::is_zero) {
                return true;
            }
            sums.push(s);
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::Precision;
    use crate::model::SystemBuilder;

    fn engine_patterns(min_poly: &[i64], coeffs: &[&[i64]]) -> Vec<Pattern> {
        let mut b = SystemBuilder::new();
        let base = b.base(min_poly).unwrap();
        b.equation(base, coeffs, &vec![0; min_poly.len() - 1]);
        let s = b.build(coeffs.len()).unwrap();
        let prep = Prepared::new(&s, Precision::DEFAULT).unwrap();
        let limits = Limits::default();
        let meter = Meter::new(&limits);
        let engine = Engine::new(&prep, &limits, &meter).unwrap();
        let full = (1u32 << coeffs.len()) - 1;
        engine.patterns(full).unwrap().to_vec()
    }

    #[test]
    fn pair_patterns() {
        assert_eq!(engine_patterns(&[-2, 1], &[&[1], &[-1]]), vec![vec![0, 0]]);
        assert_eq!(engine_patterns(&[-2, 1], &[&[2], &[-1]]), vec![vec![0, 1]]);
        assert_eq!(engine_patterns(&[-2, 1], &[&[1], &[-2]]), vec![vec![1, 0]]);
    }

    #[test]
    fn triple_patterns() {
        // 2^a + 2^b - 2^c = 0 only as (a, a, a + 1)
        assert_eq!(engine_patterns(&[-2, 1], &[&[1], &[1], &[-1]]), vec![vec![0, 0, 1]]);
    }

    #[test]
    fn non_minimal_sets_are_excluded() {
        // 2^a + 2^c = 2^b + 2^d forces {a, c} = {b, d}, so some pair always
        // cancels on its own and no four-element cluster exists.
        assert!(engine_patterns(&[-2, 1], &[&[1], &[-1], &[1], &[-1]]).is_empty());
    }
}
