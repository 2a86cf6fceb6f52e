//! Independent ground-truth search over a box `[lo, hi]^k` of the original
//! system.
//!
//! Powers of every base are tabulated by repeated multiplication only. The
//! last variable is found by a hash join: the prefix `x_1..x_{k-1}` is
//! enumerated, and the value `rhs - Σ_{j<k} q_j α^{x_j}` is looked up among
//! `q_k α^e`. Keys are images in `F_p[x]/(f mod p)` for a prime `p` at which
//! the system has good reduction, so collisions are possible but never lose a
//! solution; each hit is re-checked with exact arithmetic.

use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rustc_hash::FxHashMap;

use crate::algebra::{FieldElement, NumberField, Rational};
use crate::error::{Error, Result};
use crate::model::ExpSystem;

const PRIMES: [u64; 4] = [
    (1 << 61) - 1,
    1_000_000_000_000_000_003,
    999_999_999_999_999_989,
    (1 << 62) - 57,
];

/// Default cap on the number of enumerated prefixes.
pub const DEFAULT_ORACLE_BUDGET: u64 = 200_000_000;

/// All solutions of `system` in `[lo, hi]^k`, in lexicographic order.
pub fn oracle_search(system: &ExpSystem, lo: i64, hi: i64) -> Result<Vec<Vec<i64>>> {
    OracleRun::new(system, lo, hi, DEFAULT_ORACLE_BUDGET)?.run(false)
}

/// Lexicographically first solution in `[lo, hi]^k`, if any.
pub fn oracle_find_first(system: &ExpSystem, lo: i64, hi: i64) -> Result<Option<Vec<i64>>> {
    Ok(OracleRun::new(system, lo, hi, DEFAULT_ORACLE_BUDGET)?.run(true)?.into_iter().next())
}

pub fn oracle_search_with_budget(
    system: &ExpSystem,
    lo: i64,
    hi: i64,
    budget: u64,
) -> Result<Vec<Vec<i64>>> {
    OracleRun::new(system, lo, hi, budget)?.run(false)
}

struct OracleRun<'a> {
    system: &'a ExpSystem,
    lo: i64,
    width: usize,
    /// `exact[f][e - lo] = α_f^e` for each distinct field index `f`.
    exact: Vec<Vec<FieldElement>>,
}

impl<'a> OracleRun<'a> {
    fn new(system: &'a ExpSystem, lo: i64, hi: i64, budget: u64) -> Result<Self> {
        if hi < lo {
            return Err(Error::InvalidInstance(format!("empty oracle range [{lo}, {hi}]")));
        }
        let width = (hi - lo + 1) as u64;
        let prefixes = (width as f64).powi(system.num_vars() as i32 - 1);
        if prefixes > budget as f64 {
            return Err(Error::ResourceLimitExceeded(format!(
                "oracle sweep needs {prefixes:.3e} prefixes, budget is {budget}"
            )));
        }
        let exact = system.fields().iter().map(|f| naive_powers(f, lo, hi)).collect::<Result<_>>()?;
        Ok(OracleRun { system, lo, width: width as usize, exact })
    }

    fn run(&self, first_only: bool) -> Result<Vec<Vec<i64>>> {
        match ModRepr::for_system(self.system) {
            Some(repr) => self.join(&repr, first_only),
            None => self.join(&ExactRepr, first_only),
        }
    }

    fn exact_check(&self, x: &[usize]) -> bool {
        self.system.equations().iter().all(|eq| {
            let powers = &self.exact[eq.base()];
            let mut acc = -eq.rhs();
            for (q, &e) in eq.coeffs().iter().zip(x) {
                if !q.is_zero() {
                    acc = acc + q * &powers[e];
                }
            }
            acc.is_zero()
        })
    }

    fn join<R: Repr>(&self, repr: &R, first_only: bool) -> Result<Vec<Vec<i64>>> {
        let eqs = self.system.equations();
        let k = self.system.num_vars();
        // terms[j][e]: concatenated images of q_ij α_i^{lo+e} over all equations
        let terms: Vec<Vec<Vec<R::Elem>>> = (0..k)
            .map(|j| {
                (0..self.width)
                    .map(|e| {
                        eqs.iter()
                            .flat_map(|eq| repr.image(&(eq.coeff(j) * &self.exact[eq.base()][e])))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let rhs: Vec<R::Elem> = eqs.iter().flat_map(|eq| repr.image(eq.rhs())).collect();

        let last = k - 1;
        let mut index: FxHashMap<Vec<R::Elem>, Vec<usize>> = FxHashMap::default();
        for (e, key) in terms[last].iter().enumerate() {
            index.entry(key.clone()).or_default().push(e);
        }

        let mut search = JoinState {
            run: self,
            repr,
            terms: &terms,
            index: &index,
            partial: vec![rhs; k],
            prefix: vec![0; k],
            out: Vec::new(),
            first_only,
        };
        search.descend(0);
        Ok(search.out)
    }
}

struct JoinState<'r, 'a, R: Repr> {
    run: &'r OracleRun<'a>,
    repr: &'r R,
    terms: &'r [Vec<Vec<R::Elem>>],
    index: &'r FxHashMap<Vec<R::Elem>, Vec<usize>>,
    /// `partial[j] = rhs - Σ_{i<j} term_i(prefix_i)`
    partial: Vec<Vec<R::Elem>>,
    prefix: Vec<usize>,
    out: Vec<Vec<i64>>,
    first_only: bool,
}

impl<R: Repr> JoinState<'_, '_, R> {
    /// Returns `true` once the search should stop.
    fn descend(&mut self, depth: usize) -> bool {
        let last = self.prefix.len() - 1;
        if depth == last {
            let Some(hits) = self.index.get(&self.partial[last][..]) else {
                return false;
            };
            for &e in hits {
                self.prefix[last] = e;
                if self.run.exact_check(&self.prefix) {
                    self.out.push(self.prefix.iter().map(|&v| v as i64 + self.run.lo).collect());
                    if self.first_only {
                        return true;
                    }
                }
            }
            return false;
        }
        for e in 0..self.run.width {
            self.prefix[depth] = e;
            let (head, tail) = self.partial.split_at_mut(depth + 1);
            let src = &head[depth];
            let dst = &mut tail[0];
            for ((d, s), t) in dst.iter_mut().zip(src).zip(&self.terms[depth][e]) {
                *d = self.repr.sub(s, t);
            }
            if self.descend(depth + 1) {
                return true;
            }
        }
        false
    }
}

/// `α^e` for `e` in `[lo, hi]`, by repeated multiplication by `α` or `α^{-1}`.
fn naive_powers(field: &std::sync::Arc<NumberField>, lo: i64, hi: i64) -> Result<Vec<FieldElement>> {
    let alpha = FieldElement::generator(field);
    let inv = alpha.inverse()?;
    let one = FieldElement::one(field);
    let mut out = Vec::with_capacity((hi - lo + 1) as usize);
    if lo >= 0 {
        let mut p = one;
        for _ in 0..lo {
            p = &p * &alpha;
        }
        for _ in lo..=hi {
            out.push(p.clone());
            p = &p * &alpha;
        }
        return Ok(out);
    }
    let mut p = one.clone();
    let mut negative = Vec::new();
    for _ in lo..0 {
        p = &p * &inv;
        negative.push(p.clone());
    }
    negative.reverse();
    out.extend(negative.into_iter().take((hi.min(-1) - lo + 1) as usize));
    let mut p = one;
    for _ in 0..=hi.max(-1) {
        out.push(p.clone());
        p = &p * &alpha;
    }
    Ok(out)
}

/// Coordinate-wise image of field elements in some commutative group.
trait Repr {
    type Elem: Clone + Hash + Eq;
    fn image(&self, x: &FieldElement) -> Vec<Self::Elem>;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

struct ExactRepr;

impl Repr for ExactRepr {
    type Elem = Rational;
    fn image(&self, x: &FieldElement) -> Vec<Rational> {
        x.coords().to_vec()
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
}

/// Reduction of p-integral elements modulo a prime.
struct ModRepr {
    p: u64,
}

fn mod_rational(r: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = r.denom().mod_floor(&pb).to_u64()?;
    if den == 0 {
        return None;
    }
    let num = r.numer().mod_floor(&pb).to_u64()?;
    Some(mulmod(num, powmod(den, p - 2, p), p))
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

impl ModRepr {
    /// The first prime at which every field, coefficient and right-hand side
    /// reduces well.
    fn for_system(system: &ExpSystem) -> Option<Self> {
        PRIMES.iter().copied().find(|&p| Self::good(system, p)).map(|p| ModRepr { p })
    }

    fn good(system: &ExpSystem, p: u64) -> bool {
        let pb = BigInt::from(p);
        let fields_ok = system.fields().iter().all(|f| {
            let lead = f.min_poly().leading().expect("nonzero minimal polynomial");
            let c0 = f.min_poly().coeff(0);
            !(lead % &pb).is_zero() && !(c0 % &pb).is_zero()
        });
        let coeffs_ok = system.equations().iter().all(|eq| {
            eq.coeffs()
                .iter()
                .chain(std::iter::once(eq.rhs()))
                .flat_map(|c| c.coords())
                .all(|r| !(r.denom() % &pb).is_zero())
        });
        fields_ok && coeffs_ok
    }
}

impl Repr for ModRepr {
    type Elem = u64;
    fn image(&self, x: &FieldElement) -> Vec<u64> {
        x.coords()
            .iter()
            .map(|c| mod_rational(c, self.p).expect("p-integral by choice of prime"))
            .collect()
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + (self.p - b)
        }
    }
}
