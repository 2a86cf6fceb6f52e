//! Plain lexicographic walk of the certificate box `[0, box_limit]^k`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use super::{to_u64, Limits, Meter, Prepared};
use crate::algebra::{FieldElement, Rational};
use crate::error::{Error, Result};

const MAX_TABLE_ENTRIES: u64 = 20_000_000;

struct Scan<'a> {
    n: usize,
    width: u64,
    meter: &'a Meter,
    /// `tab[i][p][v] = q_ip α_i^v`.
    tab: Vec<Vec<Vec<FieldElement>>>,
    /// Last-position lookup through a non-root-of-unity equation.
    lookup: Option<(usize, FxHashMap<FieldElement, u64>)>,
    /// `suffix[i][d]` bounds `|Σ_{p >= d} q_ip α^{v_p}|` for rational bases.
    suffix: Vec<Option<Vec<Rational>>>,
    prune: bool,
}

pub(super) fn scan(prep: &Prepared, limits: &Limits, meter: &Meter, prune: bool) -> Result<Option<Vec<BigInt>>> {
    let system = &prep.system;
    let n = system.num_vars();
    let box_limit = match &limits.box_override {
        Some(b) => to_u64(b, "box limit")?,
        None => to_u64(&prep.report.box_limit, "box limit")?,
    };
    let width = box_limit + 1;
    let entries = width * (n * system.equations().len()) as u64;
    if entries > MAX_TABLE_ENTRIES {
        return Err(Error::ResourceLimitExceeded(format!("box tables of size {entries} exceed the limit")));
    }

    let mut tab = Vec::new();
    let mut suffix = Vec::new();
    for (eq, order) in system.equations().iter().zip(&prep.report.root_of_unity_orders) {
        let alpha = FieldElement::generator(eq.field());
        let period = order.unwrap_or(width).min(width);
        let mut base_powers = Vec::with_capacity(period as usize);
        let mut p = FieldElement::one(eq.field());
        for _ in 0..period {
            base_powers.push(p.clone());
            p = &p * &alpha;
        }
        let powers: Vec<&FieldElement> = (0..width).map(|v| &base_powers[(v % period) as usize]).collect();
        tab.push(eq.coeffs().iter().map(|q| powers.iter().map(|&p| q * p).collect()).collect::<Vec<Vec<_>>>());

        suffix.push(match (order, eq.field().rational_value()) {
            (None, Some(a)) => {
                let top = if a.abs() > Rational::one() { a.abs().pow(box_limit as i32) } else { Rational::one() };
                let mut acc = vec![Rational::zero(); n + 1];
                for d in (0..n).rev() {
                    acc[d] = &acc[d + 1] + eq.coeff(d).coords()[0].abs() * &top;
                }
                Some(acc)
            }
            _ => None,
        });
    }

    let last = n - 1;
    let lookup = system
        .equations()
        .iter()
        .zip(&prep.report.root_of_unity_orders)
        .position(|(eq, o)| o.is_none() && !eq.coeff(last).is_zero())
        .map(|i| {
            let mut map = FxHashMap::default();
            for (v, val) in tab[i][last].iter().enumerate() {
                map.entry(val.clone()).or_insert(v as u64);
            }
            (i, map)
        });

    let s = Scan { n, width, meter, tab, lookup, suffix, prune };
    let zeros: Vec<FieldElement> = system.equations().iter().map(|eq| FieldElement::zero(eq.field())).collect();
    let mut x = vec![0u64; n];
    if s.descend(0, &zeros, &mut x)? {
        return Ok(Some(x.into_iter().map(BigInt::from).collect()));
    }
    Ok(None)
}

impl Scan<'_> {
    fn descend(&self, depth: usize, partial: &[FieldElement], x: &mut [u64]) -> Result<bool> {
        if depth == self.n {
            self.meter.tick(1)?;
            return Ok(partial.iter().all(FieldElement::is_zero));
        }
        if self.prune {
            for (i, bound) in self.suffix.iter().enumerate() {
                if let Some(b) = bound {
                    if partial[i].coords()[0].abs() > b[depth] {
                        return Ok(false);
                    }
                }
            }
            if depth == self.n - 1 {
                if let Some((i, map)) = &self.lookup {
                    self.meter.tick(1)?;
                    let Some(&v) = map.get(&-&partial[*i]) else {
                        return Ok(false);
                    };
                    x[depth] = v;
                    let ok = (0..partial.len()).all(|j| (&partial[j] + &self.tab[j][depth][v as usize]).is_zero());
                    return Ok(ok);
                }
            }
        }
        for v in 0..self.width {
            x[depth] = v;
            let next: Vec<FieldElement> =
                (0..partial.len()).map(|j| &partial[j] + &self.tab[j][depth][v as usize]).collect();
            if self.descend(depth + 1, &next, x)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}
