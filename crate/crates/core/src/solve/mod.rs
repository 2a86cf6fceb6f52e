//! The decision procedure and the independent brute-force oracle.
//!
//! Every solution of a homogeneous system splits into clusters: minimal
//! index sets whose terms vanish in every equation over a non-root-of-unity
//! base. Shifting a cluster by a multiple of `N` keeps the solution, so each
//! solution has a normalized form in which every cluster's minimum lies in
//! `[0, N)`, and each cluster spans at most `mspn`. The default strategy
//! searches exactly these normalized certificates; [`Strategy::BoxScan`]
//! walks the whole certificate box instead.

mod boxscan;
pub(crate) mod clustered;
mod oracle;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::bounds::{system_box_at, BoundReport, Precision};
use crate::error::{Error, Result};
use crate::model::{ExpSystem, HomogenizedSystem};
use crate::verify::{solution_to_json, verify};

pub use oracle::{oracle_find_first, oracle_search, oracle_search_with_budget, DEFAULT_ORACLE_BUDGET};

/// Default number of search nodes before giving up.
pub const DEFAULT_MAX_CANDIDATES: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Search over normalized cluster certificates.
    Clustered,
    /// Lexicographic walk of `[0, box_limit]^k`; `prune` enables last-variable
    /// lookup and magnitude pruning for rational bases.
    BoxScan { prune: bool },
}

#[derive(Clone, Debug)]
pub struct Limits {
    pub max_candidates: u64,
    pub time_limit: Duration,
    pub max_vars: usize,
    pub jobs: usize,
    pub box_override: Option<BigInt>,
    pub strategy: Strategy,
    pub precision: Precision,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_candidates: DEFAULT_MAX_CANDIDATES,
            time_limit: Duration::from_secs(60),
            max_vars: 12,
            jobs: 1,
            box_override: None,
            strategy: Strategy::Clustered,
            precision: Precision::DEFAULT,
        }
    }
}

impl Limits {
    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }

    pub fn with_max_candidates(mut self, n: u64) -> Self {
        self.max_candidates = n;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Sat,
    Unsat,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Sat => "sat",
            Status::Unsat => "unsat",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchStats {
    pub candidates_tested: u64,
    pub elapsed: Duration,
    pub box_limit: BigInt,
    pub modulus: BigInt,
    pub system_mspn: BigInt,
}

#[derive(Clone, Debug)]
pub struct DecisionResult {
    pub status: Status,
    /// A verified solution of the input system.
    pub witness: Option<Vec<BigInt>>,
    pub stats: SearchStats,
}

impl DecisionResult {
    pub fn is_sat(&self) -> bool {
        self.status == Status::Sat
    }

    /// JSON form. Elapsed time is left out so repeated runs print identical
    /// bytes.
    pub fn to_json(&self) -> Value {
        json!({
            "status": self.status.as_str(),
            "witness": self.witness.as_deref().map_or(Value::Null, solution_to_json),
            "stats": {
                "candidates_tested": self.stats.candidates_tested,
                "box_limit": self.stats.box_limit.to_string(),
                "N": self.stats.modulus.to_string(),
                "system_mspn": self.stats.system_mspn.to_string(),
            },
        })
    }
}

/// A system made ready for searching: homogenized, cleared, bounded.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub homogenized: HomogenizedSystem,
    /// The homogenized system with integer coordinates.
    pub system: ExpSystem,
    pub report: BoundReport,
}

impl Prepared {
    pub fn new(system: &ExpSystem, precision: Precision) -> Result<Self> {
        let homogenized = system.homogenize();
        let cleared = homogenized.inner().clear_denominators();
        let report = system_box_at(&cleared, precision)?;
        Ok(Prepared { homogenized, system: cleared, report })
    }

    pub fn num_vars(&self) -> usize {
        self.system.num_vars()
    }
}

/// Node counter shared by all search threads.
pub(crate) struct Meter {
    count: std::sync::atomic::AtomicU64,
    max: u64,
    start: Instant,
    limit: Duration,
}

impl Meter {
    pub(crate) fn new(limits: &Limits) -> Self {
        Meter {
            count: Default::default(),
            max: limits.max_candidates,
            start: Instant::now(),
            limit: limits.time_limit,
        }
    }

    pub(crate) fn tick(&self, n: u64) -> Result<()> {
        use std::sync::atomic::Ordering;
        let before = self.count.fetch_add(n, Ordering::Relaxed);
        let after = before + n;
        if after > self.max {
            return Err(Error::ResourceLimitExceeded(format!(
                "candidate budget of {} exhausted",
                self.max
            )));
        }
        if before >> 12 != after >> 12 && self.start.elapsed() > self.limit {
            return Err(Error::ResourceLimitExceeded(format!(
                "time limit of {:?} exceeded",
                self.limit
            )));
        }
        Ok(())
    }

    pub(crate) fn count(&self) -> u64 {
        self.count.load(std::sync::atomic::Ordering::Relaxed)
    }

    pub(crate) fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }
}

pub(crate) fn to_u64(v: &BigInt, what: &str) -> Result<u64> {
    v.to_u64()
        .filter(|&x| x <= 1 << 40)
        .ok_or_else(|| Error::ResourceLimitExceeded(format!("{what} {v} is too large to search")))
}

/// Decides solvability with default limits.
pub fn decide(system: &ExpSystem) -> Result<DecisionResult> {
    decide_with(system, &Limits::default())
}

pub fn decide_with(system: &ExpSystem, limits: &Limits) -> Result<DecisionResult> {
    if system.num_vars() > limits.max_vars {
        return Err(Error::TooManyVariables { found: system.num_vars(), max: limits.max_vars });
    }
    let prepared = Prepared::new(system, limits.precision)?;
    let meter = Meter::new(limits);
    let found = match limits.strategy {
        Strategy::Clustered => clustered::Engine::new(&prepared, limits, &meter)?.first_solution()?,
        Strategy::BoxScan { prune } => boxscan::scan(&prepared, limits, &meter, prune)?,
    };
    let witness = match found {
        Some(inner) => {
            let x = prepared.homogenized.dehomogenize(&inner);
            if !verify(system, &x)? {
                return Err(Error::Internal(format!("search produced a non-solution {x:?}")));
            }
            Some(x)
        }
        None => None,
    };
    let box_limit = limits.box_override.clone().unwrap_or_else(|| prepared.report.box_limit.clone());
    Ok(DecisionResult {
        status: if witness.is_some() { Status::Sat } else { Status::Unsat },
        witness,
        stats: SearchStats {
            candidates_tested: meter.count(),
            elapsed: meter.elapsed(),
            box_limit,
            modulus: prepared.report.modulus.clone(),
            system_mspn: prepared.report.system_mspn.clone(),
        },
    })
}
