//! Bounded exhaustive search over fixed-point data.
//!
//! A search space is fixed by the number of points `k`, the half dimension
//! `n` and a weight bound `W`: every point carries a multiset of `n` weights
//! from `[−W, W] \ {0}`. Results are canonical up to relabelling points and
//! reversing the circle (negating every weight).

mod enumerate;
mod examples;
mod oracle;
mod probe;

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::model::{FixedPointData, WeightMultiset};
use crate::report::ConstraintId;

pub use enumerate::enumerate;
pub use examples::{generate_example, ExampleRecipe, RecipeError};
pub use oracle::brute_oracle;
pub use probe::{theorem_probe, ProbeBounds, ProbeName, ProbeReport, ProbeRun, ProbeVerdict};

pub const DEFAULT_BUDGET: u128 = 100_000_000;
pub const DEFAULT_ORACLE_BUDGET: u128 = 1_000_000;

/// Environment variable overriding the default enumeration budget.
pub const BUDGET_ENV: &str = "SYMFIX_BUDGET";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("search space has {raw_size} raw candidates, over the budget of {budget}")]
    BudgetExceeded { raw_size: BigUint, budget: u128 },
    #[error("invalid search spec: {0}")]
    InvalidSpec(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchSpec {
    pub points: usize,
    pub half_dim: usize,
    pub max_weight: i64,
    #[serde(serialize_with = "serialize_ids")]
    pub constraints: Vec<ConstraintId>,
    /// Keep only data whose weights have overall gcd 1.
    pub effective_only: bool,
    pub budget: u128,
    pub oracle_budget: u128,
    /// Worker threads; `None` uses the global pool.
    #[serde(skip)]
    pub jobs: Option<usize>,
}

fn serialize_ids<S: serde::Serializer>(ids: &[ConstraintId], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(ids.iter().map(|c| c.as_str()))
}

impl SearchSpec {
    pub fn new(points: usize, half_dim: usize, max_weight: i64) -> Self {
        Self {
            points,
            half_dim,
            max_weight,
            constraints: ConstraintId::ALL.to_vec(),
            effective_only: true,
            budget: DEFAULT_BUDGET,
            oracle_budget: DEFAULT_ORACLE_BUDGET,
            jobs: None,
        }
    }

    pub fn effective_only(mut self, on: bool) -> Self {
        self.effective_only = on;
        self
    }

    pub fn with_constraints(mut self, ids: Vec<ConstraintId>) -> Self {
        self.constraints = ids;
        self
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_jobs(mut self, jobs: Option<usize>) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.points == 0 || self.half_dim == 0 || self.max_weight < 1 {
            return Err(SearchError::InvalidSpec(format!(
                "need points >= 1, half_dim >= 1, max_weight >= 1 (got {}, {}, {})",
                self.points, self.half_dim, self.max_weight
            )));
        }
        Ok(())
    }

    /// Number of weight multisets per point: `C(2W + n − 1, n)`.
    pub fn multisets_per_point(&self) -> BigUint {
        binomial(2 * self.max_weight as u64 + self.half_dim as u64 - 1, self.half_dim as u64)
    }

    /// Raw search size `C(2W + n − 1, n)^k`.
    pub fn raw_size(&self) -> BigUint {
        num_traits::pow(self.multisets_per_point(), self.points)
    }

    /// Unordered point lists, `C(M + k − 1, k)` for `M` multisets per point.
    pub fn canonical_candidates(&self) -> BigUint {
        let m = self.multisets_per_point();
        let m = m.to_u64().expect("multiset count fits in u64");
        binomial(m + self.points as u64 - 1, self.points as u64)
    }

    pub(crate) fn check_budget(&self, budget: u128) -> Result<(), SearchError> {
        self.validate()?;
        let raw = self.raw_size();
        if raw > BigUint::from(budget) {
            return Err(SearchError::BudgetExceeded { raw_size: raw, budget });
        }
        Ok(())
    }
}

/// Budget from `SYMFIX_BUDGET` when set and parseable, else the default.
pub fn budget_from_env() -> u128 {
    std::env::var(BUDGET_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchCounts {
    #[serde(serialize_with = "serialize_big")]
    pub raw_size: BigUint,
    #[serde(serialize_with = "serialize_big")]
    pub canonical_candidates: BigUint,
    /// Complete candidates that reached the final checks.
    pub leaves_examined: u128,
    /// Candidates rejected per constraint id, counted in leaves.
    pub pruned: BTreeMap<String, u128>,
    pub ineffective_skipped: u128,
    /// Candidates dropped as the global negation of another candidate.
    pub sign_duplicates: u128,
    pub feasible: u128,
}

fn serialize_big<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match v.to_u128() {
        Some(x) if x <= u64::MAX as u128 => s.serialize_u64(x as u64),
        _ => s.serialize_str(&v.to_string()),
    }
}

impl SearchCounts {
    fn merge(&mut self, other: &SearchCounts) {
        self.leaves_examined += other.leaves_examined;
        for (k, v) in &other.pruned {
            *self.pruned.entry(k.clone()).or_insert(0) += v;
        }
        self.ineffective_skipped += other.ineffective_skipped;
        self.sign_duplicates += other.sign_duplicates;
        self.feasible += other.feasible;
    }

    pub fn pruned_total(&self) -> u128 {
        self.pruned.values().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub spec: SearchSpec,
    /// Canonical representatives, sorted by canonical key.
    pub configurations: Vec<FixedPointData>,
    pub counts: SearchCounts,
}

impl SearchResult {
    pub fn keys(&self) -> Vec<Vec<WeightMultiset>> {
        self.configurations.iter().map(|d| d.relabel_key()).collect()
    }

    /// `{"summary": {...}}` trailer for streamed output.
    pub fn summary_json(&self) -> String {
        #[derive(Serialize)]
        struct Summary<'a> {
            spec: &'a SearchSpec,
            dim: usize,
            counts: &'a SearchCounts,
        }
        #[derive(Serialize)]
        struct Trailer<'a> {
            summary: Summary<'a>,
        }
        serde_json::to_string(&Trailer {
            summary: Summary { spec: &self.spec, dim: 2 * self.spec.half_dim, counts: &self.counts },
        })
        .expect("summary serializes")
    }
}

/// All sorted multisets of `n` nonzero weights in `[−W, W]`, in
/// lexicographic order.
pub(crate) fn all_multisets(half_dim: usize, max_weight: i64) -> Vec<Vec<i64>> {
    let alphabet: Vec<i64> = (-max_weight..=max_weight).filter(|&w| w != 0).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(half_dim);
    fn rec(alphabet: &[i64], from: usize, n: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in from..alphabet.len() {
            cur.push(alphabet[i]);
            rec(alphabet, i, n, cur, out);
            cur.pop();
        }
    }
    rec(&alphabet, 0, half_dim, &mut cur, &mut out);
    out
}

pub(crate) fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(j) if j > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .expect("thread pool builds")
            .install(f),
        _ => f(),
    }
}
