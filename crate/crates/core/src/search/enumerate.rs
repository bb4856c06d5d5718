use num_integer::Integer as _;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::{all_multisets, binomial, with_pool, SearchCounts, SearchError, SearchResult, SearchSpec};
use crate::constraints::first_failure;
use crate::model::{FixedPointData, WeightMultiset};
use crate::report::ConstraintId;

struct PointStats {
    weights: Vec<i64>,
    c1: i64,
    lambda: usize,
    /// `N(ℓ) − N(−ℓ)` at index `ℓ − 1`.
    balance: Vec<i32>,
    gcd: i64,
}

struct Ctx<'a> {
    spec: &'a SearchSpec,
    stats: Vec<PointStats>,
    use_c1: bool,
    use_bal: bool,
    use_idx: bool,
}

struct State {
    chosen: Vec<usize>,
    c1: i64,
    balance: Vec<i32>,
    lambda_counts: Vec<i64>,
    gcd: i64,
}

impl Ctx<'_> {
    /// Leaves below a node with `remaining` points still to choose from
    /// indices `from..`.
    fn subtree_leaves(&self, from: usize, remaining: usize) -> u128 {
        let free = (self.stats.len() - from) as u64;
        if remaining == 0 {
            return 1;
        }
        binomial(free + remaining as u64 - 1, remaining as u64).to_u128().expect("leaf count fits")
    }

    fn idx_mismatch(&self, counts: &[i64]) -> i64 {
        let n = self.spec.half_dim;
        (0..=n).filter(|&i| i < n - i).map(|i| (counts[i] - counts[n - i]).abs()).sum()
    }

    /// First constraint that can no longer be satisfied by any completion
    /// with `remaining` more points.
    fn partial_violation(&self, st: &State, remaining: usize) -> Option<ConstraintId> {
        let n = self.spec.half_dim as i64;
        let r = remaining as i64;
        if self.use_c1 && st.c1.abs() > r * n * self.spec.max_weight {
            return Some(ConstraintId::ChernSum);
        }
        if self.use_bal {
            let imbalance: i64 = st.balance.iter().map(|&b| (b as i64).abs()).sum();
            if imbalance > r * n {
                return Some(ConstraintId::WeightBalance);
            }
        }
        if self.use_idx && self.idx_mismatch(&st.lambda_counts) > r {
            return Some(ConstraintId::IndexSymmetry);
        }
        None
    }

    fn push(&self, st: &mut State, idx: usize) {
        let p = &self.stats[idx];
        st.chosen.push(idx);
        st.c1 += p.c1;
        for (b, d) in st.balance.iter_mut().zip(&p.balance) {
            *b += d;
        }
        st.lambda_counts[p.lambda] += 1;
        st.gcd = st.gcd.gcd(&p.gcd);
    }

    fn pop(&self, st: &mut State, prev_gcd: i64) {
        let idx = st.chosen.pop().expect("nonempty");
        let p = &self.stats[idx];
        st.c1 -= p.c1;
        for (b, d) in st.balance.iter_mut().zip(&p.balance) {
            *b -= d;
        }
        st.lambda_counts[p.lambda] -= 1;
        st.gcd = prev_gcd;
    }

    fn leaf(&self, st: &State, counts: &mut SearchCounts, found: &mut Vec<Vec<WeightMultiset>>) {
        counts.leaves_examined += 1;
        if let Some(id) = self.partial_violation(st, 0) {
            *counts.pruned.entry(id.as_str().to_string()).or_insert(0) += 1;
            return;
        }
        if self.spec.effective_only && st.gcd != 1 {
            counts.ineffective_skipped += 1;
            return;
        }
        let key: Vec<WeightMultiset> = st
            .chosen
            .iter()
            .map(|&i| WeightMultiset::from_sorted_unchecked(self.stats[i].weights.clone()))
            .collect();
        let mut neg: Vec<WeightMultiset> = key.iter().map(|m| m.negated()).collect();
        neg.sort();
        if neg < key {
            counts.sign_duplicates += 1;
            return;
        }
        let data = FixedPointData::from_key(self.spec.half_dim, key.clone());
        match first_failure(&data, &self.spec.constraints) {
            None => {
                counts.feasible += 1;
                found.push(key);
            }
            Some(id) => *counts.pruned.entry(id.as_str().to_string()).or_insert(0) += 1,
        }
    }

    fn dfs(&self, st: &mut State, from: usize, counts: &mut SearchCounts, found: &mut Vec<Vec<WeightMultiset>>) {
        let remaining = self.spec.points - st.chosen.len();
        if remaining == 0 {
            self.leaf(st, counts, found);
            return;
        }
        if let Some(id) = self.partial_violation(st, remaining) {
            *counts.pruned.entry(id.as_str().to_string()).or_insert(0) += self.subtree_leaves(from, remaining);
            return;
        }
        for idx in from..self.stats.len() {
            let prev_gcd = st.gcd;
            self.push(st, idx);
            self.dfs(st, idx, counts, found);
            self.pop(st, prev_gcd);
        }
    }
}

/// Exhaustive search with sound partial pruning. Points are chosen in
/// nondecreasing multiset order so each relabelling class is visited once;
/// partial point lists are cut when the Chern-sum, balance or index
/// conditions can no longer be met by any completion. Complete candidates
/// are decided by the constraint report, so the output is exactly the
/// feasible set.
pub fn enumerate(spec: &SearchSpec) -> Result<SearchResult, SearchError> {
    spec.check_budget(spec.budget)?;
    let n = spec.half_dim;
    let w = spec.max_weight;
    let stats: Vec<PointStats> = all_multisets(n, w)
        .into_iter()
        .map(|weights| {
            let mut balance = vec![0i32; w as usize];
            for &x in &weights {
                balance[x.unsigned_abs() as usize - 1] += x.signum() as i32;
            }
            PointStats {
                c1: weights.iter().sum(),
                lambda: weights.iter().filter(|&&x| x < 0).count(),
                gcd: weights.iter().fold(0i64, |g, x| g.gcd(x)),
                balance,
                weights,
            }
        })
        .collect();
    let selected = |id| spec.constraints.contains(&id);
    let ctx = Ctx {
        spec,
        stats,
        use_c1: selected(ConstraintId::ChernSum),
        use_bal: selected(ConstraintId::WeightBalance),
        use_idx: selected(ConstraintId::IndexSymmetry),
    };

    let mut counts = SearchCounts {
        raw_size: spec.raw_size(),
        canonical_candidates: spec.canonical_candidates(),
        ..SearchCounts::default()
    };

    if selected(ConstraintId::Parity) && spec.points % 2 == 1 && n % 2 == 1 {
        let all = counts.canonical_candidates.to_u128().expect("fits");
        counts.pruned.insert(ConstraintId::Parity.as_str().to_string(), all);
        return Ok(SearchResult { spec: spec.clone(), configurations: Vec::new(), counts });
    }

    let partitions: Vec<(SearchCounts, Vec<Vec<WeightMultiset>>)> = with_pool(spec.jobs, || {
        (0..ctx.stats.len())
            .into_par_iter()
            .map(|first| {
                let mut st = State {
                    chosen: Vec::with_capacity(spec.points),
                    c1: 0,
                    balance: vec![0; w as usize],
                    lambda_counts: vec![0; n + 1],
                    gcd: 0,
                };
                let mut c = SearchCounts::default();
                let mut found = Vec::new();
                ctx.push(&mut st, first);
                ctx.dfs(&mut st, first, &mut c, &mut found);
                (c, found)
            })
            .collect()
    });

    let mut keys = Vec::new();
    for (c, found) in &partitions {
        counts.merge(c);
        keys.extend(found.iter().cloned());
    }
    keys.sort();
    let configurations = keys.into_iter().map(|k| FixedPointData::from_key(n, k)).collect();
    Ok(SearchResult { spec: spec.clone(), configurations, counts })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point_is_always_empty() {
        let r = enumerate(&SearchSpec::new(1, 3, 4)).unwrap();
        assert!(r.configurations.is_empty());
        assert_eq!(r.counts.feasible, 0);
    }

    #[test]
    fn dim_six_small_weights() {
        let r = enumerate(&SearchSpec::new(2, 3, 3)).unwrap();
        let got: Vec<String> = r.configurations.iter().map(|d| d.to_string()).collect();
        assert_eq!(got, vec!["n=3: p0={-3, 1, 2} p1={-2, -1, 3}", "n=3: p0={-2, 1, 1} p1={-1, -1, 2}"]);
    }

    #[test]
    fn accounting_covers_every_candidate() {
        for spec in [SearchSpec::new(2, 2, 3), SearchSpec::new(3, 2, 2), SearchSpec::new(2, 3, 4).effective_only(false)] {
            let r = enumerate(&spec).unwrap();
            let c = &r.counts;
            let total = c.pruned_total() + c.ineffective_skipped + c.sign_duplicates + c.feasible;
            assert_eq!(total, c.canonical_candidates.to_u128().unwrap(), "{spec:?}");
        }
    }

    #[test]
    fn parity_prunes_at_the_root() {
        let r = enumerate(&SearchSpec::new(3, 3, 2)).unwrap();
        assert!(r.configurations.is_empty());
        assert_eq!(r.counts.leaves_examined, 0);
        assert_eq!(r.counts.pruned["C-PAR"], r.counts.canonical_candidates.to_u128().unwrap());
    }

    #[test]
    fn jobs_do_not_change_output() {
        let a = enumerate(&SearchSpec::new(2, 3, 4).with_jobs(Some(1))).unwrap();
        let b = enumerate(&SearchSpec::new(2, 3, 4).with_jobs(Some(4))).unwrap();
        assert_eq!(a.configurations, b.configurations);
        assert_eq!(a.counts, b.counts);
    }

    #[test]
    fn budget_exceeded() {
        let err = enumerate(&SearchSpec::new(4, 4, 6).with_budget(10)).unwrap_err();
        assert!(matches!(err, SearchError::BudgetExceeded { .. }));
    }
}
