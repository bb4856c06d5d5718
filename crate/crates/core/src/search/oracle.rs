use std::collections::BTreeSet;

use super::{all_multisets, SearchCounts, SearchError, SearchResult, SearchSpec};
use crate::constraints::first_failure;
use crate::model::{FixedPointData, WeightMultiset};

/// Independent check of [`super::enumerate`]: walks every ordered tuple of
/// weight multisets, runs the constraint checks on each, and canonicalizes
/// the feasible ones afterwards. No pruning and no ordering tricks.
pub fn brute_oracle(spec: &SearchSpec) -> Result<SearchResult, SearchError> {
    spec.check_budget(spec.oracle_budget)?;
    let n = spec.half_dim;
    let k = spec.points;
    let pool = all_multisets(n, spec.max_weight);
    let mut found: BTreeSet<Vec<WeightMultiset>> = BTreeSet::new();
    let mut counts = SearchCounts {
        raw_size: spec.raw_size(),
        canonical_candidates: spec.canonical_candidates(),
        ..SearchCounts::default()
    };

    let mut odometer = vec![0usize; k];
    loop {
        counts.leaves_examined += 1;
        let weights: Vec<Vec<i64>> = odometer.iter().map(|&i| pool[i].clone()).collect();
        let data = FixedPointData::from_weights(n, weights).expect("pool multisets are valid");
        if !spec.effective_only || data.weight_gcd() == 1 {
            if first_failure(&data, &spec.constraints).is_none() {
                found.insert(data.canonical_key());
            }
        } else {
            counts.ineffective_skipped += 1;
        }

        let mut pos = 0;
        loop {
            if pos == k {
                counts.feasible = found.len() as u128;
                let configurations = found.into_iter().map(|key| FixedPointData::from_key(n, key)).collect();
                return Ok(SearchResult { spec: spec.clone(), configurations, counts });
            }
            odometer[pos] += 1;
            if odometer[pos] < pool.len() {
                break;
            }
            odometer[pos] = 0;
            pos += 1;
        }
    }
}
