#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use symfix_core::FixedPointData;

pub fn nonzero_weight(rng: &mut impl Rng, w: i64) -> i64 {
    let x = rng.gen_range(1..=w);
    if rng.gen_bool(0.5) {
        x
    } else {
        -x
    }
}

/// Independent uniform weights.
pub fn uniform_data(rng: &mut impl Rng, n: usize, k: usize, w: i64) -> FixedPointData {
    let weights = (0..k).map(|_| (0..n).map(|_| nonzero_weight(rng, w)).collect()).collect();
    FixedPointData::from_weights(n, weights).unwrap()
}

/// Weights dealt from `±ℓ` pairs, so every weight is balanced by its
/// negative somewhere. Needs `k·n` even.
pub fn paired_data(rng: &mut impl Rng, n: usize, k: usize, w: i64) -> FixedPointData {
    assert!((k * n).is_multiple_of(2));
    let mut pool = Vec::with_capacity(k * n);
    for _ in 0..k * n / 2 {
        let l = rng.gen_range(1..=w);
        pool.push(l);
        pool.push(-l);
    }
    pool.shuffle(rng);
    let weights = pool.chunks(n).map(|c| c.to_vec()).collect();
    FixedPointData::from_weights(n, weights).unwrap()
}

/// Random data with `n ≤ max_n`, `k ≤ max_k`, weights in `[−W, W]` for a
/// random `W ≤ max_w`. About half the sets are paired when `k·n` is even.
pub fn random_data(rng: &mut ChaCha8Rng, max_n: usize, max_k: usize, max_w: i64) -> FixedPointData {
    let n = rng.gen_range(1..=max_n);
    let k = rng.gen_range(1..=max_k);
    let w = rng.gen_range(1..=max_w);
    if (k * n) % 2 == 0 && rng.gen_bool(0.5) {
        paired_data(rng, n, k, w)
    } else {
        uniform_data(rng, n, k, w)
    }
}
