use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::KernelError;

/// All elementary symmetric polynomials `[σ_0, σ_1, ..., σ_n]` of `weights`.
pub fn elementary_symmetric_all(weights: &[i64]) -> Vec<BigInt> {
    let mut e = vec![BigInt::zero(); weights.len() + 1];
    e[0] = BigInt::one();
    for (j, &w) in weights.iter().enumerate() {
        let w = BigInt::from(w);
        // descending so e[i - 1] still holds the previous row
        for i in (1..=j + 1).rev() {
            let step = &e[i - 1] * &w;
            e[i] += step;
        }
    }
    e
}

/// `σ_i(weights)`; `σ_0 = 1` and `σ_n` is the product.
pub fn elementary_symmetric(weights: &[i64], i: usize) -> Result<BigInt, KernelError> {
    if i > weights.len() {
        return Err(KernelError::IndexOutOfRange { index: i, len: weights.len() });
    }
    Ok(elementary_symmetric_all(weights).swap_remove(i))
}
