//! Exact binomial coefficients.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `C(m, k)` with the convention that it vanishes unless `0 <= k <= m`.
pub fn binomial(m: i64, k: i64) -> BigUint {
    if k < 0 || m < 0 || k > m {
        return BigUint::zero();
    }
    let k = k.min(m - k) as u64;
    let m = m as u64;
    let mut acc = BigUint::one();
    // acc stays integral: after step i it equals C(m - k + i, i).
    for i in 1..=k {
        acc *= m - k + i;
        acc /= i;
    }
    acc
}
