//! Gaussian (q-binomial) coefficients in exact arithmetic.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `[n, k]_q`, the number of `k`-dimensional subspaces of `GF(q)^n`.
/// Returns 0 when `k > n`.
pub fn gaussian_coefficient(n: usize, k: usize, q: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let q = BigUint::from(q);
    let k = k.min(n - k);
    let mut r = BigUint::one();
    // After step i, r == [n, i + 1]_q, so each division is exact.
    for i in 0..k {
        r *= q.pow((n - i) as u32) - 1u32;
        let d = q.pow(i as u32 + 1) - 1u32;
        debug_assert!((&r % &d).is_zero());
        r /= d;
    }
    r
}
