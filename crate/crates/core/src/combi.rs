//! Small combinatorial helpers: binomial coefficients and k-subset iteration.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// Binomial coefficient C(n, k) as an arbitrary-precision integer.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0u32);
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// C(n, k) clamped to u64::MAX; convenient for guards and table output.
pub fn binomial_u64(n: usize, k: usize) -> u64 {
    binomial(n, k).to_u64().unwrap_or(u64::MAX)
}

/// Sum of C(n, i) for i in 0..=k, clamped to u64::MAX.
pub fn binomial_prefix_sum(n: usize, k: usize) -> u64 {
    let mut total = BigInt::from(0u32);
    for i in 0..=k {
        total += binomial(n, i);
    }
    total.to_u64().unwrap_or(u64::MAX)
}

/// All subsets of `0..n` of size exactly `k`, in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance to the lexicographically next k-subset
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// All subsets of `0..n` of size at most `max_size`, ordered by size then
/// lexicographically. The empty subset comes first.
pub fn subsets_up_to(n: usize, max_size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for k in 0..=max_size.min(n) {
        out.extend(k_subsets(n, k));
    }
    out
}
