//! Brute-force reference implementations.
//!
//! These follow the definitions literally and are kept independent of the
//! suffix-array code so that tests can compare the two routes.

use std::collections::HashSet;

/// `max{k : x[i..i+k] == x[j..j+k] for some i < j <= n-k}`, scanning every
/// pair of start positions and extending the match one symbol at a time.
pub fn maximal_repetition(x: &[u32]) -> usize {
    let n = x.len();
    let mut best = 0;
    for i in 0..n {
        for j in i + 1..n {
            let mut k = 0;
            while j + k < n && x[i + k] == x[j + k] {
                k += 1;
            }
            best = best.max(k);
        }
    }
    best
}

/// Size of the set of length-`k` windows of `x`.
pub fn subword_complexity(x: &[u32], k: usize) -> usize {
    if k > x.len() {
        return 0;
    }
    x.windows(k.max(1))
        .take(x.len() + 1 - k)
        .map(|w| &w[..k])
        .collect::<HashSet<_>>()
        .len()
}

/// Largest `k` such that `future[..k]` occurs somewhere in `past`, trying
/// every prefix length and every start position.
pub fn longest_match(past: &[u32], future: &[u32]) -> usize {
    let mut best = 0;
    for k in 1..=future.len().min(past.len()) {
        let probe = &future[..k];
        if past.windows(k).any(|w| w == probe) {
            best = k;
        } else {
            break;
        }
    }
    best
}
