//! Combinatorial string statistics.
//!
//! Positions are 0-based throughout. For the recurrence functions the
//! `anchor` is the index of the first symbol of the anchored block `X_1^k`;
//! shift `i` compares `window[anchor - i .. anchor - i + k]` against it, so
//! shift 1 may overlap the anchored block.

mod automaton;
pub mod oracle;
mod sequence;
mod suffix;

use serde::{Deserialize, Serialize};

pub use sequence::Sequence;
pub use suffix::SuffixArray;

use crate::{Error, Result};

/// One observed waiting or recurrence time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceSample {
    /// The shift found, the cap when the trimmed time binds, or the number
    /// of shifts searched when `truncated`.
    pub value: u64,
    /// `N(k)` for trimmed times.
    pub trimmed_cap: Option<u64>,
    /// The window ran out before a match and before the cap.
    pub truncated: bool,
}

/// Maximal repetition `L(x)`: the length of the longest substring occurring
/// at two distinct start positions, overlaps allowed. Zero if nothing repeats.
pub fn maximal_repetition(x: &Sequence) -> usize {
    maximal_repetition_of(x.symbols())
}

pub fn maximal_repetition_of(x: &[u32]) -> usize {
    if x.len() < 2 {
        return 0;
    }
    SuffixArray::new(x).max_lcp()
}

/// `L` on the prefixes `x[..n]` for each `n` in a strictly increasing grid.
pub fn maximal_repetition_profile(x: &Sequence, grid: &[usize]) -> Result<Vec<(usize, usize)>> {
    if let Some(w) = grid.windows(2).find(|w| w[0] >= w[1]) {
        return Err(Error::input(format!(
            "grid must be strictly increasing, found {} then {}",
            w[0], w[1]
        )));
    }
    if let Some(&n) = grid.iter().find(|&&n| n > x.len()) {
        return Err(Error::input(format!(
            "grid length {n} exceeds sequence length {}",
            x.len()
        )));
    }
    let Some(&last) = grid.last() else {
        return Ok(Vec::new());
    };
    let all = prefix_maximal_repetitions(&x.symbols()[..last]);
    Ok(grid.iter().map(|&n| (n, all[n])).collect())
}

/// `L(x[..n])` for every `n` in `0..=x.len()`, computed online.
pub fn prefix_maximal_repetitions(x: &[u32]) -> Vec<usize> {
    automaton::prefix_repetitions(x)
}

/// Subword complexity `f(k|x)`: the number of distinct length-`k` substrings.
pub fn subword_complexity(x: &Sequence, k: usize) -> Result<usize> {
    if k == 0 {
        return Err(Error::input("block length k must be at least 1"));
    }
    Ok(subword_complexity_of(x.symbols(), k))
}

pub fn subword_complexity_of(x: &[u32], k: usize) -> usize {
    if k > x.len() {
        return 0;
    }
    SuffixArray::new(x).distinct_blocks(k)
}

/// Longest match length: the largest `k` such that `future[..k]` occurs as a
/// substring of `past`.
pub fn longest_match(past: &Sequence, future: &Sequence) -> usize {
    longest_match_of(past.symbols(), future.symbols())
}

pub fn longest_match_of(past: &[u32], future: &[u32]) -> usize {
    if past.is_empty() || future.is_empty() {
        return 0;
    }
    let index = SuffixArray::new(past);
    let sa = index.suffixes();
    let (mut lo, mut hi) = (0, sa.len());
    for (depth, &c) in future.iter().enumerate() {
        // Suffixes in sa[lo..hi] share future[..depth]; they are sorted by the
        // symbol at `depth`, with exhausted suffixes first.
        let key = |&i: &usize| past.get(i + depth).copied();
        let range = &sa[lo..hi];
        let start = range.partition_point(|i| key(i) < Some(c));
        let end = range.partition_point(|i| key(i) <= Some(c));
        if start == end {
            return depth;
        }
        hi = lo + end;
        lo += start;
    }
    future.len()
}

/// Waiting time of `w` looking backwards from `anchor`: the smallest shift
/// `i >= 1` with `window[anchor - i .. anchor - i + k] == w`.
///
/// With a cap the trimmed value `min(R, cap)` is returned, and the search
/// stops after shift `cap - 1`. Without a match inside the window (and
/// before the cap) the sample is marked truncated and carries the number of
/// shifts searched.
pub fn waiting_time(
    window: &Sequence,
    anchor: usize,
    w: &[u32],
    cap: Option<u64>,
) -> Result<RecurrenceSample> {
    waiting_time_in(window.symbols(), anchor, w, cap)
}

pub fn waiting_time_in(
    window: &[u32],
    anchor: usize,
    w: &[u32],
    cap: Option<u64>,
) -> Result<RecurrenceSample> {
    let k = w.len();
    if k == 0 {
        return Err(Error::input("waiting time needs a non-empty word"));
    }
    if anchor + k > window.len() {
        return Err(Error::input(format!(
            "anchored block [{anchor}, {}) exceeds window of length {}",
            anchor + k,
            window.len()
        )));
    }
    if anchor == 0 {
        return Err(Error::input("anchor 0 leaves no past to search"));
    }
    if cap == Some(0) {
        return Err(Error::input("cap must be positive"));
    }
    let available = anchor as u64;
    let limit = match cap {
        Some(c) => available.min(c - 1),
        None => available,
    };
    for i in 1..=limit {
        let start = anchor - i as usize;
        if &window[start..start + k] == w {
            return Ok(RecurrenceSample {
                value: i,
                trimmed_cap: cap,
                truncated: false,
            });
        }
    }
    Ok(match cap {
        Some(c) if limit == c - 1 => RecurrenceSample {
            value: c,
            trimmed_cap: cap,
            truncated: false,
        },
        _ => RecurrenceSample {
            value: available,
            trimmed_cap: cap,
            truncated: true,
        },
    })
}

/// Recurrence time `R_k` of the block anchored at `anchor`; when `trimmed`
/// the cap is `N(k) = alphabet_size^k` and the result is `S_k`.
pub fn recurrence_time(
    window: &Sequence,
    anchor: usize,
    k: usize,
    trimmed: bool,
) -> Result<RecurrenceSample> {
    if k == 0 || anchor + k > window.len() {
        return Err(Error::input(format!(
            "block of length {k} at {anchor} does not fit window of length {}",
            window.len()
        )));
    }
    let cap = trimmed.then(|| block_count(window.alphabet_size(), k));
    let w = &window.symbols()[anchor..anchor + k];
    waiting_time_in(window.symbols(), anchor, w, cap)
}

/// `N(k) = alphabet_size^k`, saturating at `u64::MAX`.
pub fn block_count(alphabet_size: u32, k: usize) -> u64 {
    let exp = u32::try_from(k).unwrap_or(u32::MAX);
    u64::from(alphabet_size)
        .checked_pow(exp)
        .unwrap_or(u64::MAX)
}
