//! Suffix array by prefix doubling with counting sort, LCP array by Kasai's
//! algorithm.

/// Suffix array of a symbol string with its LCP array.
///
/// `lcp[r]` is the length of the longest common prefix of the suffixes at
/// ranks `r - 1` and `r`; `lcp[0] = 0`. A proper prefix sorts before any
/// extension of it.
#[derive(Debug, Clone)]
pub struct SuffixArray {
    sa: Vec<usize>,
    lcp: Vec<usize>,
}

impl SuffixArray {
    pub fn new(text: &[u32]) -> Self {
        let sa = build_suffix_array(text);
        let lcp = build_lcp(text, &sa);
        SuffixArray { sa, lcp }
    }

    pub fn suffixes(&self) -> &[usize] {
        &self.sa
    }

    pub fn lcp(&self) -> &[usize] {
        &self.lcp
    }

    pub fn len(&self) -> usize {
        self.sa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sa.is_empty()
    }

    pub fn max_lcp(&self) -> usize {
        self.lcp.iter().copied().max().unwrap_or(0)
    }

    /// Number of distinct length-`k` substrings. Occurrences of one `k`-block
    /// form a contiguous rank range, so each block is counted once at its
    /// first rank.
    pub fn distinct_blocks(&self, k: usize) -> usize {
        let n = self.sa.len();
        if k == 0 {
            return 1;
        }
        if k > n {
            return 0;
        }
        self.sa
            .iter()
            .zip(&self.lcp)
            .enumerate()
            .filter(|&(r, (&start, &lcp))| n - start >= k && (r == 0 || lcp < k))
            .count()
    }
}

fn build_suffix_array(s: &[u32]) -> Vec<usize> {
    let n = s.len();
    let mut sa: Vec<usize> = (0..n).collect();
    if n <= 1 {
        return sa;
    }
    sa.sort_by_key(|&i| s[i]);
    let mut rank = vec![0usize; n];
    for idx in 1..n {
        let (a, b) = (sa[idx - 1], sa[idx]);
        rank[b] = rank[a] + usize::from(s[a] != s[b]);
    }
    let mut classes = rank[sa[n - 1]] + 1;
    let mut order = vec![0usize; n];
    let mut next_rank = vec![0usize; n];
    let mut count = Vec::with_capacity(n);
    let mut h = 1;
    while classes < n {
        // Order by the second half: suffixes without one come first.
        let mut p = 0;
        for i in n - h..n {
            order[p] = i;
            p += 1;
        }
        for &j in &sa {
            if j >= h {
                order[p] = j - h;
                p += 1;
            }
        }
        // Stable counting sort by the first half.
        count.clear();
        count.resize(classes, 0usize);
        for &r in &rank {
            count[r] += 1;
        }
        let mut total = 0;
        for c in count.iter_mut() {
            total += *c;
            *c = total;
        }
        for &i in order.iter().rev() {
            let r = rank[i];
            count[r] -= 1;
            sa[count[r]] = i;
        }
        let second = |i: usize| if i + h < n { Some(rank[i + h]) } else { None };
        next_rank[sa[0]] = 0;
        for idx in 1..n {
            let (a, b) = (sa[idx - 1], sa[idx]);
            let same = rank[a] == rank[b] && second(a) == second(b);
            next_rank[b] = next_rank[a] + usize::from(!same);
        }
        classes = next_rank[sa[n - 1]] + 1;
        std::mem::swap(&mut rank, &mut next_rank);
        h *= 2;
    }
    sa
}

fn build_lcp(s: &[u32], sa: &[usize]) -> Vec<usize> {
    let n = s.len();
    let mut lcp = vec![0usize; n];
    if n == 0 {
        return lcp;
    }
    let mut inverse = vec![0usize; n];
    for (r, &i) in sa.iter().enumerate() {
        inverse[i] = r;
    }
    let mut h = 0usize;
    for i in 0..n {
        let r = inverse[i];
        if r == 0 {
            h = 0;
            continue;
        }
        let j = sa[r - 1];
        while i + h < n && j + h < n && s[i + h] == s[j + h] {
            h += 1;
        }
        lcp[r] = h;
        h = h.saturating_sub(1);
    }
    lcp
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_sa(s: &[u32]) -> Vec<usize> {
        let mut sa: Vec<usize> = (0..s.len()).collect();
        sa.sort_by(|&a, &b| s[a..].cmp(&s[b..]));
        sa
    }

    #[test]
    fn banana() {
        let s: Vec<u32> = b"banana".iter().map(|&b| b as u32).collect();
        let sa = SuffixArray::new(&s);
        assert_eq!(sa.suffixes(), &[5, 3, 1, 0, 4, 2]);
        assert_eq!(sa.lcp(), &[0, 1, 3, 0, 0, 2]);
        assert_eq!(sa.max_lcp(), 3);
    }

    #[test]
    fn tiny_inputs() {
        assert!(SuffixArray::new(&[]).is_empty());
        assert_eq!(SuffixArray::new(&[7]).suffixes(), &[0]);
        assert_eq!(SuffixArray::new(&[1, 1, 1]).suffixes(), &[2, 1, 0]);
    }

    proptest! {
        #[test]
        fn matches_sorted_suffixes(s in prop::collection::vec(0u32..4, 0..120)) {
            let sa = SuffixArray::new(&s);
            let expected = naive_sa(&s);
            prop_assert_eq!(sa.suffixes(), expected.as_slice());
            for r in 1..s.len() {
                let (a, b) = (sa.suffixes()[r - 1], sa.suffixes()[r]);
                let l = s[a..].iter().zip(&s[b..]).take_while(|(x, y)| x == y).count();
                prop_assert_eq!(sa.lcp()[r], l);
            }
        }
    }
}
