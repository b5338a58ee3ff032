//! Online suffix automaton, used for `L` on every prefix in linear time.

struct State {
    len: usize,
    link: Option<usize>,
    // sorted by symbol
    next: Vec<(u32, usize)>,
}

impl State {
    fn go(&self, y: u32) -> Option<usize> {
        self.next
            .binary_search_by_key(&y, |&(s, _)| s)
            .ok()
            .map(|i| self.next[i].1)
    }

    fn set(&mut self, y: u32, to: usize) {
        match self.next.binary_search_by_key(&y, |&(s, _)| s) {
            Ok(i) => self.next[i].1 = to,
            Err(i) => self.next.insert(i, (y, to)),
        }
    }
}

pub(crate) struct SuffixAutomaton {
    states: Vec<State>,
    last: usize,
}

impl SuffixAutomaton {
    pub(crate) fn with_capacity(n: usize) -> Self {
        let mut states = Vec::with_capacity(2 * n + 1);
        states.push(State {
            len: 0,
            link: None,
            next: Vec::new(),
        });
        SuffixAutomaton { states, last: 0 }
    }

    /// Appends `y` and returns the length of the longest suffix of the new
    /// string that also ends at an earlier position.
    pub(crate) fn push(&mut self, y: u32) -> usize {
        let cur = self.states.len();
        self.states.push(State {
            len: self.states[self.last].len + 1,
            link: None,
            next: Vec::new(),
        });
        let mut p = Some(self.last);
        while let Some(q) = p {
            if self.states[q].go(y).is_some() {
                break;
            }
            self.states[q].set(y, cur);
            p = self.states[q].link;
        }
        let link = match p {
            None => 0,
            Some(p) => {
                let q = self.states[p].go(y).expect("transition present");
                if self.states[p].len + 1 == self.states[q].len {
                    q
                } else {
                    let clone = self.states.len();
                    self.states.push(State {
                        len: self.states[p].len + 1,
                        link: self.states[q].link,
                        next: self.states[q].next.clone(),
                    });
                    let mut r = Some(p);
                    while let Some(s) = r {
                        if self.states[s].go(y) != Some(q) {
                            break;
                        }
                        self.states[s].set(y, clone);
                        r = self.states[s].link;
                    }
                    self.states[q].link = Some(clone);
                    clone
                }
            }
        };
        self.states[cur].link = Some(link);
        self.last = cur;
        self.states[link].len
    }
}

/// `out[n] = L(x[..n])` for every `n` in `0..=x.len()`.
pub(crate) fn prefix_repetitions(x: &[u32]) -> Vec<usize> {
    let mut automaton = SuffixAutomaton::with_capacity(x.len());
    let mut out = Vec::with_capacity(x.len() + 1);
    out.push(0);
    let mut best = 0;
    for &y in x {
        best = best.max(automaton.push(y));
        out.push(best);
    }
    out
}
