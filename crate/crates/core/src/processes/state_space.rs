//! Finite-state representation shared by every model with exact
//! probabilities.
//!
//! A model is compiled to a hidden Markov source: a hidden chain `S_t` with
//! law `initial` at time 1 and row-stochastic `transition`, and symbols drawn
//! from `emission[S_t]`. IID, Markov, periodic and dithered sources are all
//! special cases.

use rand::Rng as _;

use crate::seed::Rng;
use crate::{Error, Result};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::config("matrix rows have different lengths"));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: usize) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `v^T M`.
    pub fn left_mul(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.cols];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0.0 {
                continue;
            }
            for (o, m) in out.iter_mut().zip(self.row(i)) {
                *o += vi * m;
            }
        }
        out
    }

    /// `M v`.
    pub fn right_mul(&self, v: &[f64]) -> Vec<f64> {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }
}

/// Inverse-CDF sampler over a finite distribution.
#[derive(Debug, Clone)]
struct Categorical {
    cdf: Vec<f64>,
}

impl Categorical {
    fn new(probs: &[f64]) -> Self {
        let mut acc = 0.0;
        let cdf = probs
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        Categorical { cdf }
    }

    fn sample(&self, rng: &mut Rng) -> usize {
        let u: f64 = rng.gen::<f64>() * self.cdf.last().copied().unwrap_or(1.0);
        let i = self.cdf.partition_point(|&c| c <= u);
        // skip trailing zero-mass categories hit by rounding
        let mut i = i.min(self.cdf.len() - 1);
        while i > 0 && self.cdf[i] == self.cdf[i - 1] {
            i -= 1;
        }
        i
    }
}

/// Compiled hidden Markov source.
#[derive(Debug, Clone)]
pub struct StateSpace {
    initial: Vec<f64>,
    transition: Matrix,
    emission: Matrix,
    stationary: bool,
    initial_sampler: Categorical,
    transition_samplers: Vec<Categorical>,
    reverse_samplers: Option<Vec<Categorical>>,
    emission_samplers: Vec<Categorical>,
}

impl StateSpace {
    pub fn new(initial: Vec<f64>, transition: Matrix, emission: Matrix, stationary: bool) -> Self {
        let states = initial.len();
        assert_eq!(transition.rows(), states);
        assert_eq!(transition.cols(), states);
        assert_eq!(emission.rows(), states);
        let transition_samplers = (0..states)
            .map(|s| Categorical::new(transition.row(s)))
            .collect();
        let emission_samplers = (0..states)
            .map(|s| Categorical::new(emission.row(s)))
            .collect();
        let reverse_samplers = stationary.then(|| {
            (0..states)
                .map(|s| {
                    // P(S_{t-1} = r | S_t = s) = pi(r) T(r, s) / pi(s)
                    let row: Vec<f64> = if initial[s] > 0.0 {
                        (0..states)
                            .map(|r| initial[r] * transition.get(r, s) / initial[s])
                            .collect()
                    } else {
                        initial.clone()
                    };
                    Categorical::new(&row)
                })
                .collect()
        });
        StateSpace {
            initial_sampler: Categorical::new(&initial),
            initial,
            transition,
            emission,
            stationary,
            transition_samplers,
            reverse_samplers,
            emission_samplers,
        }
    }

    pub fn states(&self) -> usize {
        self.initial.len()
    }

    pub fn alphabet_size(&self) -> usize {
        self.emission.cols()
    }

    pub fn initial(&self) -> &[f64] {
        &self.initial
    }

    pub fn transition(&self) -> &Matrix {
        &self.transition
    }

    pub fn emission(&self) -> &Matrix {
        &self.emission
    }

    pub fn is_stationary(&self) -> bool {
        self.stationary
    }

    /// States with positive mass under the law of `S_1`.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.initial
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > 0.0)
            .map(|(s, _)| s)
    }

    /// Law of the next state given a law `rho` of the current one.
    pub fn advance(&self, rho: &[f64]) -> Vec<f64> {
        self.transition.left_mul(rho)
    }

    /// `alpha'(s) = mu(s) E(s, y)` where `mu` is the law of the state that
    /// emits `y`. Returns the unnormalised vector.
    pub fn emit(&self, mu: &[f64], y: u32) -> Vec<f64> {
        let y = y as usize;
        if y >= self.alphabet_size() {
            return vec![0.0; mu.len()];
        }
        mu.iter()
            .enumerate()
            .map(|(s, &m)| m * self.emission.get(s, y))
            .collect()
    }

    /// Log-probability of emitting `word` when the first emitting state has
    /// law `mu`, together with the filtered law of the last emitting state.
    /// Scaled forward recursion; `None` when the word has probability zero.
    pub fn forward(&self, mu: &[f64], word: &[u32]) -> Option<(f64, Vec<f64>)> {
        let mut log_p = 0.0;
        let mut current = mu.to_vec();
        let mut filtered = mu.to_vec();
        for (t, &y) in word.iter().enumerate() {
            if t > 0 {
                current = self.advance(&filtered);
            }
            let alpha = self.emit(&current, y);
            let mass: f64 = alpha.iter().sum();
            if mass <= 0.0 {
                return None;
            }
            log_p += mass.ln();
            filtered = alpha.into_iter().map(|a| a / mass).collect();
        }
        Some((log_p, filtered))
    }

    /// `log P(X_1^n = word)` under the law of `S_1`.
    pub fn block_log_prob(&self, word: &[u32]) -> f64 {
        self.forward(&self.initial, word)
            .map_or(f64::NEG_INFINITY, |(lp, _)| lp)
    }

    /// Law of the state emitting the first symbol after `context`, together
    /// with `log P(context)`. `None` for zero-probability contexts.
    pub fn predictive_after(&self, context: &[u32]) -> Option<(f64, Vec<f64>)> {
        if context.is_empty() {
            return Some((0.0, self.initial.clone()));
        }
        let (lp, filtered) = self.forward(&self.initial, context)?;
        Some((lp, self.advance(&filtered)))
    }

    /// Law of `S_1` conditioned on a state `s` at time 0.
    pub fn after_state(&self, s: usize) -> Vec<f64> {
        self.transition.row(s).to_vec()
    }

    /// Posterior of the state emitting `word[0]` given the whole word.
    pub fn first_state_posterior(&self, word: &[u32]) -> Option<Vec<f64>> {
        let states = self.states();
        let mut beta = vec![1.0; states];
        for &y in word.iter().skip(1).rev() {
            let weighted = self.emit(&beta, y);
            beta = self.transition.right_mul(&weighted);
            let mass: f64 = beta.iter().sum();
            if mass <= 0.0 {
                return None;
            }
            beta.iter_mut().for_each(|b| *b /= mass);
        }
        let first = *word.first()?;
        let post: Vec<f64> = self
            .emit(&self.initial, first)
            .into_iter()
            .zip(&beta)
            .map(|(a, b)| a * b)
            .collect();
        let mass: f64 = post.iter().sum();
        (mass > 0.0).then(|| post.into_iter().map(|p| p / mass).collect())
    }

    pub fn sample_initial_state(&self, rng: &mut Rng) -> usize {
        self.initial_sampler.sample(rng)
    }

    pub fn sample_state_from(&self, law: &[f64], rng: &mut Rng) -> usize {
        Categorical::new(law).sample(rng)
    }

    pub fn sample_next_state(&self, s: usize, rng: &mut Rng) -> usize {
        self.transition_samplers[s].sample(rng)
    }

    pub fn sample_symbol(&self, s: usize, rng: &mut Rng) -> u32 {
        self.emission_samplers[s].sample(rng) as u32
    }

    /// Symbols emitted at times `1..=n` starting from `first_state` at time 1.
    /// Returns the symbols and the state at time `n` (or `first_state` when
    /// `n == 0`).
    pub fn sample_forward(&self, first_state: usize, n: usize, rng: &mut Rng) -> (Vec<u32>, usize) {
        let mut out = Vec::with_capacity(n);
        let mut s = first_state;
        for t in 0..n {
            if t > 0 {
                s = self.sample_next_state(s, rng);
            }
            out.push(self.sample_symbol(s, rng));
        }
        (out, s)
    }

    pub fn sample(&self, n: usize, rng: &mut Rng) -> Vec<u32> {
        if n == 0 {
            return Vec::new();
        }
        let s = self.sample_initial_state(rng);
        self.sample_forward(s, n, rng).0
    }

    /// One step back in time under the stationary reversed chain.
    pub fn sample_previous_state(&self, s: usize, rng: &mut Rng) -> Result<usize> {
        let rev = self
            .reverse_samplers
            .as_ref()
            .ok_or_else(|| Error::capability("past sampling requires a stationary model"))?;
        Ok(rev[s].sample(rng))
    }

    /// Visits every word of length `n` with positive probability when the
    /// first emitting state has law `mu`. The callback gets the word and its
    /// probability. Fails once more than `budget` words have been produced.
    pub fn for_each_block(
        &self,
        mu: &[f64],
        n: usize,
        budget: u64,
        mut visit: impl FnMut(&[u32], f64),
    ) -> Result<u64> {
        if n == 0 {
            visit(&[], 1.0);
            return Ok(1);
        }
        let alphabet = self.alphabet_size() as u32;
        let mut word = vec![0u32; n];
        // alphas[d] is the unnormalised forward vector after word[..d].
        let mut alphas: Vec<Vec<f64>> = vec![Vec::new(); n + 1];
        let mut next_symbol = vec![0u32; n];
        let mut depth = 0usize;
        let mut produced = 0u64;
        loop {
            if next_symbol[depth] >= alphabet {
                if depth == 0 {
                    break;
                }
                depth -= 1;
                continue;
            }
            let y = next_symbol[depth];
            next_symbol[depth] += 1;
            let prior = if depth == 0 {
                mu.to_vec()
            } else {
                self.advance(&alphas[depth])
            };
            let alpha = self.emit(&prior, y);
            let mass: f64 = alpha.iter().sum();
            if mass <= 0.0 {
                continue;
            }
            word[depth] = y;
            if depth + 1 == n {
                produced += 1;
                if produced > budget {
                    return Err(Error::capability(format!(
                        "block enumeration at length {n} exceeds budget of {budget} blocks"
                    )));
                }
                visit(&word, mass);
            } else {
                alphas[depth + 1] = alpha;
                depth += 1;
                next_symbol[depth] = 0;
            }
        }
        Ok(produced)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed;

    fn two_state() -> StateSpace {
        let t = Matrix::from_rows(&[vec![0.7, 0.3], vec![0.4, 0.6]]).unwrap();
        let pi = vec![4.0 / 7.0, 3.0 / 7.0];
        StateSpace::new(pi, t, Matrix::identity(2), true)
    }

    #[test]
    fn matrix_power() {
        let t = Matrix::from_rows(&[vec![0.7, 0.3], vec![0.3, 0.7]]).unwrap();
        let t2 = t.pow(2);
        assert!((t2.get(0, 0) - 0.58).abs() < 1e-15);
        assert!((t2.get(0, 1) - 0.42).abs() < 1e-15);
        assert_eq!(t.pow(0), Matrix::identity(2));
    }

    #[test]
    fn enumeration_sums_to_one() {
        let ss = two_state();
        let mut total = 0.0;
        let count = ss
            .for_each_block(ss.initial(), 6, 1 << 20, |_, p| total += p)
            .unwrap();
        assert_eq!(count, 64);
        assert!((total - 1.0).abs() < 1e-12);
        assert!(ss.for_each_block(ss.initial(), 6, 10, |_, _| ()).is_err());
    }

    #[test]
    fn forward_matches_product() {
        let ss = two_state();
        let lp = ss.block_log_prob(&[0, 0, 1]);
        let direct = (4.0f64 / 7.0 * 0.7 * 0.3).ln();
        assert!((lp - direct).abs() < 1e-14);
    }

    #[test]
    fn categorical_skips_zero_mass() {
        let c = Categorical::new(&[0.5, 0.0, 0.5]);
        let mut rng = seed::rng(3);
        for _ in 0..10_000 {
            assert_ne!(c.sample(&mut rng), 1);
        }
    }

    #[test]
    fn reversed_chain_preserves_pairs() {
        // Backward sampling from S_1 ~ pi reproduces the joint law of
        // (S_0, S_1) = pi(r) T(r, s).
        let ss = two_state();
        let mut rng = seed::rng(11);
        let mut counts = [[0u32; 2]; 2];
        let reps = 200_000;
        for _ in 0..reps {
            let s1 = ss.sample_initial_state(&mut rng);
            let s0 = ss.sample_previous_state(s1, &mut rng).unwrap();
            counts[s0][s1] += 1;
        }
        for r in 0..2 {
            for s in 0..2 {
                let p = ss.initial()[r] * ss.transition().get(r, s);
                let se = (p * (1.0 - p) / reps as f64).sqrt();
                let freq = counts[r][s] as f64 / reps as f64;
                assert!((freq - p).abs() < 4.0 * se, "{r}{s}: {freq} vs {p}");
            }
        }
    }
}
