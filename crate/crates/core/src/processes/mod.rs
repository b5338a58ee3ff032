//! Stochastic source models.
//!
//! Every kind except [`ProcessModel::EmpiricalPermutation`] compiles to a
//! [`StateSpace`], which provides seeded sampling (forward in time and, for
//! stationary models, backward via the reversed chain) and exact block
//! probabilities by the forward recursion.

mod diagnostics;
mod state_space;

use std::path::Path;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

pub use diagnostics::{doeblin_check, finite_energy_diagnostics, hmm_finite_energy_constant, ModelDiagnostics};
pub use state_space::{Matrix, StateSpace};

use crate::seed::{self, Rng};
use crate::strstat::Sequence;
use crate::{Error, Result};

const ROW_TOLERANCE: f64 = 1e-12;
const STATIONARY_TOLERANCE: f64 = 1e-9;
const SQUARING_STEPS: usize = 64;
const STATIONARY_RESIDUAL: f64 = 1e-12;

fn yes() -> bool {
    true
}

/// A stochastic source over a finite alphabet.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProcessModel {
    /// Independent draws from `probs`.
    Iid { probs: Vec<f64> },
    /// First-order chain whose states are the symbols.
    Markov {
        transition: Vec<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        initial: Option<Vec<f64>>,
        #[serde(default = "yes")]
        stationary: bool,
    },
    /// Hidden chain over `transition.len()` states; state `s` emits symbol
    /// `y` with probability `emission[s][y]`.
    HiddenMarkov {
        transition: Vec<Vec<f64>>,
        emission: Vec<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        initial: Option<Vec<f64>>,
        #[serde(default = "yes")]
        stationary: bool,
    },
    /// `X_i = W_i + Z_i mod alphabet_size` with `W` drawn from `base` and
    /// `Z` IID from `dither`; requires `max dither <= c < 1`.
    UniformlyDithered {
        base: Box<ProcessModel>,
        dither: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        c: Option<f64>,
    },
    /// The period string repeated forever, started at a uniformly random phase.
    PeriodicRandomPhase { period: Vec<u32>, alphabet_size: u32 },
    /// A uniformly random permutation of a fixed source sequence.
    EmpiricalPermutation { source: Vec<u32>, alphabet_size: u32 },
}

impl ProcessModel {
    pub fn iid(probs: Vec<f64>) -> Result<Self> {
        let m = ProcessModel::Iid { probs };
        m.validate()?;
        Ok(m)
    }

    pub fn iid_uniform(alphabet_size: usize) -> Self {
        ProcessModel::Iid {
            probs: vec![1.0 / alphabet_size as f64; alphabet_size],
        }
    }

    pub fn markov(transition: Vec<Vec<f64>>) -> Result<Self> {
        let m = ProcessModel::Markov {
            transition,
            initial: None,
            stationary: true,
        };
        m.validate()?;
        Ok(m)
    }

    /// Symmetric two-state chain that keeps its state with probability `stay`.
    pub fn two_state_markov(stay: f64) -> Self {
        ProcessModel::Markov {
            transition: vec![vec![stay, 1.0 - stay], vec![1.0 - stay, stay]],
            initial: None,
            stationary: true,
        }
    }

    pub fn hidden_markov(transition: Vec<Vec<f64>>, emission: Vec<Vec<f64>>) -> Result<Self> {
        let m = ProcessModel::HiddenMarkov {
            transition,
            emission,
            initial: None,
            stationary: true,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn dithered(base: ProcessModel, dither: Vec<f64>) -> Result<Self> {
        let m = ProcessModel::UniformlyDithered {
            base: Box::new(base),
            dither,
            c: None,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn periodic(period: Vec<u32>, alphabet_size: u32) -> Result<Self> {
        let m = ProcessModel::PeriodicRandomPhase {
            period,
            alphabet_size,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn permutation(source: &Sequence) -> Self {
        ProcessModel::EmpiricalPermutation {
            source: source.symbols().to_vec(),
            alphabet_size: source.alphabet_size(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            ProcessModel::Iid { .. } => "iid",
            ProcessModel::Markov { .. } => "markov",
            ProcessModel::HiddenMarkov { .. } => "hidden_markov",
            ProcessModel::UniformlyDithered { .. } => "uniformly_dithered",
            ProcessModel::PeriodicRandomPhase { .. } => "periodic_random_phase",
            ProcessModel::EmpiricalPermutation { .. } => "empirical_permutation",
        }
    }

    pub fn alphabet_size(&self) -> usize {
        match self {
            ProcessModel::Iid { probs } => probs.len(),
            ProcessModel::Markov { transition, .. } => transition.len(),
            ProcessModel::HiddenMarkov { emission, .. } => emission.first().map_or(0, Vec::len),
            ProcessModel::UniformlyDithered { dither, .. } => dither.len(),
            ProcessModel::PeriodicRandomPhase { alphabet_size, .. }
            | ProcessModel::EmpiricalPermutation { alphabet_size, .. } => *alphabet_size as usize,
        }
    }

    /// Whether exact block probabilities are available.
    pub fn has_exact_probabilities(&self) -> bool {
        !matches!(self, ProcessModel::EmpiricalPermutation { .. })
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ProcessModel::Iid { probs } => check_distribution("probs", probs),
            ProcessModel::Markov {
                transition,
                initial,
                stationary,
            } => {
                check_stochastic("transition", transition)?;
                if transition.first().is_some_and(|r| r.len() != transition.len()) {
                    return Err(Error::config("transition matrix must be square"));
                }
                check_initial(transition, initial.as_deref(), *stationary)
            }
            ProcessModel::HiddenMarkov {
                transition,
                emission,
                initial,
                stationary,
            } => {
                check_stochastic("transition", transition)?;
                if transition.first().is_some_and(|r| r.len() != transition.len()) {
                    return Err(Error::config("transition matrix must be square"));
                }
                check_stochastic("emission", emission)?;
                if emission.len() != transition.len() {
                    return Err(Error::config(format!(
                        "emission has {} rows but there are {} hidden states",
                        emission.len(),
                        transition.len()
                    )));
                }
                check_initial(transition, initial.as_deref(), *stationary)
            }
            ProcessModel::UniformlyDithered { base, dither, c } => {
                base.validate()?;
                if !base.has_exact_probabilities() {
                    return Err(Error::config("dithered base must have exact probabilities"));
                }
                check_distribution("dither", dither)?;
                if base.alphabet_size() != dither.len() {
                    return Err(Error::config(format!(
                        "dither has {} entries but base alphabet has {} symbols",
                        dither.len(),
                        base.alphabet_size()
                    )));
                }
                let max = dither.iter().copied().fold(0.0, f64::max);
                let bound = c.unwrap_or(max);
                if max > bound || bound >= 1.0 {
                    return Err(Error::config(format!(
                        "dither needs max P(Z=a) <= c < 1, got max {max} and c {bound}"
                    )));
                }
                Ok(())
            }
            ProcessModel::PeriodicRandomPhase {
                period,
                alphabet_size,
            } => {
                if period.is_empty() {
                    return Err(Error::config("period must be non-empty"));
                }
                Sequence::new(period.clone(), *alphabet_size)
                    .map(|_| ())
                    .map_err(|e| Error::config(e.to_string()))
            }
            ProcessModel::EmpiricalPermutation {
                source,
                alphabet_size,
            } => Sequence::new(source.clone(), *alphabet_size)
                .map(|_| ())
                .map_err(|e| Error::config(e.to_string())),
        }
    }

    /// Compiles the model to its hidden Markov representation.
    pub fn compile(&self) -> Result<StateSpace> {
        self.validate()?;
        match self {
            ProcessModel::Iid { probs } => Ok(StateSpace::new(
                vec![1.0],
                Matrix::identity(1),
                Matrix::from_rows(&[probs.clone()])?,
                true,
            )),
            ProcessModel::Markov {
                transition,
                initial,
                stationary,
            } => {
                let t = Matrix::from_rows(transition)?;
                let pi = match initial {
                    Some(p) => p.clone(),
                    None => stationary_distribution(&t)?,
                };
                let n = t.rows();
                Ok(StateSpace::new(pi, t, Matrix::identity(n), *stationary))
            }
            ProcessModel::HiddenMarkov {
                transition,
                emission,
                initial,
                stationary,
            } => {
                let t = Matrix::from_rows(transition)?;
                let pi = match initial {
                    Some(p) => p.clone(),
                    None => stationary_distribution(&t)?,
                };
                Ok(StateSpace::new(pi, t, Matrix::from_rows(emission)?, *stationary))
            }
            ProcessModel::UniformlyDithered { base, dither, .. } => {
                let inner = base.compile()?;
                let a = dither.len();
                let mut e = Matrix::zeros(inner.states(), a);
                for s in 0..inner.states() {
                    for w in 0..a {
                        let pw = inner.emission().get(s, w);
                        if pw == 0.0 {
                            continue;
                        }
                        for (z, &pz) in dither.iter().enumerate() {
                            let y = (w + z) % a;
                            e.set(s, y, e.get(s, y) + pw * pz);
                        }
                    }
                }
                Ok(StateSpace::new(
                    inner.initial().to_vec(),
                    inner.transition().clone(),
                    e,
                    inner.is_stationary(),
                ))
            }
            ProcessModel::PeriodicRandomPhase {
                period,
                alphabet_size,
            } => {
                let p = period.len();
                let mut t = Matrix::zeros(p, p);
                let mut e = Matrix::zeros(p, *alphabet_size as usize);
                for (phase, &sym) in period.iter().enumerate() {
                    t.set(phase, (phase + 1) % p, 1.0);
                    e.set(phase, sym as usize, 1.0);
                }
                Ok(StateSpace::new(vec![1.0 / p as f64; p], t, e, true))
            }
            ProcessModel::EmpiricalPermutation { .. } => Err(Error::capability(
                "empirical_permutation has no finite-state representation",
            )),
        }
    }

    /// Draws `X_1^n`. Deterministic in `(model, n, seed)`.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Sequence> {
        let mut rng = seed::rng(seed);
        self.sample_with(n, &mut rng)
    }

    pub fn sample_with(&self, n: usize, rng: &mut Rng) -> Result<Sequence> {
        let alphabet = self.alphabet_size() as u32;
        if let ProcessModel::EmpiricalPermutation { source, .. } = self {
            self.validate()?;
            if n > source.len() {
                return Err(Error::input(format!(
                    "cannot draw {n} symbols from a permutation of {} symbols",
                    source.len()
                )));
            }
            let mut symbols = source.clone();
            symbols.shuffle(rng);
            symbols.truncate(n);
            return Sequence::new(symbols, alphabet);
        }
        let space = self.compile()?;
        Sequence::new(space.sample(n, rng), alphabet)
    }

    /// Exact `log P(X_1^n = w)`; negative infinity for impossible blocks.
    pub fn block_log_prob(&self, w: &[u32]) -> Result<f64> {
        Ok(self.compile()?.block_log_prob(w))
    }

    /// Exact `log P(X_{m+1}^{m+|w|} = w | X_1^m = context)`.
    pub fn conditional_block_log_prob(&self, w: &[u32], context: &[u32]) -> Result<f64> {
        conditional_block_log_prob_in(&self.compile()?, w, context)
    }
}

pub(crate) fn conditional_block_log_prob_in(space: &StateSpace, w: &[u32], context: &[u32]) -> Result<f64> {
    let (_, mu) = space
        .predictive_after(context)
        .ok_or_else(|| Error::domain("conditioning context has probability zero"))?;
    Ok(space
        .forward(&mu, w)
        .map_or(f64::NEG_INFINITY, |(lp, _)| lp))
}

/// Stationary law of a row-stochastic matrix by power iteration on the lazy
/// chain `(I + T) / 2`, which has the same fixed points and no periodicity.
pub fn stationary_distribution(t: &Matrix) -> Result<Vec<f64>> {
    let n = t.rows();
    // Repeated squaring of the lazy chain (I + T) / 2, applied to the
    // uniform law.
    let mut power = Matrix::identity(n);
    for r in 0..n {
        for c in 0..n {
            power.set(r, c, 0.5 * (power.get(r, c) + t.get(r, c)));
        }
    }
    let mut v = vec![1.0 / n as f64; n];
    for _ in 0..SQUARING_STEPS {
        let next = power.left_mul(&v);
        let total: f64 = next.iter().sum();
        let next: Vec<f64> = next.into_iter().map(|x| x / total).collect();
        let diff = next
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        v = next;
        if diff == 0.0 {
            break;
        }
        power = power.mul(&power);
    }
    let tv = t.left_mul(&v);
    let residual = tv
        .iter()
        .zip(&v)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if residual > STATIONARY_RESIDUAL {
        return Err(Error::config(format!(
            "stationary law did not converge (residual {residual:e})"
        )));
    }
    Ok(v)
}

fn check_distribution(name: &str, p: &[f64]) -> Result<()> {
    if p.is_empty() {
        return Err(Error::config(format!("{name} is empty")));
    }
    if let Some(x) = p.iter().find(|x| !x.is_finite() || **x < 0.0) {
        return Err(Error::config(format!("{name} has invalid entry {x}")));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > ROW_TOLERANCE {
        return Err(Error::config(format!("{name} sums to {total}, not 1")));
    }
    Ok(())
}

fn check_stochastic(name: &str, rows: &[Vec<f64>]) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::config(format!("{name} has no rows")));
    }
    let cols = rows[0].len();
    for (i, r) in rows.iter().enumerate() {
        if r.len() != cols {
            return Err(Error::config(format!("{name} row {i} has the wrong length")));
        }
        check_distribution(&format!("{name} row {i}"), r)?;
    }
    Ok(())
}

fn check_initial(transition: &[Vec<f64>], initial: Option<&[f64]>, stationary: bool) -> Result<()> {
    let Some(init) = initial else {
        return if stationary {
            Ok(())
        } else {
            Err(Error::config("a non-stationary model needs an explicit initial law"))
        };
    };
    check_distribution("initial", init)?;
    if init.len() != transition.len() {
        return Err(Error::config("initial law has the wrong length"));
    }
    if stationary {
        let t = Matrix::from_rows(transition)?;
        let moved = t.left_mul(init);
        let err = moved
            .iter()
            .zip(init)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if err > STATIONARY_TOLERANCE {
            return Err(Error::config(format!(
                "initial law is not stationary (max deviation {err:.3e})"
            )));
        }
    }
    Ok(())
}

/// A model specification file: the model, an optional label and seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub model: ProcessModel,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl ModelSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: ModelSpec =
            serde_json::from_str(text).map_err(|e| Error::config(format!("model spec: {e}")))?;
        spec.model.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model spec serializes")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn label(&self) -> String {
        self.name
            .clone()
            .unwrap_or_else(|| self.model.kind_name().to_string())
    }
}

/// Models used by the default test and bound suites.
pub mod presets {
    use super::ProcessModel;

    pub fn fair_coin() -> ProcessModel {
        ProcessModel::iid_uniform(2)
    }

    /// The symmetric 0.7/0.3 chain.
    pub fn sticky_pair() -> ProcessModel {
        ProcessModel::two_state_markov(0.7)
    }

    pub fn three_state_hmm() -> ProcessModel {
        ProcessModel::HiddenMarkov {
            transition: vec![
                vec![0.8, 0.15, 0.05],
                vec![0.1, 0.7, 0.2],
                vec![0.25, 0.25, 0.5],
            ],
            emission: vec![
                vec![0.7, 0.2, 0.1],
                vec![0.1, 0.6, 0.3],
                vec![0.2, 0.2, 0.6],
            ],
            initial: None,
            stationary: true,
        }
    }

    /// A skewed binary chain observed through additive noise `Z` with
    /// `P(Z = 0) = 0.75`.
    pub fn dithered_chain() -> ProcessModel {
        ProcessModel::UniformlyDithered {
            base: Box::new(ProcessModel::Markov {
                transition: vec![vec![0.9, 0.1], vec![0.2, 0.8]],
                initial: None,
                stationary: true,
            }),
            dither: vec![0.75, 0.25],
            c: None,
        }
    }

    /// `0 1 2 … p-1` repeated, over an alphabet of size `p`.
    pub fn counting_cycle(p: u32) -> ProcessModel {
        ProcessModel::PeriodicRandomPhase {
            period: (0..p).collect(),
            alphabet_size: p,
        }
    }

    pub fn constant() -> ProcessModel {
        ProcessModel::Iid { probs: vec![1.0] }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn sample_examples() {
        let coin = presets::fair_coin();
        assert!(coin.sample(0, 1).unwrap().is_empty());
        let periodic = ProcessModel::periodic(vec![0, 1, 2], 3).unwrap();
        for seed in 0..10 {
            let s = periodic.sample(6, seed).unwrap();
            let start = s.symbols()[0] as usize;
            let expect: Vec<u32> = (0..6).map(|i| ((start + i) % 3) as u32).collect();
            assert_eq!(s.symbols(), expect.as_slice());
        }
    }

    #[test]
    fn sample_is_deterministic() {
        for model in [presets::sticky_pair(), presets::three_state_hmm(), presets::dithered_chain()] {
            assert_eq!(model.sample(500, 42).unwrap(), model.sample(500, 42).unwrap());
            assert_ne!(model.sample(500, 42).unwrap(), model.sample(500, 43).unwrap());
        }
    }

    #[test]
    fn markov_frequencies_match_stationary_law() {
        let model = ProcessModel::markov(vec![vec![0.9, 0.1], vec![0.3, 0.7]]).unwrap();
        // pi solves pi T = pi: pi_0 * 0.1 = pi_1 * 0.3
        let pi0 = 0.75;
        let n = 100_000;
        let mut ones = 0usize;
        for seed in 0..5 {
            let x = model.sample(n, seed).unwrap();
            ones += x.symbols().iter().filter(|&&s| s == 1).count();
        }
        let total = 5 * n;
        let freq0 = 1.0 - ones as f64 / total as f64;
        // Variance inflation for a chain with second eigenvalue 0.6: (1+0.6)/(1-0.6).
        let se = (pi0 * (1.0 - pi0) * 4.0 / total as f64).sqrt();
        assert!((freq0 - pi0).abs() < 3.0 * se, "{freq0}");
    }

    #[test]
    fn block_log_prob_examples() {
        let coin = presets::fair_coin();
        assert_abs_diff_eq!(coin.block_log_prob(&[0, 1]).unwrap(), 0.25f64.ln(), epsilon = 1e-15);
        let chain = presets::sticky_pair();
        assert_abs_diff_eq!(chain.block_log_prob(&[0, 0]).unwrap(), (0.5f64 * 0.7).ln(), epsilon = 1e-12);
        let periodic = ProcessModel::periodic(vec![0, 1], 2).unwrap();
        assert_eq!(periodic.block_log_prob(&[0, 0]).unwrap(), f64::NEG_INFINITY);
        assert!(ProcessModel::permutation(&Sequence::from_bytes(b"ab"))
            .block_log_prob(&[97])
            .unwrap_err()
            .is_capability());
    }

    #[test]
    fn conditional_examples() {
        let chain = presets::sticky_pair();
        let w = [1, 1, 0];
        assert_abs_diff_eq!(
            chain.conditional_block_log_prob(&w, &[]).unwrap(),
            chain.block_log_prob(&w).unwrap(),
            epsilon = 1e-15
        );
        let a = chain.conditional_block_log_prob(&w, &[0, 1, 1]).unwrap();
        let b = chain.conditional_block_log_prob(&w, &[1]).unwrap();
        assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        let joint = chain.block_log_prob(&[0, 1, 1, 1, 1, 0]).unwrap() - chain.block_log_prob(&[0, 1, 1]).unwrap();
        assert_abs_diff_eq!(a, joint, epsilon = 1e-12);

        let periodic = ProcessModel::periodic(vec![0, 1], 2).unwrap();
        assert!(matches!(
            periodic.conditional_block_log_prob(&[0], &[0, 0]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn validation() {
        assert!(ProcessModel::iid(vec![0.5, 0.6]).is_err());
        assert!(ProcessModel::iid(vec![-0.5, 1.5]).is_err());
        assert!(ProcessModel::markov(vec![vec![0.5, 0.5]]).is_err());
        let bad_initial = ProcessModel::Markov {
            transition: vec![vec![0.9, 0.1], vec![0.1, 0.9]],
            initial: Some(vec![0.9, 0.1]),
            stationary: true,
        };
        assert!(bad_initial.validate().is_err());
        assert!(ProcessModel::dithered(presets::fair_coin(), vec![1.0, 0.0]).is_err());
        assert!(ProcessModel::dithered(presets::fair_coin(), vec![0.5, 0.25, 0.25]).is_err());
        let declared = ProcessModel::UniformlyDithered {
            base: Box::new(presets::fair_coin()),
            dither: vec![0.6, 0.4],
            c: Some(0.5),
        };
        assert!(declared.validate().is_err());
        assert!(ProcessModel::periodic(vec![], 2).is_err());
        assert!(ProcessModel::periodic(vec![3], 2).is_err());
    }

    #[test]
    fn stationary_law_of_cycle() {
        let cycle = Matrix::from_rows(&[vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0], vec![1.0, 0.0, 0.0]]).unwrap();
        let pi = stationary_distribution(&cycle).unwrap();
        for p in pi {
            assert_abs_diff_eq!(p, 1.0 / 3.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn permutation_sampling() {
        let src = Sequence::from_bytes(b"hello world");
        let model = ProcessModel::permutation(&src);
        let s = model.sample(11, 5).unwrap();
        let mut a = s.symbols().to_vec();
        let mut b = src.symbols().to_vec();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
        assert!(model.sample(12, 5).is_err());
    }

    #[test]
    fn spec_round_trips() {
        for model in [
            presets::fair_coin(),
            presets::sticky_pair(),
            presets::three_state_hmm(),
            presets::dithered_chain(),
            presets::counting_cycle(4),
            ProcessModel::iid(vec![0.1, 0.2, 0.7]).unwrap(),
        ] {
            let spec = ModelSpec { name: Some("m".into()), model, seed: Some(17) };
            let text = spec.to_json();
            let back = ModelSpec::from_json(&text).unwrap();
            assert_eq!(back, spec);
            assert_eq!(back.to_json(), text);
        }
        let minimal = r#"{"model": {"kind": "markov", "transition": [[0.7, 0.3], [0.3, 0.7]]}}"#;
        let spec = ModelSpec::from_json(minimal).unwrap();
        assert_eq!(spec.model, ProcessModel::markov(vec![vec![0.7, 0.3], vec![0.3, 0.7]]).unwrap());
        assert!(ModelSpec::from_json(r#"{"model": {"kind": "bogus"}}"#).is_err());
    }
}
