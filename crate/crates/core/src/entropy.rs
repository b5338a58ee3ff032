//! Block entropies of stochastic sources.
//!
//! For a stationary source and block length `n`:
//!
//! - `H_γ(n) = log(Σ_w P(w)^γ) / (1 - γ)`, with Hartley (`γ = 0`), Shannon
//!   (`γ = 1`) and min-entropy (`γ = ∞`) as limits;
//! - `H^cond_γ(n) = -log E[P(X_1^n | past)^{γ-1}] / (γ - 1)` for `γ > 1`,
//!   given the infinite past (reduced to a finite sufficient statistic) or a
//!   finite context of `N` symbols (the tilde variant);
//! - `H^cond_∞(n) = -log esssup P(X_1^n | past)`.
//!
//! Values are in nats. Exact routes are used whenever the model structure
//! allows; enumeration of blocks is capped by [`ENUMERATION_BUDGET`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::processes::{Matrix, ProcessModel, StateSpace};
use crate::seed;
use crate::strstat::Sequence;
use crate::{fmt as numfmt, Error, Result};

/// Largest number of blocks (or context/block pairs) enumerated exactly.
pub const ENUMERATION_BUDGET: u64 = 1 << 24;

/// An entropy functional of the block distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "functional", content = "gamma", rename_all = "snake_case")]
pub enum Functional {
    Hartley,
    Shannon,
    Renyi(f64),
    Min,
    CondRenyi(f64),
    CondMin,
    TildeCondRenyi(f64),
}

impl Functional {
    pub fn name(&self) -> &'static str {
        match self {
            Functional::Hartley => "hartley",
            Functional::Shannon => "shannon",
            Functional::Renyi(_) => "renyi",
            Functional::Min => "min",
            Functional::CondRenyi(_) => "cond_renyi",
            Functional::CondMin => "cond_min",
            Functional::TildeCondRenyi(_) => "tilde_cond_renyi",
        }
    }

    pub fn gamma(&self) -> f64 {
        match *self {
            Functional::Hartley => 0.0,
            Functional::Shannon => 1.0,
            Functional::Min | Functional::CondMin => f64::INFINITY,
            Functional::Renyi(g) | Functional::CondRenyi(g) | Functional::TildeCondRenyi(g) => g,
        }
    }

    /// Parses `hartley`, `shannon`, `min`, `cond_min`, or `renyi`,
    /// `cond_renyi`, `tilde_cond_renyi` together with an order.
    pub fn parse(name: &str, gamma: Option<f64>) -> Result<Self> {
        let need = |g: Option<f64>| g.ok_or_else(|| Error::input(format!("{name} needs an order gamma")));
        Ok(match name {
            "hartley" => Functional::Hartley,
            "shannon" => Functional::Shannon,
            "min" => Functional::Min,
            "cond_min" => Functional::CondMin,
            "renyi" => Functional::Renyi(need(gamma)?),
            "cond_renyi" => Functional::CondRenyi(need(gamma)?),
            "tilde_cond_renyi" => Functional::TildeCondRenyi(need(gamma)?),
            other => return Err(Error::input(format!("unknown functional {other:?}"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ExactEnumeration,
    MatrixPower,
    MaxProductDp,
    PluginEmpirical,
    MonteCarlo,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ExactEnumeration => "exact-enumeration",
            Method::MatrixPower => "matrix-power",
            Method::MaxProductDp => "max-product-dp",
            Method::PluginEmpirical => "plugin-empirical",
            Method::MonteCarlo => "monte-carlo",
        })
    }
}

/// One computed entropy value. `se` is set only for Monte Carlo estimates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyValue {
    pub value: f64,
    pub se: Option<f64>,
    pub method: Method,
}

impl EntropyValue {
    fn exact(value: f64, method: Method) -> Self {
        EntropyValue {
            value,
            se: None,
            method,
        }
    }
}

/// How the past is presented to a conditional Rényi entropy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContextMode {
    /// The infinite past, through an exact finite sufficient statistic.
    InfiniteReduced,
    /// The `len` symbols preceding the block. Enumerated exactly within the
    /// budget, otherwise estimated from `replicas` sampled contexts when set.
    Finite {
        len: usize,
        replicas: Option<u64>,
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub n: usize,
    pub value: f64,
    pub se: Option<f64>,
    pub method: Method,
}

/// Values of one functional over a grid of block lengths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyCurve {
    pub functional: Functional,
    pub source: String,
    pub points: Vec<CurvePoint>,
}

impl EntropyCurve {
    pub const CSV_HEADER: &'static str = "functional,gamma,n,value_nats,se,method";

    /// CSV rows without the header.
    pub fn csv_rows(&self) -> Vec<String> {
        self.points
            .iter()
            .map(|p| {
                format!(
                    "{},{},{},{},{},{}",
                    self.functional.name(),
                    numfmt::csv(self.functional.gamma()),
                    p.n,
                    numfmt::csv(p.value),
                    p.se.map(numfmt::csv).unwrap_or_default(),
                    p.method
                )
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for row in self.csv_rows() {
            out.push_str(&row);
            out.push('\n');
        }
        out
    }
}

/// Compensated (Neumaier) summation in iteration order.
pub(crate) fn stable_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

fn check_order(gamma: f64) -> Result<()> {
    if gamma.is_nan() || gamma < 0.0 {
        return Err(Error::input(format!("Rényi order must be >= 0, got {gamma}")));
    }
    Ok(())
}

/// Rényi entropy of order `gamma` of a finite distribution given by its
/// (not necessarily sorted) probabilities. `0 log 0 = 0`; only strictly
/// positive probabilities count towards Hartley.
pub fn renyi_of_distribution(probs: &[f64], gamma: f64) -> Result<f64> {
    check_order(gamma)?;
    let positive = probs.iter().copied().filter(|&p| p > 0.0);
    Ok(if gamma == 0.0 {
        (positive.count() as f64).ln()
    } else if gamma == 1.0 {
        stable_sum(positive.map(|p| -p * p.ln()))
    } else if gamma.is_infinite() {
        -positive.fold(0.0, f64::max).ln()
    } else {
        stable_sum(positive.map(|p| p.powf(gamma))).ln() / (1.0 - gamma)
    })
}

enum Structure {
    Iid(Vec<f64>),
    Markov,
    Periodic,
    Other,
}

/// Exact entropy computations for one compiled model.
pub struct EntropyEngine {
    space: StateSpace,
    structure: Structure,
    budget: u64,
}

impl EntropyEngine {
    pub fn new(model: &ProcessModel) -> Result<Self> {
        let space = model.compile()?;
        let structure = match model {
            ProcessModel::Iid { probs } => Structure::Iid(probs.clone()),
            ProcessModel::Markov { stationary: true, .. } => Structure::Markov,
            ProcessModel::PeriodicRandomPhase { .. } => Structure::Periodic,
            _ => Structure::Other,
        };
        Ok(EntropyEngine {
            space,
            structure,
            budget: ENUMERATION_BUDGET,
        })
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    fn block_probs(&self, mu: &[f64], n: usize) -> Result<Vec<f64>> {
        let mut probs = Vec::new();
        self.space.for_each_block(mu, n, self.budget, |_, p| probs.push(p))?;
        Ok(probs)
    }

    /// Unconditional block Rényi entropy `H_γ(n)`.
    pub fn renyi(&self, n: usize, gamma: f64) -> Result<EntropyValue> {
        check_order(gamma)?;
        if n == 0 {
            return Ok(EntropyValue::exact(0.0, Method::ExactEnumeration));
        }
        if gamma == 0.0 {
            return self.hartley(n);
        }
        match &self.structure {
            Structure::Iid(probs) => Ok(EntropyValue::exact(
                n as f64 * renyi_of_distribution(probs, gamma)?,
                Method::MatrixPower,
            )),
            Structure::Markov => {
                let pi = self.space.initial();
                let t = self.space.transition();
                if gamma == 1.0 {
                    let h = markov_rate(pi, t);
                    let h0 = renyi_of_distribution(pi, 1.0)?;
                    Ok(EntropyValue::exact(h0 + (n - 1) as f64 * h, Method::MatrixPower))
                } else if gamma.is_infinite() {
                    Ok(EntropyValue::exact(-markov_max_path_log(pi, t, n), Method::MaxProductDp))
                } else {
                    let m = t.map(|p| if p > 0.0 { p.powf(gamma) } else { 0.0 });
                    let (v, log_scale) = scaled_power_apply(&m, n - 1);
                    let sum = stable_sum(
                        pi.iter()
                            .zip(&v)
                            .map(|(&p, &x)| if p > 0.0 { p.powf(gamma) * x } else { 0.0 }),
                    );
                    Ok(EntropyValue::exact(
                        (sum.ln() + log_scale) / (1.0 - gamma),
                        Method::MatrixPower,
                    ))
                }
            }
            _ => {
                let probs = self.block_probs(self.space.initial(), n)?;
                Ok(EntropyValue::exact(
                    renyi_of_distribution(&probs, gamma)?,
                    Method::ExactEnumeration,
                ))
            }
        }
    }

    /// `H_0(n)`: log of the number of positive-probability blocks, counted
    /// on the subset automaton of the hidden chain.
    pub fn hartley(&self, n: usize) -> Result<EntropyValue> {
        let count = positive_block_count(&self.space, self.space.initial(), n, self.budget)?;
        Ok(EntropyValue::exact(count.ln(), Method::MatrixPower))
    }

    pub fn shannon(&self, n: usize) -> Result<EntropyValue> {
        self.renyi(n, 1.0)
    }

    pub fn min_entropy(&self, n: usize) -> Result<EntropyValue> {
        self.renyi(n, f64::INFINITY)
    }

    /// `H^cond_γ(n)` for `γ > 1`.
    pub fn conditional_renyi(&self, n: usize, gamma: f64, mode: ContextMode) -> Result<EntropyValue> {
        if !(gamma > 1.0) {
            return Err(Error::input(format!(
                "conditional Rényi entropy needs gamma > 1, got {gamma}"
            )));
        }
        if n == 0 {
            return Ok(EntropyValue::exact(0.0, Method::ExactEnumeration));
        }
        match mode {
            ContextMode::InfiniteReduced => self.conditional_renyi_reduced(n, gamma),
            ContextMode::Finite { len, replicas, seed } => {
                self.conditional_renyi_finite(n, gamma, len, replicas, seed)
            }
        }
    }

    fn conditional_renyi_reduced(&self, n: usize, gamma: f64) -> Result<EntropyValue> {
        let to_entropy = |g: f64, log_scale: f64| -(g.ln() + log_scale) / (gamma - 1.0);
        match &self.structure {
            Structure::Iid(probs) => Ok(EntropyValue::exact(
                n as f64 * renyi_of_distribution(probs, gamma)?,
                Method::MatrixPower,
            )),
            Structure::Markov => {
                // E_{x_0 ~ pi} Σ_w P(w | x_0)^γ = pi · (T^{∘γ})^n · 1
                let m = self
                    .space
                    .transition()
                    .map(|p| if p > 0.0 { p.powf(gamma) } else { 0.0 });
                let (v, log_scale) = scaled_power_apply(&m, n);
                let g = stable_sum(self.space.initial().iter().zip(&v).map(|(p, x)| p * x));
                Ok(EntropyValue::exact(to_entropy(g, log_scale), Method::MatrixPower))
            }
            Structure::Periodic => {
                // The phase is a function of the infinite past.
                let mut terms = Vec::new();
                for s in self.space.support().collect::<Vec<_>>() {
                    let probs = self.block_probs(&self.space.after_state(s), n)?;
                    let inner = stable_sum(probs.iter().map(|p| p.powf(gamma)));
                    terms.push(self.space.initial()[s] * inner);
                }
                Ok(EntropyValue::exact(to_entropy(stable_sum(terms), 0.0), Method::ExactEnumeration))
            }
            Structure::Other => Err(Error::capability(
                "the infinite past has no exact finite reduction for this model; use a finite context",
            )),
        }
    }

    fn conditional_renyi_finite(
        &self,
        n: usize,
        gamma: f64,
        len: usize,
        replicas: Option<u64>,
        seed: u64,
    ) -> Result<EntropyValue> {
        let alphabet = self.space.alphabet_size() as u64;
        let pairs = u32::try_from(len + n)
            .ok()
            .and_then(|e| alphabet.checked_pow(e))
            .unwrap_or(u64::MAX);
        let to_entropy = |g: f64| -g.ln() / (gamma - 1.0);
        if pairs <= self.budget {
            let mut contexts = Vec::new();
            self.space
                .for_each_block(self.space.initial(), len, self.budget, |c, p| contexts.push((c.to_vec(), p)))?;
            let mut terms = Vec::with_capacity(contexts.len());
            for (context, p_context) in contexts {
                let (_, mu) = self
                    .space
                    .predictive_after(&context)
                    .expect("enumerated contexts have positive probability");
                let probs = self.block_probs(&mu, n)?;
                terms.push(p_context * stable_sum(probs.iter().map(|p| p.powf(gamma))));
            }
            return Ok(EntropyValue::exact(to_entropy(stable_sum(terms)), Method::ExactEnumeration));
        }
        let Some(replicas) = replicas.filter(|&r| r >= 2) else {
            return Err(Error::capability(format!(
                "{pairs} context/block pairs exceed the enumeration budget; set a replica count for Monte Carlo"
            )));
        };
        let block_budget = alphabet.saturating_pow(n as u32);
        if block_budget > self.budget {
            return Err(Error::capability(format!(
                "block length {n} exceeds the enumeration budget"
            )));
        }
        let samples: Vec<f64> = (0..replicas)
            .into_par_iter()
            .map(|i| {
                let mut rng = seed::replica_rng(seed, i);
                let context = self.space.sample(len, &mut rng);
                let (_, mu) = self
                    .space
                    .predictive_after(&context)
                    .expect("sampled contexts have positive probability");
                let probs = self.block_probs(&mu, n).expect("within budget");
                stable_sum(probs.iter().map(|p| p.powf(gamma)))
            })
            .collect();
        let (mean, se) = mean_and_se(&samples);
        Ok(EntropyValue {
            value: to_entropy(mean),
            se: Some(se / ((gamma - 1.0) * mean)),
            method: Method::MonteCarlo,
        })
    }

    /// `H^cond_∞(n)` by a max-sum recursion over the hidden state at time 0.
    ///
    /// `V_t(s) = max_y Σ_s' T(s, s') E(s', y) V_{t-1}(s')` dominates
    /// `max_w P(w | S_0 = s)`, with equality when emissions are
    /// deterministic (IID, Markov, periodic). The result is therefore exact
    /// for those kinds and a certified lower bound otherwise.
    pub fn conditional_min(&self, n: usize) -> Result<EntropyValue> {
        let states = self.space.states();
        let alphabet = self.space.alphabet_size();
        let t = self.space.transition();
        let e = self.space.emission();
        let mut log_v = vec![0.0f64; states];
        for _ in 0..n {
            let mut next = vec![f64::NEG_INFINITY; states];
            for (s, slot) in next.iter_mut().enumerate() {
                for y in 0..alphabet {
                    let terms: Vec<f64> = (0..states)
                        .filter_map(|s2| {
                            let w = t.get(s, s2) * e.get(s2, y);
                            (w > 0.0).then(|| w.ln() + log_v[s2])
                        })
                        .collect();
                    *slot = slot.max(log_sum_exp(&terms));
                }
            }
            log_v = next;
        }
        let best = self
            .space
            .support()
            .map(|s| log_v[s])
            .fold(f64::NEG_INFINITY, f64::max);
        Ok(EntropyValue::exact(-best, Method::MaxProductDp))
    }

    pub fn entropy_rate(&self) -> Result<f64> {
        match &self.structure {
            Structure::Iid(probs) => renyi_of_distribution(probs, 1.0),
            Structure::Markov => Ok(markov_rate(self.space.initial(), self.space.transition())),
            Structure::Periodic => Ok(0.0),
            Structure::Other => Err(Error::capability("entropy rate has no closed form for this model")),
        }
    }

    pub fn evaluate(&self, functional: Functional, n: usize, context: ContextMode) -> Result<EntropyValue> {
        match functional {
            Functional::Hartley => self.hartley(n),
            Functional::Shannon => self.shannon(n),
            Functional::Renyi(g) => self.renyi(n, g),
            Functional::Min => self.min_entropy(n),
            Functional::CondRenyi(g) => self.conditional_renyi(n, g, ContextMode::InfiniteReduced),
            Functional::CondMin => self.conditional_min(n),
            Functional::TildeCondRenyi(g) => match context {
                ContextMode::InfiniteReduced => Err(Error::input("tilde_cond_renyi needs a finite context")),
                finite => self.conditional_renyi(n, g, finite),
            },
        }
    }

    pub fn curve(
        &self,
        functional: Functional,
        grid: &[usize],
        context: ContextMode,
        source: &str,
    ) -> Result<EntropyCurve> {
        let points = grid
            .iter()
            .map(|&n| {
                let v = self.evaluate(functional, n, context)?;
                Ok(CurvePoint {
                    n,
                    value: v.value,
                    se: v.se,
                    method: v.method,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(EntropyCurve {
            functional,
            source: source.to_string(),
            points,
        })
    }
}

fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + stable_sum(terms.iter().map(|t| (t - max).exp())).ln()
}

fn mean_and_se(samples: &[f64]) -> (f64, f64) {
    let n = samples.len() as f64;
    let mean = stable_sum(samples.iter().copied()) / n;
    let var = stable_sum(samples.iter().map(|x| (x - mean) * (x - mean))) / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// `M^k 1` with per-step rescaling; returns the scaled vector and the log of
/// the accumulated scale.
fn scaled_power_apply(m: &Matrix, k: usize) -> (Vec<f64>, f64) {
    let mut v = vec![1.0; m.rows()];
    let mut log_scale = 0.0;
    for _ in 0..k {
        v = m.right_mul(&v);
        let max = v.iter().copied().fold(0.0, f64::max);
        if max > 0.0 {
            v.iter_mut().for_each(|x| *x /= max);
            log_scale += max.ln();
        }
    }
    (v, log_scale)
}

fn markov_rate(pi: &[f64], t: &Matrix) -> f64 {
    stable_sum(pi.iter().enumerate().map(|(s, &p)| {
        p * stable_sum(t.row(s).iter().filter(|&&q| q > 0.0).map(|&q| -q * q.ln()))
    }))
}

/// `max_w log P(w)` over Markov paths of length `n`.
fn markov_max_path_log(pi: &[f64], t: &Matrix, n: usize) -> f64 {
    let states = pi.len();
    let mut best: Vec<f64> = pi
        .iter()
        .map(|&p| if p > 0.0 { p.ln() } else { f64::NEG_INFINITY })
        .collect();
    for _ in 1..n {
        best = (0..states)
            .map(|y| {
                (0..states)
                    .filter(|&x| t.get(x, y) > 0.0)
                    .map(|x| best[x] + t.get(x, y).ln())
                    .fold(f64::NEG_INFINITY, f64::max)
            })
            .collect();
    }
    best.into_iter().fold(f64::NEG_INFINITY, f64::max)
}

/// Number of distinct words of length `n` with positive probability when the
/// first emitting state has law `mu`.
pub(crate) fn positive_block_count(space: &StateSpace, mu: &[f64], n: usize, budget: u64) -> Result<f64> {
    Ok(positive_block_count_profile_within(space, mu, n, budget)?[n])
}

/// `out[k]` is the number of positive-probability words of length `k`, for
/// `k` in `0..=n_max`. Walks the deterministic automaton whose states are
/// sets of possible hidden states; counts saturate to infinity.
pub fn positive_block_count_profile(space: &StateSpace, mu: &[f64], n_max: usize) -> Result<Vec<f64>> {
    positive_block_count_profile_within(space, mu, n_max, ENUMERATION_BUDGET)
}

fn positive_block_count_profile_within(
    space: &StateSpace,
    mu: &[f64],
    n_max: usize,
    budget: u64,
) -> Result<Vec<f64>> {
    let states = space.states();
    let words = states.div_ceil(64);
    let mut start = vec![0u64; words];
    for (s, &p) in mu.iter().enumerate() {
        if p > 0.0 {
            start[s / 64] |= 1 << (s % 64);
        }
    }
    let member = |set: &[u64], s: usize| set[s / 64] >> (s % 64) & 1 == 1;
    let mut level: BTreeMap<Vec<u64>, f64> = BTreeMap::new();
    level.insert(start, 1.0);
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(1.0);
    let mut cache: HashMap<(Vec<u64>, usize), Option<Vec<u64>>> = HashMap::new();
    for _ in 1..=n_max {
        let mut next: BTreeMap<Vec<u64>, f64> = BTreeMap::new();
        let mut total = 0.0;
        for (set, count) in &level {
            for y in 0..space.alphabet_size() {
                let successor = cache
                    .entry((set.clone(), y))
                    .or_insert_with(|| {
                        let alive: Vec<usize> = (0..states)
                            .filter(|&s| member(set, s) && space.emission().get(s, y) > 0.0)
                            .collect();
                        if alive.is_empty() {
                            return None;
                        }
                        let mut succ = vec![0u64; words];
                        for &s in &alive {
                            for s2 in 0..states {
                                if space.transition().get(s, s2) > 0.0 {
                                    succ[s2 / 64] |= 1 << (s2 % 64);
                                }
                            }
                        }
                        Some(succ)
                    })
                    .clone();
                let Some(succ) = successor else { continue };
                total += count;
                *next.entry(succ).or_insert(0.0) += count;
            }
        }
        if next.len() as u64 > budget {
            return Err(Error::capability("support automaton exceeds the enumeration budget"));
        }
        out.push(total);
        level = next;
    }
    Ok(out)
}

/// Block Rényi entropy `H_γ(n)` of a model.
pub fn renyi_block_entropy(model: &ProcessModel, n: usize, gamma: f64) -> Result<EntropyValue> {
    EntropyEngine::new(model)?.renyi(n, gamma)
}

pub fn conditional_renyi_entropy(
    model: &ProcessModel,
    n: usize,
    gamma: f64,
    mode: ContextMode,
) -> Result<EntropyValue> {
    EntropyEngine::new(model)?.conditional_renyi(n, gamma, mode)
}

pub fn conditional_min_entropy(model: &ProcessModel, n: usize) -> Result<EntropyValue> {
    EntropyEngine::new(model)?.conditional_min(n)
}

pub fn entropy_rate(model: &ProcessModel) -> Result<f64> {
    EntropyEngine::new(model)?.entropy_rate()
}

/// Rényi entropy of the empirical distribution of the `len - k + 1`
/// overlapping `k`-blocks of `x`. A biased plug-in estimate, for exploration.
pub fn plugin_entropy_from_corpus(x: &Sequence, k: usize, gamma: f64) -> Result<f64> {
    check_order(gamma)?;
    if k > x.len() {
        return Err(Error::input(format!(
            "block length {k} exceeds sequence length {}",
            x.len()
        )));
    }
    let symbols = x.symbols();
    let blocks = x.len() + 1 - k;
    let mut counts: HashMap<&[u32], u64> = HashMap::new();
    for i in 0..blocks {
        *counts.entry(&symbols[i..i + k]).or_insert(0) += 1;
    }
    let mut counts: Vec<u64> = counts.into_values().collect();
    counts.sort_unstable();
    let probs: Vec<f64> = counts.iter().map(|&c| c as f64 / blocks as f64).collect();
    renyi_of_distribution(&probs, gamma)
}

pub fn plugin_curve(x: &Sequence, grid: &[usize], gamma: f64, source: &str) -> Result<EntropyCurve> {
    let functional = match gamma {
        g if g == 0.0 => Functional::Hartley,
        g if g == 1.0 => Functional::Shannon,
        g if g.is_infinite() => Functional::Min,
        g => Functional::Renyi(g),
    };
    let points = grid
        .iter()
        .map(|&k| {
            Ok(CurvePoint {
                n: k,
                value: plugin_entropy_from_corpus(x, k, gamma)?,
                se: None,
                method: Method::PluginEmpirical,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EntropyCurve {
        functional,
        source: source.to_string(),
        points,
    })
}
