//! Monte Carlo checks of repetition, recurrence and subword-complexity
//! inequalities, and growth envelopes for `L` along single trajectories.
//!
//! Every report states an inequality `lhs <= rhs` (or `lhs < rhs`, or an
//! identity `lhs = rhs` for recurrence means). Monte Carlo estimates carry a
//! standard error; replicas use seeds derived from the master seed and the
//! replica index and are reduced in index order, so results do not depend on
//! the thread count.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entropy::{positive_block_count_profile, stable_sum, EntropyEngine};
use crate::processes::{ProcessModel, StateSpace};
use crate::seed::{self, Rng};
use crate::strstat::{self, block_count, waiting_time_in, RecurrenceSample, SuffixArray};
use crate::{fmt as numfmt, Error, Result};

/// Absolute tolerance for comparisons between exact quantities.
pub const EXACT_TOLERANCE: f64 = 1e-9;
/// Standard errors allowed on each side of a one-sided check.
pub const ONE_SIDED_SE: f64 = 3.0;
/// Standard errors allowed around a recurrence-mean identity.
pub const IDENTITY_SE: f64 = 4.0;
/// Longest past searched for a recurrence before a sample counts as truncated.
pub const MAX_PAST: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    HoldsWithinTolerance,
    Violated,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::HoldsWithinTolerance => "holds-within-tolerance",
            Verdict::Violated => "violated",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `lhs <= rhs`
    AtMost,
    /// `lhs < rhs`, for exact quantities
    Below,
    /// `lhs = rhs` up to sampling error
    Matches,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::AtMost => "<=",
            Relation::Below => "<",
            Relation::Matches => "=",
        })
    }
}

/// A value, with a standard error when estimated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub se: Option<f64>,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Estimate { value, se: None }
    }

    /// Sample mean and its standard error, summed in slice order.
    pub fn mean_of(samples: &[f64]) -> Self {
        let n = samples.len() as f64;
        if samples.is_empty() {
            return Estimate {
                value: f64::NAN,
                se: Some(f64::NAN),
            };
        }
        let mean = stable_sum(samples.iter().copied()) / n;
        let se = if samples.len() > 1 {
            let var = stable_sum(samples.iter().map(|x| (x - mean) * (x - mean))) / (n - 1.0);
            (var / n).sqrt()
        } else {
            f64::NAN
        };
        Estimate {
            value: mean,
            se: Some(se),
        }
    }

    fn scaled(self, factor: f64) -> Self {
        Estimate {
            value: self.value * factor,
            se: self.se.map(|s| s * factor.abs()),
        }
    }

    fn se_or_zero(&self) -> f64 {
        self.se.unwrap_or(0.0)
    }
}

/// Parameters of one checked inequality.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub word: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub bound_id: String,
    pub model: String,
    pub grid: GridPoint,
    pub relation: Relation,
    pub lhs: Estimate,
    pub rhs: Estimate,
    pub replicas: u64,
    pub seed: u64,
    /// Samples whose recurrence search ran out of past.
    pub truncated: u64,
    pub verdict: Verdict,
}

impl BoundReport {
    pub const CSV_HEADER: &'static str =
        "bound_id,model,n,k,gamma,m,c,word,relation,lhs,lhs_se,rhs,rhs_se,replicas,seed,truncated,verdict";

    #[allow(clippy::too_many_arguments)]
    fn new(
        bound_id: &str,
        model: &str,
        grid: GridPoint,
        relation: Relation,
        lhs: Estimate,
        rhs: Estimate,
        replicas: u64,
        seed: u64,
        truncated: u64,
    ) -> Self {
        let verdict = judge(relation, lhs, rhs, replicas);
        BoundReport {
            bound_id: bound_id.to_string(),
            model: model.to_string(),
            grid,
            relation,
            lhs,
            rhs,
            replicas,
            seed,
            truncated,
            verdict,
        }
    }

    pub fn csv_row(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_default();
        let g = &self.grid;
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.bound_id,
            self.model,
            opt(g.n.map(|v| v.to_string())),
            opt(g.k.map(|v| v.to_string())),
            opt(g.gamma.map(numfmt::csv)),
            opt(g.m.map(|v| v.to_string())),
            opt(g.c.map(numfmt::csv)),
            opt(g.word.as_ref().map(|w| w.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))),
            self.relation,
            numfmt::csv(self.lhs.value),
            opt(self.lhs.se.map(numfmt::csv)),
            numfmt::csv(self.rhs.value),
            opt(self.rhs.se.map(numfmt::csv)),
            self.replicas,
            self.seed,
            self.truncated,
            self.verdict
        )
    }
}

pub fn reports_to_csv(reports: &[BoundReport]) -> String {
    let mut out = String::from(BoundReport::CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

pub fn reports_to_json(reports: &[BoundReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialise")
}

fn judge(relation: Relation, lhs: Estimate, rhs: Estimate, replicas: u64) -> Verdict {
    let estimated = lhs.se.is_some() || rhs.se.is_some();
    if lhs.value.is_nan() || rhs.value.is_nan() || (estimated && replicas == 0) {
        return Verdict::Inconclusive;
    }
    let (sl, sr) = (lhs.se_or_zero(), rhs.se_or_zero());
    if sl.is_nan() || sr.is_nan() {
        return Verdict::Inconclusive;
    }
    let violated = match relation {
        Relation::AtMost => lhs.value - ONE_SIDED_SE * sl > rhs.value + ONE_SIDED_SE * sr + EXACT_TOLERANCE,
        Relation::Below => lhs.value - ONE_SIDED_SE * sl >= rhs.value + ONE_SIDED_SE * sr,
        Relation::Matches => {
            (lhs.value - rhs.value).abs() > IDENTITY_SE * (sl * sl + sr * sr).sqrt() + EXACT_TOLERANCE
        }
    };
    if violated {
        Verdict::Violated
    } else {
        Verdict::HoldsWithinTolerance
    }
}

/// True when no report is violated.
pub fn all_hold(reports: &[BoundReport]) -> bool {
    reports.iter().all(|r| r.verdict != Verdict::Violated)
}

fn require_stationary(space: &StateSpace) -> Result<()> {
    if space.is_stationary() {
        Ok(())
    } else {
        Err(Error::capability("recurrence checks need a stationary model"))
    }
}

fn run_replicas<T: Send>(replicas: u64, seed: u64, f: impl Fn(&mut Rng) -> T + Sync) -> Vec<T> {
    (0..replicas)
        .into_par_iter()
        .map(|i| f(&mut seed::replica_rng(seed, i)))
        .collect()
}

/// The stationary past `..., X_{-1}, X_0` sampled lazily backwards from the
/// state that emitted `X_1`.
struct Past<'a> {
    space: &'a StateSpace,
    state: usize,
    // reversed: symbols[j] = X_{-j}
    symbols: Vec<u32>,
}

impl<'a> Past<'a> {
    fn new(space: &'a StateSpace, first_state: usize) -> Self {
        Past {
            space,
            state: first_state,
            symbols: Vec::new(),
        }
    }

    fn extend_to(&mut self, len: usize, rng: &mut Rng) -> Result<()> {
        while self.symbols.len() < len {
            self.state = self.space.sample_previous_state(self.state, rng)?;
            self.symbols.push(self.space.sample_symbol(self.state, rng));
        }
        Ok(())
    }

    /// Recurrence time of `block = X_1^k`, doubling the sampled past until a
    /// match appears or `max_past` shifts have been searched.
    fn recurrence(&mut self, block: &[u32], max_past: usize, rng: &mut Rng) -> Result<RecurrenceSample> {
        let mut len = (4 * block.len()).clamp(16, max_past.max(1));
        let mut window = Vec::new();
        loop {
            self.extend_to(len, rng)?;
            window.clear();
            window.extend(self.symbols[..len].iter().rev());
            window.extend_from_slice(block);
            let sample = waiting_time_in(&window, len, block, None)?;
            if !sample.truncated || len >= max_past {
                return Ok(sample);
            }
            len = (2 * len).min(max_past);
        }
    }
}

fn sample_block_and_recurrence(
    space: &StateSpace,
    k: usize,
    max_past: usize,
    rng: &mut Rng,
) -> Result<RecurrenceSample> {
    let first = space.sample_initial_state(rng);
    let (block, _) = space.sample_forward(first, k, rng);
    Past::new(space, first).recurrence(&block, max_past, rng)
}

/// Checks `P(L(X_1^n) < k) <= E log R_k / log(n-k+1)` and, for each order,
/// `P(L(X_1^n) >= k) <= (n-k+1)^γ E R_k^{1-γ}`.
///
/// A truncated recurrence sample enters as the number of shifts searched,
/// which only lowers both right-hand sides.
pub fn check_recurrence_repetition(
    model: &ProcessModel,
    n: usize,
    k: usize,
    gammas: &[f64],
    replicas: u64,
    seed: u64,
) -> Result<Vec<BoundReport>> {
    if k == 0 || k >= n {
        return Err(Error::input(format!("need 1 <= k < n, got k={k}, n={n}")));
    }
    if let Some(g) = gammas.iter().find(|&&g| !(g > 1.0) || g.is_infinite()) {
        return Err(Error::input(format!("orders must be finite and > 1, got {g}")));
    }
    let space = model.compile()?;
    require_stationary(&space)?;
    let label = model.kind_name();
    let samples = run_replicas(replicas, seed, |rng| -> Result<(bool, RecurrenceSample)> {
        let x = space.sample(n, rng);
        let short = strstat::maximal_repetition_of(&x) < k;
        Ok((short, sample_block_and_recurrence(&space, k, MAX_PAST, rng)?))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let truncated = samples.iter().filter(|(_, r)| r.truncated).count() as u64;
    let short: Vec<f64> = samples.iter().map(|(s, _)| f64::from(u8::from(*s))).collect();
    let long: Vec<f64> = short.iter().map(|s| 1.0 - s).collect();
    let log_r: Vec<f64> = samples.iter().map(|(_, r)| (r.value as f64).ln()).collect();
    let positions = (n - k + 1) as f64;
    let grid = GridPoint {
        n: Some(n),
        k: Some(k),
        ..GridPoint::default()
    };
    let mut reports = vec![BoundReport::new(
        "short_repeat_vs_log_recurrence",
        label,
        grid.clone(),
        Relation::AtMost,
        Estimate::mean_of(&short),
        Estimate::mean_of(&log_r).scaled(1.0 / positions.ln()),
        replicas,
        seed,
        truncated,
    )];
    let p_long = Estimate::mean_of(&long);
    for &gamma in gammas {
        let moment: Vec<f64> = samples
            .iter()
            .map(|(_, r)| if r.truncated { 0.0 } else { (r.value as f64).powf(1.0 - gamma) })
            .collect();
        reports.push(BoundReport::new(
            "long_repeat_vs_recurrence_moment",
            label,
            GridPoint {
                gamma: Some(gamma),
                ..grid.clone()
            },
            Relation::AtMost,
            p_long,
            Estimate::mean_of(&moment).scaled(positions.powf(gamma)),
            replicas,
            seed,
            truncated,
        ));
    }
    Ok(reports)
}

/// Largest `N(k)` for which the trimmed-recurrence check simulates a context.
pub const TRIMMED_CONTEXT_BUDGET: u64 = 1 << 20;

/// Checks `P(S_k <= C / P(X_1^k | X_{-N(k)}^0)) <= C (1 + k log |alphabet|)`
/// for each `C`, where `S_k = min(R_k, N(k))` and `N(k) = |alphabet|^k`.
///
/// Works for every model with a hidden-state representation: the context is
/// simulated in full and the conditional probability comes from the forward
/// recursion.
pub fn check_trimmed_recurrence(
    model: &ProcessModel,
    k: usize,
    cs: &[f64],
    replicas: u64,
    seed: u64,
) -> Result<Vec<BoundReport>> {
    if k == 0 {
        return Err(Error::input("block length must be at least 1"));
    }
    if let Some(c) = cs.iter().find(|&&c| !(c > 0.0) || c.is_infinite()) {
        return Err(Error::input(format!("C must be positive and finite, got {c}")));
    }
    let space = model.compile()?;
    let alphabet = space.alphabet_size();
    let cap = block_count(alphabet as u32, k);
    if cap > TRIMMED_CONTEXT_BUDGET {
        return Err(Error::capability(format!(
            "context length N(k) = {cap} exceeds the simulation budget"
        )));
    }
    let context_len = cap as usize + 1;
    let products: Vec<f64> = run_replicas(replicas, seed, |rng| {
        let path = space.sample(context_len + k, rng);
        let (context, block) = path.split_at(context_len);
        let (_, mu) = space.predictive_after(context).expect("sampled context is possible");
        let (log_p, _) = space.forward(&mu, block).expect("sampled block is possible");
        let s = waiting_time_in(&path, context_len, block, Some(cap)).expect("valid window");
        debug_assert!(!s.truncated);
        s.value as f64 * log_p.exp()
    });
    let rhs_factor = 1.0 + k as f64 * (alphabet as f64).ln();
    Ok(cs
        .iter()
        .map(|&c| {
            let hits: Vec<f64> = products.iter().map(|&sp| f64::from(u8::from(sp <= c))).collect();
            BoundReport::new(
                "trimmed_recurrence_tail",
                model.kind_name(),
                GridPoint {
                    k: Some(k),
                    c: Some(c),
                    ..GridPoint::default()
                },
                Relation::AtMost,
                Estimate::mean_of(&hits),
                Estimate::exact(c * rhs_factor),
                replicas,
                seed,
                0,
            )
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WordSelection {
    Word(Vec<u32>),
    /// Every word of this length with positive probability.
    AllWords(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KacOptions {
    /// Replicas per word.
    pub replicas: u64,
    pub seed: u64,
    /// Thresholds `C` for `P(R_k >= C / P(X_1^k)) <= 1/C`.
    pub tail_cs: Vec<f64>,
    pub max_past: usize,
    /// Multiplies every recurrence time; values other than 1 give a negative
    /// control that must fail the mean identity.
    pub distortion: f64,
}

impl Default for KacOptions {
    fn default() -> Self {
        KacOptions {
            replicas: 100_000,
            seed: 0,
            tail_cs: vec![1.5, 2.0, 5.0, 10.0, 50.0],
            max_past: MAX_PAST,
            distortion: 1.0,
        }
    }
}

/// Recurrence times conditioned on `X_1^k = w`: the mean identity
/// `E(R_k | w) = 1/P(w)` and, per `C`, the conditional tail
/// `P(R_k >= C/P(w) | w) <= 1/C`. With every word selected, the
/// unconditional tail is also reported as the `P(w)`-weighted mixture.
///
/// Truncated samples are excluded from means and counted as tail events.
pub fn check_kac(model: &ProcessModel, words: &WordSelection, opts: &KacOptions) -> Result<Vec<BoundReport>> {
    if let Some(c) = opts.tail_cs.iter().find(|&&c| !(c > 0.0)) {
        return Err(Error::input(format!("C must be positive, got {c}")));
    }
    let space = model.compile()?;
    require_stationary(&space)?;
    let label = model.kind_name();
    let list: Vec<(Vec<u32>, f64)> = match words {
        WordSelection::Word(w) => {
            if w.is_empty() {
                return Err(Error::input("word must be non-empty"));
            }
            if let Some(&y) = w.iter().find(|&&y| y as usize >= space.alphabet_size()) {
                return Err(Error::input(format!("symbol {y} outside the alphabet")));
            }
            let p = space.block_log_prob(w).exp();
            if p <= 0.0 {
                return Err(Error::domain("word has probability zero"));
            }
            vec![(w.clone(), p)]
        }
        WordSelection::AllWords(k) => {
            if *k == 0 {
                return Err(Error::input("word length must be at least 1"));
            }
            let mut list = Vec::new();
            space.for_each_block(space.initial(), *k, crate::entropy::ENUMERATION_BUDGET, |w, p| {
                list.push((w.to_vec(), p))
            })?;
            list
        }
    };
    let mut reports = Vec::new();
    let mut mixture: Vec<(f64, Vec<f64>, u64)> = Vec::new();
    for (index, (w, p)) in list.iter().enumerate() {
        let word_seed = seed::derive(opts.seed, index as u64);
        let posterior = space.first_state_posterior(w).expect("positive probability");
        let samples = run_replicas(opts.replicas, word_seed, |rng| -> Result<RecurrenceSample> {
            let first = space.sample_state_from(&posterior, rng);
            Past::new(&space, first).recurrence(w, opts.max_past, rng)
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
        let truncated = samples.iter().filter(|r| r.truncated).count() as u64;
        let kept: Vec<f64> = samples
            .iter()
            .filter(|r| !r.truncated)
            .map(|r| r.value as f64 * opts.distortion)
            .collect();
        let grid = GridPoint {
            k: Some(w.len()),
            word: Some(w.clone()),
            ..GridPoint::default()
        };
        reports.push(BoundReport::new(
            "recurrence_mean_identity",
            label,
            grid.clone(),
            Relation::Matches,
            Estimate::mean_of(&kept),
            Estimate::exact(1.0 / p),
            kept.len() as u64,
            word_seed,
            truncated,
        ));
        let mut tails = Vec::new();
        for &c in &opts.tail_cs {
            let threshold = c / p;
            let hits: Vec<f64> = samples
                .iter()
                .map(|r| f64::from(u8::from(r.truncated || r.value as f64 * opts.distortion >= threshold)))
                .collect();
            let est = Estimate::mean_of(&hits);
            tails.push(est.value);
            reports.push(BoundReport::new(
                "recurrence_upper_tail",
                label,
                GridPoint {
                    c: Some(c),
                    ..grid.clone()
                },
                Relation::AtMost,
                est,
                Estimate::exact(1.0 / c),
                opts.replicas,
                word_seed,
                truncated,
            ));
        }
        mixture.push((*p, tails, truncated));
    }
    if let WordSelection::AllWords(k) = words {
        let r = opts.replicas as f64;
        for (j, &c) in opts.tail_cs.iter().enumerate() {
            let value = stable_sum(mixture.iter().map(|(p, t, _)| p * t[j]));
            let var = stable_sum(mixture.iter().map(|(p, t, _)| p * p * t[j] * (1.0 - t[j]) / (r - 1.0).max(1.0)));
            reports.push(BoundReport::new(
                "recurrence_upper_tail",
                label,
                GridPoint {
                    k: Some(*k),
                    c: Some(c),
                    ..GridPoint::default()
                },
                Relation::AtMost,
                Estimate {
                    value,
                    se: Some(var.sqrt()),
                },
                Estimate::exact(1.0 / c),
                opts.replicas * mixture.len() as u64,
                opts.seed,
                mixture.iter().map(|m| m.2).sum(),
            ));
        }
    }
    Ok(reports)
}

/// Checks `P(L < k) <= E f(k|X_1^n) / (n-k+1)`,
/// `P(L >= k) <= n-k+1 - E f(k|X_1^n)` and, for each `m`,
/// `E f / (n-k+1) <= 1/m + exp(m H(k)) / (n-k+1)` with `H(k)` exact.
pub fn check_subword_bounds(
    model: &ProcessModel,
    n: usize,
    k: usize,
    ms: &[u32],
    replicas: u64,
    seed: u64,
) -> Result<Vec<BoundReport>> {
    if k == 0 || k >= n {
        return Err(Error::input(format!("need 1 <= k < n, got k={k}, n={n}")));
    }
    if ms.contains(&0) {
        return Err(Error::input("m must be at least 1"));
    }
    let engine = EntropyEngine::new(model)?;
    let shannon = engine.shannon(k)?.value;
    let space = engine.space();
    let label = model.kind_name();
    let samples: Vec<(bool, usize)> = run_replicas(replicas, seed, |rng| {
        let x = space.sample(n, rng);
        let sa = SuffixArray::new(&x);
        (sa.max_lcp() < k, sa.distinct_blocks(k))
    });
    let short: Vec<f64> = samples.iter().map(|s| f64::from(u8::from(s.0))).collect();
    let long: Vec<f64> = short.iter().map(|s| 1.0 - s).collect();
    let complexity: Vec<f64> = samples.iter().map(|s| s.1 as f64).collect();
    let positions = (n - k + 1) as f64;
    let mean_f = Estimate::mean_of(&complexity);
    let grid = GridPoint {
        n: Some(n),
        k: Some(k),
        ..GridPoint::default()
    };
    let mut reports = vec![
        BoundReport::new(
            "short_repeat_vs_complexity",
            label,
            grid.clone(),
            Relation::AtMost,
            Estimate::mean_of(&short),
            mean_f.scaled(1.0 / positions),
            replicas,
            seed,
            0,
        ),
        BoundReport::new(
            "long_repeat_vs_complexity",
            label,
            grid.clone(),
            Relation::AtMost,
            Estimate::mean_of(&long),
            Estimate {
                value: positions - mean_f.value,
                se: mean_f.se,
            },
            replicas,
            seed,
            0,
        ),
    ];
    for &m in ms {
        let rhs = 1.0 / f64::from(m) + (f64::from(m) * shannon).exp() / positions;
        reports.push(BoundReport::new(
            "complexity_vs_entropy",
            label,
            GridPoint {
                m: Some(m),
                ..grid.clone()
            },
            Relation::AtMost,
            mean_f.scaled(1.0 / positions),
            Estimate::exact(rhs),
            replicas,
            seed,
            0,
        ));
    }
    Ok(reports)
}

/// Growth envelopes for `L(X_1^n)` along one trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GrowthBound {
    /// `L >= k*(n)`, the largest `k` with `exp(H_0(k)) < n - k + 1`.
    HartleyFloor,
    /// `L < 3 log n / B` with `B = H^cond_∞(1)`.
    MinEntropyCeiling,
    /// `L > (log n)^α` for `α < 1`, from `H(k) <= k log |alphabet|`.
    ShannonFloor,
    /// `L < A log n` with `A = γ(γ+1)/(γ-1) / B` and `B` a certified
    /// lower rate of the conditional Rényi entropy (IID and Markov).
    RenyiCeiling,
}

impl GrowthBound {
    pub const ALL: [GrowthBound; 4] = [
        GrowthBound::HartleyFloor,
        GrowthBound::MinEntropyCeiling,
        GrowthBound::ShannonFloor,
        GrowthBound::RenyiCeiling,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            GrowthBound::HartleyFloor => "hartley_repeat_floor",
            GrowthBound::MinEntropyCeiling => "min_entropy_repeat_ceiling",
            GrowthBound::ShannonFloor => "shannon_repeat_floor",
            GrowthBound::RenyiCeiling => "renyi_repeat_ceiling",
        }
    }

    /// Accepts the report id, the kebab-case name, or the short codes
    /// `T1`, `T2`, `T6`, `T7`.
    pub fn parse(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase().replace('-', "_");
        GrowthBound::ALL
            .into_iter()
            .find(|g| {
                let code = match g {
                    GrowthBound::HartleyFloor => "t1",
                    GrowthBound::MinEntropyCeiling => "t2",
                    GrowthBound::ShannonFloor => "t6",
                    GrowthBound::RenyiCeiling => "t7",
                };
                lower == code || lower == g.id() || lower == g.id().replace("_repeat", "")
            })
            .ok_or_else(|| Error::input(format!("unknown growth bound {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthOptions {
    pub burn_in: usize,
    /// Exponent for the Shannon floor.
    pub alpha: f64,
    /// Order for the Rényi ceiling.
    pub gamma: f64,
}

impl Default for GrowthOptions {
    fn default() -> Self {
        GrowthOptions {
            burn_in: 256,
            alpha: 0.9,
            gamma: 2.0,
        }
    }
}

/// Powers of two from `2^8` up to `n_max`, plus `n_max` itself.
pub fn default_checkpoints(n_max: usize) -> Vec<usize> {
    let mut grid: Vec<usize> = (8..usize::BITS)
        .map(|e| 1usize << e)
        .take_while(|&n| n <= n_max)
        .collect();
    if grid.last() != Some(&n_max) && n_max > 0 {
        grid.push(n_max);
    }
    grid
}

/// Envelope of `bound` at each `n`, as (value, `L` is on the left).
fn growth_envelope(
    model: &ProcessModel,
    bound: GrowthBound,
    grid: &[usize],
    opts: &GrowthOptions,
) -> Result<Vec<f64>> {
    let engine = EntropyEngine::new(model)?;
    match bound {
        GrowthBound::HartleyFloor => {
            let space = engine.space();
            let n_max = grid.iter().copied().max().unwrap_or(0);
            let counts = positive_block_count_profile(space, space.initial(), n_max)?;
            Ok(grid
                .iter()
                .map(|&n| {
                    let mut best = 0usize;
                    for k in 1..=n {
                        if counts[k] < (n - k + 1) as f64 {
                            best = k;
                        } else {
                            break;
                        }
                    }
                    best as f64
                })
                .collect())
        }
        GrowthBound::MinEntropyCeiling => {
            let b = engine.conditional_min(1)?.value;
            if !(b > EXACT_TOLERANCE) {
                return Err(Error::capability("conditional min-entropy rate is zero; no ceiling"));
            }
            Ok(grid.iter().map(|&n| 3.0 * (n as f64).ln() / b).collect())
        }
        GrowthBound::ShannonFloor => {
            if !(opts.alpha > 0.0 && opts.alpha < 1.0) {
                return Err(Error::input("Shannon floor exponent must lie in (0, 1)"));
            }
            Ok(grid.iter().map(|&n| (n as f64).ln().powf(opts.alpha)).collect())
        }
        GrowthBound::RenyiCeiling => {
            let gamma = opts.gamma;
            if !(gamma > 1.0) || gamma.is_infinite() {
                return Err(Error::input("Rényi ceiling needs a finite order > 1"));
            }
            let b = renyi_rate_floor(model, gamma)?;
            if !(b > EXACT_TOLERANCE) {
                return Err(Error::capability("conditional Rényi rate floor is zero; no ceiling"));
            }
            let a = gamma * (gamma + 1.0) / (gamma - 1.0) / b;
            Ok(grid.iter().map(|&n| a * (n as f64).ln()).collect())
        }
    }
}

/// A lower bound `B` with `H^cond_γ(k) >= B k` for all `k`, from the row sums
/// of the entrywise power of the transition matrix.
pub fn renyi_rate_floor(model: &ProcessModel, gamma: f64) -> Result<f64> {
    let rows: Vec<Vec<f64>> = match model {
        ProcessModel::Iid { probs } => vec![probs.clone()],
        ProcessModel::Markov { stationary: true, .. } => model.compile()?.transition().to_rows(),
        _ => {
            return Err(Error::capability(
                "the conditional Rényi hypothesis is certified only for IID and stationary Markov models",
            ))
        }
    };
    let worst = rows
        .iter()
        .map(|row| stable_sum(row.iter().filter(|&&p| p > 0.0).map(|p| p.powf(gamma))))
        .fold(0.0, f64::max);
    Ok(-worst.ln() / (gamma - 1.0))
}

/// Samples `X_1^{n_max}` and checks `bound` at each checkpoint `n >= burn_in`.
pub fn check_growth(
    model: &ProcessModel,
    bound: GrowthBound,
    checkpoints: &[usize],
    opts: &GrowthOptions,
    seed: u64,
) -> Result<Vec<BoundReport>> {
    if let Some(w) = checkpoints.windows(2).find(|w| w[0] >= w[1]) {
        return Err(Error::input(format!(
            "checkpoints must be strictly increasing, found {} then {}",
            w[0], w[1]
        )));
    }
    let grid: Vec<usize> = checkpoints.iter().copied().filter(|&n| n >= opts.burn_in.max(2)).collect();
    let envelope = growth_envelope(model, bound, &grid, opts)?;
    let Some(&n_max) = grid.last() else {
        return Ok(Vec::new());
    };
    let x = model.sample(n_max, seed)?;
    let profile = strstat::prefix_maximal_repetitions(x.symbols());
    Ok(grid
        .iter()
        .zip(envelope)
        .map(|(&n, env)| {
            let l = Estimate::exact(profile[n] as f64);
            let env = Estimate::exact(env);
            let (relation, lhs, rhs) = match bound {
                GrowthBound::HartleyFloor => (Relation::AtMost, env, l),
                GrowthBound::ShannonFloor => (Relation::Below, env, l),
                GrowthBound::MinEntropyCeiling | GrowthBound::RenyiCeiling => (Relation::Below, l, env),
            };
            BoundReport::new(
                bound.id(),
                model.kind_name(),
                GridPoint {
                    n: Some(n),
                    gamma: (bound == GrowthBound::RenyiCeiling).then_some(opts.gamma),
                    ..GridPoint::default()
                },
                relation,
                lhs,
                rhs,
                1,
                seed,
                0,
            )
        })
        .collect())
}

/// Parameter sweep for [`run_suite`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteGrid {
    pub ns: Vec<usize>,
    pub ks: Vec<usize>,
    pub gammas: Vec<f64>,
    pub ms: Vec<u32>,
    pub cs: Vec<f64>,
    pub kac_ks: Vec<usize>,
    pub kac_cs: Vec<f64>,
    /// See [`KacOptions::distortion`].
    pub kac_distortion: f64,
}

impl Default for SuiteGrid {
    fn default() -> Self {
        SuiteGrid {
            ns: vec![32, 128],
            ks: vec![2, 3, 4],
            gammas: vec![1.5, 2.0, 3.0],
            ms: vec![1, 2, 4, 8],
            cs: vec![0.01, 0.05, 0.1, 0.5],
            kac_ks: vec![2, 3],
            kac_cs: KacOptions::default().tail_cs,
            kac_distortion: 1.0,
        }
    }
}

/// Reports of every supported check, plus one message per check the model
/// cannot support.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub reports: Vec<BoundReport>,
    pub unsupported: Vec<String>,
}

/// Runs the recurrence, trimmed-recurrence, recurrence-mean and
/// subword-complexity checks over `grid`. Capability failures are collected
/// and the remaining checks continue.
pub fn run_suite(model: &ProcessModel, label: &str, grid: &SuiteGrid, replicas: u64, seed: u64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::default();
    let mut take = |name: &str, result: Result<Vec<BoundReport>>| -> Result<()> {
        match result {
            Ok(reports) => out.reports.extend(reports),
            Err(e) if e.is_capability() => out.unsupported.push(format!("{name}: {e}")),
            Err(e) => return Err(e),
        }
        Ok(())
    };
    for &n in &grid.ns {
        for &k in grid.ks.iter().filter(|&&k| k < n) {
            let s = seed::derive_named(seed, &format!("recurrence/{n}/{k}"));
            take("recurrence", check_recurrence_repetition(model, n, k, &grid.gammas, replicas, s))?;
            let s = seed::derive_named(seed, &format!("complexity/{n}/{k}"));
            take("complexity", check_subword_bounds(model, n, k, &grid.ms, replicas, s))?;
        }
    }
    for &k in &grid.ks {
        let s = seed::derive_named(seed, &format!("trimmed/{k}"));
        take("trimmed", check_trimmed_recurrence(model, k, &grid.cs, replicas, s))?;
    }
    for &k in &grid.kac_ks {
        let opts = KacOptions {
            replicas,
            seed: seed::derive_named(seed, &format!("kac/{k}")),
            tail_cs: grid.kac_cs.clone(),
            distortion: grid.kac_distortion,
            ..KacOptions::default()
        };
        take("kac", check_kac(model, &WordSelection::AllWords(k), &opts))?;
    }
    for r in &mut out.reports {
        r.model = label.to_string();
    }
    Ok(out)
}
