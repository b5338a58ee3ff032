use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::ValueEnum;
use maxrep::corpus::AlphabetMode;
use maxrep::processes::{presets, ModelSpec};
use maxrep::ProcessModel;
use serde::{Deserialize, Serialize};

use crate::args::{
    AlphabetArgs, AnalyzeArgs, BoundsArgs, Command, Common, EntropyArgs, FitArgs, ModelArgs, SimulateArgs,
};
use crate::CliError;

pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    #[default]
    Csv,
    /// JSON
    #[value(alias = "json")]
    #[serde(alias = "json")]
    StructuredText,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Units {
    #[default]
    Nats,
    Bits,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalyzeConfig {
    pub corpus: Option<PathBuf>,
    pub alphabet_mode: AlphabetMode,
    pub mapping: Option<PathBuf>,
    pub grid_min: usize,
    /// Resolved to half the corpus length when absent.
    pub grid_max: Option<usize>,
    pub grid_ratio: f64,
    pub replicates: usize,
    pub permute: bool,
    pub seed: u64,
    pub format: OutputFormat,
    pub workers: usize,
}

impl Default for AnalyzeConfig {
    fn default() -> Self {
        AnalyzeConfig {
            corpus: None,
            alphabet_mode: AlphabetMode::Bytes,
            mapping: None,
            grid_min: maxrep::corpus::OffsetSamplePlan::DEFAULT_MIN,
            grid_max: None,
            grid_ratio: maxrep::corpus::OffsetSamplePlan::DEFAULT_RATIO,
            replicates: 1,
            permute: false,
            seed: DEFAULT_SEED,
            format: OutputFormat::Csv,
            workers: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulateConfig {
    pub model: Option<ModelSpec>,
    pub length: usize,
    pub raw: bool,
    pub seed: u64,
    pub format: OutputFormat,
    pub workers: usize,
}

impl Default for SimulateConfig {
    fn default() -> Self {
        SimulateConfig {
            model: None,
            length: 1000,
            raw: false,
            seed: DEFAULT_SEED,
            format: OutputFormat::Csv,
            workers: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EntropyConfig {
    pub model: Option<ModelSpec>,
    pub corpus: Option<PathBuf>,
    pub alphabet_mode: AlphabetMode,
    pub mapping: Option<PathBuf>,
    pub functionals: Vec<String>,
    pub grid: Vec<usize>,
    pub context_len: Option<usize>,
    pub replicas: Option<u64>,
    pub units: Units,
    pub seed: u64,
    pub format: OutputFormat,
    pub workers: usize,
}

impl Default for EntropyConfig {
    fn default() -> Self {
        EntropyConfig {
            model: None,
            corpus: None,
            alphabet_mode: AlphabetMode::Bytes,
            mapping: None,
            functionals: ["hartley", "shannon", "renyi:2", "min", "cond_renyi:2", "cond_min"]
                .map(String::from)
                .to_vec(),
            grid: (1..=10).collect(),
            context_len: None,
            replicas: None,
            units: Units::Nats,
            seed: DEFAULT_SEED,
            format: OutputFormat::Csv,
            workers: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BoundsConfig {
    pub model: Option<ModelSpec>,
    pub checks: Vec<String>,
    pub ns: Vec<usize>,
    pub ks: Vec<usize>,
    pub gammas: Vec<f64>,
    pub ms: Vec<u32>,
    pub cs: Vec<f64>,
    pub kac_ks: Vec<usize>,
    pub kac_cs: Vec<f64>,
    pub kac_distortion: f64,
    pub replicas: u64,
    pub n_max: usize,
    pub burn_in: usize,
    pub alpha: f64,
    pub growth_gamma: f64,
    pub trajectories: u64,
    pub seed: u64,
    pub format: OutputFormat,
    pub workers: usize,
}

impl Default for BoundsConfig {
    fn default() -> Self {
        let grid = maxrep::bounds::SuiteGrid::default();
        let growth = maxrep::bounds::GrowthOptions::default();
        BoundsConfig {
            model: None,
            checks: ["recurrence", "trimmed", "kac", "complexity"].map(String::from).to_vec(),
            ns: grid.ns,
            ks: grid.ks,
            gammas: grid.gammas,
            ms: grid.ms,
            cs: grid.cs,
            kac_ks: grid.kac_ks,
            kac_cs: grid.kac_cs,
            kac_distortion: grid.kac_distortion,
            replicas: 100_000,
            n_max: 100_000,
            burn_in: growth.burn_in,
            alpha: growth.alpha,
            growth_gamma: growth.gamma,
            trajectories: 1,
            seed: DEFAULT_SEED,
            format: OutputFormat::Csv,
            workers: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FitConfig {
    pub points: Option<PathBuf>,
    pub source: Option<String>,
    pub format: OutputFormat,
    pub workers: usize,
}

/// A fully resolved run, as written to `config.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "snake_case")]
pub enum RunConfig {
    Analyze(AnalyzeConfig),
    Simulate(SimulateConfig),
    Entropy(EntropyConfig),
    Bounds(BoundsConfig),
    Fit(FitConfig),
}

impl RunConfig {
    pub fn name(&self) -> &'static str {
        match self {
            RunConfig::Analyze(_) => "analyze",
            RunConfig::Simulate(_) => "simulate",
            RunConfig::Entropy(_) => "entropy",
            RunConfig::Bounds(_) => "bounds",
            RunConfig::Fit(_) => "fit",
        }
    }

    pub fn workers(&self) -> usize {
        match self {
            RunConfig::Analyze(c) => c.workers,
            RunConfig::Simulate(c) => c.workers,
            RunConfig::Entropy(c) => c.workers,
            RunConfig::Bounds(c) => c.workers,
            RunConfig::Fit(c) => c.workers,
        }
    }

    pub fn format(&self) -> OutputFormat {
        match self {
            RunConfig::Analyze(c) => c.format,
            RunConfig::Simulate(c) => c.format,
            RunConfig::Entropy(c) => c.format,
            RunConfig::Bounds(c) => c.format,
            RunConfig::Fit(c) => c.format,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialises")
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::usage(format!("invalid config file: {e}")))
    }
}

fn load(path: &Path, expected: &str) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| maxrep::Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let config = RunConfig::from_json(&text)?;
    if config.name() != expected {
        return Err(CliError::usage(format!(
            "{} holds a {} config, not {expected}",
            path.display(),
            config.name()
        )));
    }
    Ok(config)
}

/// Starting point for `expected`: the config file when given, else defaults.
fn base(common: &Common, expected: &str, default: RunConfig) -> Result<RunConfig, CliError> {
    match &common.config {
        Some(path) => load(path, expected),
        None => Ok(default),
    }
}

fn parse_seed(text: &str, stderr: &mut dyn Write) -> Result<u64, CliError> {
    if text == "time" {
        let seed = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_nanos() as u64)
            .unwrap_or(0);
        let _ = writeln!(stderr, "seed = {seed} (time-derived)");
        return Ok(seed);
    }
    text.parse()
        .map_err(|_| CliError::usage(format!("seed must be an unsigned integer or `time`, got {text:?}")))
}

/// Applies the shared flags; returns the output directory.
fn apply_common(
    common: &Common,
    seed: Option<&mut u64>,
    format: &mut OutputFormat,
    workers: &mut usize,
    stderr: &mut dyn Write,
) -> Result<Option<PathBuf>, CliError> {
    match (seed, &common.seed) {
        (Some(slot), Some(text)) => *slot = parse_seed(text, stderr)?,
        (None, Some(_)) => return Err(CliError::usage("this subcommand takes no seed")),
        _ => {}
    }
    if let Some(f) = common.format {
        *format = f;
    }
    if let Some(w) = common.workers {
        *workers = w;
    }
    Ok(common.out.clone())
}

pub fn preset(name: &str) -> Result<ProcessModel, CliError> {
    let (head, arg) = match name.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (name, None),
    };
    let need = || arg.ok_or_else(|| CliError::usage(format!("preset {head} needs a parameter, e.g. {head}:2")));
    let bad = |a: &str| CliError::usage(format!("invalid parameter {a:?} for preset {head}"));
    let model = match head {
        "fair_coin" => presets::fair_coin(),
        "sticky_pair" => presets::sticky_pair(),
        "three_state_hmm" => presets::three_state_hmm(),
        "dithered_chain" => presets::dithered_chain(),
        "constant" => presets::constant(),
        "iid_uniform" => {
            let a = need()?;
            let size: usize = a.parse().map_err(|_| bad(a))?;
            if size == 0 {
                return Err(bad(a));
            }
            ProcessModel::iid_uniform(size)
        }
        "two_state_markov" => {
            let a = need()?;
            let stay: f64 = a.parse().map_err(|_| bad(a))?;
            if !(0.0..=1.0).contains(&stay) {
                return Err(bad(a));
            }
            ProcessModel::two_state_markov(stay)
        }
        "counting_cycle" => {
            let a = need()?;
            let p: u32 = a.parse().map_err(|_| bad(a))?;
            if p == 0 {
                return Err(bad(a));
            }
            presets::counting_cycle(p)
        }
        other => return Err(CliError::usage(format!("unknown preset {other:?}"))),
    };
    if arg.is_some() && !matches!(head, "iid_uniform" | "two_state_markov" | "counting_cycle") {
        return Err(CliError::usage(format!("preset {head} takes no parameter")));
    }
    Ok(model)
}

fn apply_model(args: &ModelArgs, slot: &mut Option<ModelSpec>) -> Result<bool, CliError> {
    if let Some(path) = &args.model {
        *slot = Some(ModelSpec::load(path)?);
        return Ok(true);
    }
    if let Some(name) = &args.preset {
        *slot = Some(ModelSpec {
            name: Some(name.clone()),
            model: preset(name)?,
            seed: None,
        });
        return Ok(true);
    }
    Ok(false)
}

fn apply_alphabet(
    args: &AlphabetArgs,
    mode: &mut AlphabetMode,
    mapping: &mut Option<PathBuf>,
) -> Result<(), CliError> {
    if let Some(m) = &args.alphabet_mode {
        *mode = AlphabetMode::parse(m)?;
    }
    if let Some(p) = &args.mapping {
        *mapping = Some(p.clone());
    }
    Ok(())
}

fn set_list<T: Clone>(slot: &mut Vec<T>, values: &[T]) {
    if !values.is_empty() {
        *slot = values.to_vec();
    }
}

fn require_model(model: &Option<ModelSpec>) -> Result<(), CliError> {
    match model {
        Some(spec) => Ok(spec.model.validate()?),
        None => Err(CliError::usage("a model is required: pass --model FILE or --preset NAME")),
    }
}

fn analyze(args: AnalyzeArgs, stderr: &mut dyn Write) -> Result<(RunConfig, Option<PathBuf>), CliError> {
    let RunConfig::Analyze(mut c) = base(&args.common, "analyze", RunConfig::Analyze(AnalyzeConfig::default()))? else {
        unreachable!()
    };
    let out = apply_common(&args.common, Some(&mut c.seed), &mut c.format, &mut c.workers, stderr)?;
    if let Some(p) = args.corpus {
        c.corpus = Some(p);
    }
    apply_alphabet(&args.alphabet, &mut c.alphabet_mode, &mut c.mapping)?;
    if let Some(v) = args.grid_min {
        c.grid_min = v;
    }
    if let Some(v) = args.grid_max {
        c.grid_max = Some(v);
    }
    if let Some(v) = args.grid_ratio {
        c.grid_ratio = v;
    }
    if let Some(v) = args.replicates {
        c.replicates = v;
    }
    c.permute |= args.permute;
    if c.corpus.is_none() {
        return Err(CliError::usage("analyze needs a corpus file"));
    }
    Ok((RunConfig::Analyze(c), out))
}

fn simulate(args: SimulateArgs, stderr: &mut dyn Write) -> Result<(RunConfig, Option<PathBuf>), CliError> {
    let RunConfig::Simulate(mut c) =
        base(&args.common, "simulate", RunConfig::Simulate(SimulateConfig::default()))?
    else {
        unreachable!()
    };
    let out = apply_common(&args.common, Some(&mut c.seed), &mut c.format, &mut c.workers, stderr)?;
    apply_model(&args.model, &mut c.model)?;
    if let Some(n) = args.length {
        c.length = n;
    }
    c.raw |= args.raw;
    require_model(&c.model)?;
    Ok((RunConfig::Simulate(c), out))
}

fn entropy(args: EntropyArgs, stderr: &mut dyn Write) -> Result<(RunConfig, Option<PathBuf>), CliError> {
    let RunConfig::Entropy(mut c) = base(&args.common, "entropy", RunConfig::Entropy(EntropyConfig::default()))? else {
        unreachable!()
    };
    let out = apply_common(&args.common, Some(&mut c.seed), &mut c.format, &mut c.workers, stderr)?;
    if apply_model(&args.model, &mut c.model)? {
        c.corpus = None;
    }
    if let Some(p) = args.corpus {
        c.corpus = Some(p);
        c.model = None;
    }
    apply_alphabet(&args.alphabet, &mut c.alphabet_mode, &mut c.mapping)?;
    set_list(&mut c.functionals, &args.functional);
    if let Some(n) = args.n_max {
        c.grid = (1..=n).collect();
    }
    set_list(&mut c.grid, &args.grid);
    if args.context_len.is_some() {
        c.context_len = args.context_len;
    }
    if args.replicas.is_some() {
        c.replicas = args.replicas;
    }
    if let Some(u) = args.units {
        c.units = u;
    }
    match (&c.model, &c.corpus) {
        (Some(_), None) => require_model(&c.model)?,
        (None, Some(_)) => {}
        _ => {
            return Err(CliError::usage(
                "entropy needs exactly one source: --model FILE, --preset NAME or --corpus FILE",
            ))
        }
    }
    Ok((RunConfig::Entropy(c), out))
}

fn bounds(args: BoundsArgs, stderr: &mut dyn Write) -> Result<(RunConfig, Option<PathBuf>), CliError> {
    let RunConfig::Bounds(mut c) = base(&args.common, "bounds", RunConfig::Bounds(BoundsConfig::default()))? else {
        unreachable!()
    };
    let out = apply_common(&args.common, Some(&mut c.seed), &mut c.format, &mut c.workers, stderr)?;
    apply_model(&args.model, &mut c.model)?;
    set_list(&mut c.checks, &args.checks);
    set_list(&mut c.ns, &args.ns);
    set_list(&mut c.ks, &args.ks);
    set_list(&mut c.gammas, &args.gammas);
    set_list(&mut c.ms, &args.ms);
    set_list(&mut c.cs, &args.cs);
    set_list(&mut c.kac_ks, &args.kac_ks);
    set_list(&mut c.kac_cs, &args.kac_cs);
    let scalars = [
        (args.kac_distortion, &mut c.kac_distortion),
        (args.alpha, &mut c.alpha),
        (args.growth_gamma, &mut c.growth_gamma),
    ];
    for (flag, slot) in scalars {
        if let Some(v) = flag {
            *slot = v;
        }
    }
    if let Some(v) = args.replicas {
        c.replicas = v;
    }
    if let Some(v) = args.n_max {
        c.n_max = v;
    }
    if let Some(v) = args.burn_in {
        c.burn_in = v;
    }
    if let Some(v) = args.trajectories {
        c.trajectories = v;
    }
    require_model(&c.model)?;
    Ok((RunConfig::Bounds(c), out))
}

fn fit(args: FitArgs, stderr: &mut dyn Write) -> Result<(RunConfig, Option<PathBuf>), CliError> {
    let RunConfig::Fit(mut c) = base(&args.common, "fit", RunConfig::Fit(FitConfig::default()))? else {
        unreachable!()
    };
    let out = apply_common(&args.common, None, &mut c.format, &mut c.workers, stderr)?;
    if let Some(p) = args.points {
        c.points = Some(p);
    }
    if args.source.is_some() {
        c.source = args.source;
    }
    if c.points.is_none() {
        return Err(CliError::usage("fit needs a points file"));
    }
    Ok((RunConfig::Fit(c), out))
}

/// Merges defaults, the optional config file and the flags, in that order of
/// precedence (lowest first).
pub fn resolve(command: Command, stderr: &mut dyn Write) -> Result<(RunConfig, Option<PathBuf>), CliError> {
    match command {
        Command::Analyze(a) => analyze(a, stderr),
        Command::Simulate(a) => simulate(a, stderr),
        Command::Entropy(a) => entropy(a, stderr),
        Command::Bounds(a) => bounds(a, stderr),
        Command::Fit(a) => fit(a, stderr),
    }
}
