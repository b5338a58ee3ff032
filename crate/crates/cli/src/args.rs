use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{OutputFormat, Units};

#[derive(Debug, Parser)]
#[command(
    name = "maxrep",
    version,
    about = "Maximal repetition, recurrence times and block entropies of texts and stochastic sources",
    propagate_version = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maximal repetition of random-offset substrings of a text and the fit L = A (ln n)^alpha
    Analyze(AnalyzeArgs),
    /// Sample a trajectory from a process model
    Simulate(SimulateArgs),
    /// Block entropies of a model, or plug-in estimates from a text
    Entropy(EntropyArgs),
    /// Monte Carlo and exact checks of the repetition, recurrence and entropy bounds
    Bounds(BoundsArgs),
    /// Fit L = A (ln n)^alpha to an (n, L) table
    Fit(FitArgs),
}

/// Flags shared by every subcommand.
#[derive(Debug, Args)]
pub struct Common {
    /// Resolved configuration (JSON) to start from; flags override its values
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Directory receiving the results and the resolved config.json; stdout when absent
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,

    /// Output format
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,

    /// Master seed (default 1), or `time` for a clock-derived seed that is echoed
    #[arg(long, value_name = "SEED|time")]
    pub seed: Option<String>,

    /// Worker threads; 0 uses one per core
    #[arg(long, value_name = "N")]
    pub workers: Option<usize>,
}

/// Where a process model comes from.
#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Model specification file (JSON)
    #[arg(long, value_name = "FILE", conflicts_with = "preset")]
    pub model: Option<PathBuf>,

    /// Built-in model: fair_coin, sticky_pair, three_state_hmm, dithered_chain,
    /// constant, iid_uniform:<size>, two_state_markov:<stay>, counting_cycle:<period>
    #[arg(long, value_name = "NAME")]
    pub preset: Option<String>,
}

/// How a text file is turned into symbols.
#[derive(Debug, Args)]
pub struct AlphabetArgs {
    /// bytes, unicode_codepoints or mapped_tokens
    #[arg(long, value_name = "MODE")]
    pub alphabet_mode: Option<String>,

    /// Token table for mapped_tokens, one token per line
    #[arg(long, value_name = "FILE")]
    pub mapping: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Text file to analyse
    #[arg(value_name = "CORPUS")]
    pub corpus: Option<PathBuf>,

    #[command(flatten)]
    pub alphabet: AlphabetArgs,

    /// Smallest substring length
    #[arg(long, value_name = "N")]
    pub grid_min: Option<usize>,

    /// Largest substring length (default: half the corpus)
    #[arg(long, value_name = "N")]
    pub grid_max: Option<usize>,

    /// Ratio between consecutive lengths (default 2^(1/4))
    #[arg(long, value_name = "R")]
    pub grid_ratio: Option<f64>,

    /// Offsets per length; L is averaged over them before fitting
    #[arg(long, value_name = "R")]
    pub replicates: Option<usize>,

    /// Also analyse a random permutation of the corpus
    #[arg(long)]
    pub permute: bool,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub model: ModelArgs,

    /// Number of symbols
    #[arg(long, value_name = "N")]
    pub length: Option<usize>,

    /// Write the trajectory as raw bytes (alphabets of at most 256 symbols)
    #[arg(long)]
    pub raw: bool,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct EntropyArgs {
    #[command(flatten)]
    pub model: ModelArgs,

    /// Text file for plug-in estimates instead of a model
    #[arg(long, value_name = "FILE", conflicts_with_all = ["model", "preset"])]
    pub corpus: Option<PathBuf>,

    #[command(flatten)]
    pub alphabet: AlphabetArgs,

    /// Functionals as name[:gamma]: hartley, shannon, renyi:G, min, cond_renyi:G,
    /// cond_min, tilde_cond_renyi:G
    #[arg(long, value_name = "LIST", value_delimiter = ',')]
    pub functional: Vec<String>,

    /// Block lengths 1..=N
    #[arg(long, value_name = "N", conflicts_with = "grid")]
    pub n_max: Option<usize>,

    /// Explicit block lengths
    #[arg(long, value_name = "LIST", value_delimiter = ',')]
    pub grid: Vec<usize>,

    /// Length of the finite context for tilde_cond_renyi
    #[arg(long, value_name = "N")]
    pub context_len: Option<usize>,

    /// Sampled contexts when exact enumeration exceeds the budget
    #[arg(long, value_name = "R")]
    pub replicas: Option<u64>,

    /// Units of the reported values
    #[arg(long, value_enum)]
    pub units: Option<Units>,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub model: ModelArgs,

    /// Checks to run: recurrence, trimmed, kac, complexity, the growth bounds
    /// t1, t2, t6, t7, or psi_mixing
    #[arg(long, value_name = "LIST", value_delimiter = ',')]
    pub checks: Vec<String>,

    /// String lengths n
    #[arg(long = "n", value_name = "LIST", value_delimiter = ',')]
    pub ns: Vec<usize>,

    /// Block lengths k
    #[arg(long = "k", value_name = "LIST", value_delimiter = ',')]
    pub ks: Vec<usize>,

    /// Moment orders gamma
    #[arg(long = "gamma", value_name = "LIST", value_delimiter = ',')]
    pub gammas: Vec<f64>,

    /// Entropy multipliers m of the complexity bound
    #[arg(long = "m", value_name = "LIST", value_delimiter = ',')]
    pub ms: Vec<u32>,

    /// Thresholds C of the trimmed recurrence tail
    #[arg(long = "c", value_name = "LIST", value_delimiter = ',')]
    pub cs: Vec<f64>,

    /// Word lengths of the recurrence-mean check
    #[arg(long = "kac-k", value_name = "LIST", value_delimiter = ',')]
    pub kac_ks: Vec<usize>,

    /// Thresholds C of the recurrence upper tail
    #[arg(long = "kac-c", value_name = "LIST", value_delimiter = ',')]
    pub kac_cs: Vec<f64>,

    /// Negative control: multiplies every recurrence time in the mean check
    #[arg(long, value_name = "FACTOR")]
    pub kac_distortion: Option<f64>,

    /// Monte Carlo replicas per grid point
    #[arg(long, value_name = "R")]
    pub replicas: Option<u64>,

    /// Trajectory length for the growth bounds
    #[arg(long, value_name = "N")]
    pub n_max: Option<usize>,

    /// Growth checkpoints below this length are skipped
    #[arg(long, value_name = "N")]
    pub burn_in: Option<usize>,

    /// Exponent of the Shannon floor (t6)
    #[arg(long, value_name = "A")]
    pub alpha: Option<f64>,

    /// Order of the Rényi ceiling (t7)
    #[arg(long, value_name = "G")]
    pub growth_gamma: Option<f64>,

    /// Independent trajectories per growth bound
    #[arg(long, value_name = "N")]
    pub trajectories: Option<u64>,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// CSV with columns n and L (other columns are ignored)
    #[arg(value_name = "POINTS")]
    pub points: Option<PathBuf>,

    /// Only rows whose `source` column has this value
    #[arg(long, value_name = "NAME")]
    pub source: Option<String>,

    #[command(flatten)]
    pub common: Common,
}
