//! Repetition statistics of strings and generalized block entropies of
//! stochastic processes.
//!
//! The crate is organised around a handful of modules:
//!
//! - [`strstat`]: maximal repetition `L(x)`, subword complexity `f(k|x)`,
//!   longest match, waiting and recurrence times. Fast suffix-array routes
//!   with brute-force references in [`strstat::oracle`].
//! - [`processes`]: finite-state stochastic sources (IID, Markov, hidden
//!   Markov, uniformly dithered, periodic with random phase, empirical
//!   permutation) with seeded samplers and exact block probabilities.
//! - [`entropy`]: Hartley, Shannon, Rényi, min-entropy and their conditional
//!   variants over block lengths, exact where possible.
//! - [`bounds`]: Monte Carlo harness checking the inequalities that tie the
//!   maximal repetition to recurrence times, subword complexity and entropy.
//! - [`corpus`]: random-offset repetition experiments on text and the
//!   `L ≈ A (log n)^α` fit.
//!
//! All logarithms are natural.

pub mod bounds;
pub mod corpus;
pub mod entropy;
mod error;
pub mod fmt;
pub mod processes;
pub mod seed;
pub mod strstat;

pub use error::{Error, Result};
pub use processes::ProcessModel;
pub use strstat::{RecurrenceSample, Sequence};
