//! Finite-energy and Doeblin diagnostics.
//!
//! A source is finite energy when `P(X_{m+1}^{m+n} = w | X_1^m) <= K c^n`
//! with `c < 1`. For hidden Markov sources `c` can be read off the one-step
//! predictive law given the previous hidden state; the Doeblin constants
//! `d` and `D` bound the `r`-step symbol law given the conditioning state.

use serde::{Deserialize, Serialize};

use super::{ProcessModel, StateSpace};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ModelDiagnostics {
    pub finite_energy_c: Option<f64>,
    pub finite_energy_k: Option<f64>,
    pub doeblin_d: Option<f64>,
    pub doeblin_upper: Option<f64>,
    pub doeblin_r: Option<usize>,
}

impl ModelDiagnostics {
    pub fn is_finite_energy(&self) -> bool {
        self.finite_energy_c.is_some_and(|c| c < 1.0)
    }

    /// `P(X_r = x | past) >= d` with `d > 0`.
    pub fn doeblin_lower_holds(&self) -> bool {
        self.doeblin_d.is_some_and(|d| d > 0.0)
    }

    /// `P(X_r = x | past) <= D` with `D < 1`.
    pub fn doeblin_upper_holds(&self) -> bool {
        self.doeblin_upper.is_some_and(|d| d < 1.0)
    }
}

/// `max` over previous hidden states `x` (with positive stationary mass) and
/// symbols `y` of `P(Y_i = y | X_{i-1} = x) = sum_x' T(x, x') E(x', y)`.
pub fn hmm_finite_energy_constant(model: &ProcessModel) -> Result<f64> {
    let space = model.compile()?;
    Ok(one_step_constant(&space))
}

pub(crate) fn one_step_constant(space: &StateSpace) -> f64 {
    let predictive = space.transition().mul(space.emission());
    space
        .support()
        .flat_map(|x| predictive.row(x).iter().copied())
        .fold(0.0, f64::max)
}

/// Doeblin constants for horizon `r`: the minimum and maximum over
/// conditioning states and symbols of `P(X_r = y | S_0 = s)`.
///
/// For Markov chains `S_0 = X_0` is sufficient for the infinite past, so the
/// constants are exact. For hidden Markov sources the hidden state stands in
/// for the observable past; the true conditional law is a mixture of these
/// rows, so `d` and `D` remain valid (possibly loose) bounds.
pub fn doeblin_check(model: &ProcessModel, r: usize) -> Result<ModelDiagnostics> {
    if r == 0 {
        return Err(Error::input("Doeblin horizon r must be at least 1"));
    }
    match model {
        ProcessModel::Iid { .. } | ProcessModel::Markov { .. } | ProcessModel::HiddenMarkov { .. } => {}
        other => {
            return Err(Error::capability(format!(
                "Doeblin check is implemented for iid, markov and hidden_markov, not {}",
                other.kind_name()
            )))
        }
    }
    let space = model.compile()?;
    let kernel = space.transition().pow(r).mul(space.emission());
    let (mut d, mut upper) = (f64::INFINITY, 0.0f64);
    for s in space.support() {
        for &p in kernel.row(s) {
            d = d.min(p);
            upper = upper.max(p);
        }
    }
    let mut diag = ModelDiagnostics {
        doeblin_d: Some(d),
        doeblin_upper: Some(upper),
        doeblin_r: Some(r),
        ..ModelDiagnostics::default()
    };
    if upper < 1.0 && upper > 0.0 {
        // P(X_1^n | past) <= D^{floor(n/r)} <= D^{-1} (D^{1/r})^n
        diag.finite_energy_c = Some(upper.powf(1.0 / r as f64));
        diag.finite_energy_k = Some(1.0 / upper);
    }
    Ok(diag)
}

/// Finite-energy constants certified directly by the model structure:
/// one-step hidden-state bound for hidden Markov (and Markov, IID) sources,
/// the dither bound for uniformly dithered ones.
pub fn finite_energy_diagnostics(model: &ProcessModel) -> Result<ModelDiagnostics> {
    let c = match model {
        ProcessModel::UniformlyDithered { dither, c, .. } => {
            c.unwrap_or_else(|| dither.iter().copied().fold(0.0, f64::max))
        }
        ProcessModel::EmpiricalPermutation { .. } => {
            return Err(Error::capability("no finite-energy certificate for empirical_permutation"))
        }
        _ => hmm_finite_energy_constant(model)?,
    };
    Ok(ModelDiagnostics {
        finite_energy_c: Some(c),
        finite_energy_k: Some(1.0),
        ..ModelDiagnostics::default()
    })
}
