// Copyright 2026 The sqisw-synth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Parameter fitting for circuit structures and the structure searches
//! built on it.
//!
//! Only single-qubit slot angles (and a global phase) are optimised; the
//! SQiSW gates are fixed.

mod lm;
mod search;
mod template;

pub use lm::{levenberg_marquardt, LmOptions, LmOutcome};
pub use search::{
    average_error_search, average_error_search_with_targets, search_structures, toffoli_search, AverageSuccess, SearchOutcome,
    SearchReport, StructureRecord, SummaryRow, ToffoliSuccess,
};
pub use template::{error_and_gradient, gradient_check, zyz_with_derivatives, Template};

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::{instantiate, Circuit, CircuitStructure, SlotLayout};
use crate::error::{Error, Result};
use crate::matcore::UnitaryMatrix;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_iterations: usize,
    /// Success threshold on `E`.
    pub epsilon: f64,
    pub seed: u64,
    /// Haar targets per structure in [`average_error_search`].
    pub haar_samples: usize,
    /// A single fit stops early once `E` reaches this value.
    pub stop_error: f64,
    /// Worker threads for searches; 0 uses the global pool.
    pub threads: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            restarts: 10,
            max_iterations: 1000,
            epsilon: 1e-6,
            seed: 0,
            haar_samples: 100,
            stop_error: 1e-15,
            threads: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::InvalidArgument("restarts must be at least 1".into()));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::InvalidArgument("epsilon must be positive".into()));
        }
        if !(self.stop_error >= 0.0) {
            return Err(Error::InvalidArgument("stop_error must be non-negative".into()));
        }
        Ok(())
    }

    fn lm_options(&self) -> LmOptions {
        LmOptions {
            max_iterations: self.max_iterations,
            stop_error: self.stop_error,
        }
    }
}

/// Mixes a sequence of integers into one seed (splitmix64 finaliser).
pub fn derive_seed(parts: &[u64]) -> u64 {
    let mut h: u64 = 0x9e37_79b9_7f4a_7c15;
    for &p in parts {
        h ^= p.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(h << 6).wrapping_add(h >> 2);
        let mut z = h;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        h = z ^ (z >> 31);
    }
    h
}

/// Parameters drawn uniformly from `[-pi, pi)`.
pub fn random_params(len: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len).map(|_| rng.random_range(-PI..PI)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub params: Vec<f64>,
    /// Global phase aligning the circuit with the target.
    pub phase: f64,
    pub error: f64,
    pub initial_error: f64,
    pub iterations: usize,
}

impl FitResult {
    pub fn to_circuit(&self, s: &CircuitStructure) -> Result<Circuit> {
        let mut c = instantiate(s, &self.params, SlotLayout::Standard)?;
        c.global_phase = self.phase;
        Ok(c)
    }
}

fn check_target(s: &CircuitStructure, target: &UnitaryMatrix) -> Result<()> {
    let d = 1usize << s.n_qubits;
    if target.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: target.dim(),
        });
    }
    Ok(())
}

/// One seeded fit from a random start.
pub fn fit_template(template: &Template, target: &UnitaryMatrix, cfg: &OptimizerConfig, seed: u64) -> FitResult {
    let init = random_params(template.param_len(), seed);
    let out = levenberg_marquardt(template, target.matrix(), init, cfg.lm_options());
    FitResult {
        params: out.params,
        phase: out.phase,
        error: out.error,
        initial_error: out.initial_error,
        iterations: out.iterations,
    }
}

/// Fits the standard-layout template of `s` to `target`, starting from the
/// random point determined by `(cfg.seed, restart_index)`.
pub fn fit_parameters(
    s: &CircuitStructure,
    target: &UnitaryMatrix,
    cfg: &OptimizerConfig,
    restart_index: u64,
) -> Result<FitResult> {
    cfg.validate()?;
    check_target(s, target)?;
    let t = Template::new(s, SlotLayout::Standard);
    Ok(fit_template(&t, target, cfg, derive_seed(&[cfg.seed, restart_index])))
}

/// Best of `cfg.restarts` fits (strictly smaller error wins; earliest on
/// ties), with the per-restart errors in restart order.
pub fn fit_best(
    s: &CircuitStructure,
    target: &UnitaryMatrix,
    cfg: &OptimizerConfig,
) -> Result<(FitResult, Vec<f64>)> {
    cfg.validate()?;
    check_target(s, target)?;
    let t = Template::new(s, SlotLayout::Standard);
    let mut best: Option<FitResult> = None;
    let mut errors = Vec::with_capacity(cfg.restarts);
    for r in 0..cfg.restarts {
        let fit = fit_template(&t, target, cfg, derive_seed(&[cfg.seed, r as u64]));
        errors.push(fit.error);
        let stop = fit.error <= cfg.stop_error;
        if best.as_ref().is_none_or(|b| fit.error < b.error) {
            best = Some(fit);
        }
        if stop {
            break;
        }
    }
    Ok((best.expect("at least one restart"), errors))
}

#[cfg(test)]
mod tests;
