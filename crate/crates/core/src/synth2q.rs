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

//! Exact synthesis of two-qubit gates with SQiSW.
//!
//! The number of SQiSW gates is fixed by the Weyl-chamber classification;
//! the interleaved single-qubit gates are then recovered by seeded
//! multi-start least squares against the target (including global phase)
//! and the result is validated.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, CircuitStructure, SlotLayout};
use crate::error::{Error, Result};
use crate::matcore::{error_metric, gates, max_abs_diff, CMatrix, UnitaryMatrix, C64};
use crate::numopt::{derive_seed, fit_template, FitResult, OptimizerConfig, Template};
use crate::weyl::sqisw_cost;

/// Tolerance on `E` for accepting a synthesis.
pub const SYNTH_TOL: f64 = 1e-9;

/// Off-diagonal magnitude allowed in a diagonal remainder or input.
pub const DIAGONAL_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Synth2Options {
    pub restarts: usize,
    pub max_iterations: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for Synth2Options {
    fn default() -> Self {
        Synth2Options {
            restarts: 32,
            max_iterations: 2000,
            seed: 0x5157,
            tol: SYNTH_TOL,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TwoQubitSynthesis {
    pub circuit: Circuit,
    pub sqisw_count: usize,
    /// `E(evaluate(circuit), U)`.
    pub residual_error: f64,
    /// Largest entrywise deviation, global phase included.
    pub max_entry_error: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalRemainderSynthesis {
    /// Exactly two SQiSW gates.
    pub circuit: Circuit,
    /// Diagonal applied after the circuit: `U = delta * evaluate(circuit)`.
    pub delta: UnitaryMatrix,
    pub residual_error: f64,
    pub max_entry_error: f64,
}

impl DiagonalRemainderSynthesis {
    pub fn reconstruct(&self) -> UnitaryMatrix {
        UnitaryMatrix::new_unchecked(self.delta.matrix() * self.circuit.evaluate().matrix())
    }

    pub fn delta_entries(&self) -> [C64; 4] {
        let m = self.delta.matrix();
        [m[(0, 0)], m[(1, 1)], m[(2, 2)], m[(3, 3)]]
    }
}

fn check_dim(u: &UnitaryMatrix) -> Result<()> {
    if u.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: u.dim(),
        });
    }
    Ok(())
}

/// Fits the `count`-SQiSW template to `u` exactly, global phase included.
fn fit_count(u: &UnitaryMatrix, count: usize, opts: &Synth2Options) -> Result<(Circuit, f64, f64)> {
    let s = CircuitStructure::new(2, vec![(0, 1); count])?;
    let t = Template::new(&s, SlotLayout::Standard);
    let cfg = OptimizerConfig {
        restarts: opts.restarts,
        max_iterations: opts.max_iterations,
        seed: opts.seed,
        stop_error: 1e-26,
        ..Default::default()
    };
    let mut best: Option<FitResult> = None;
    for r in 0..opts.restarts {
        let fit = fit_template(&t, u, &cfg, derive_seed(&[opts.seed, count as u64, r as u64]));
        let done = fit.error <= opts.tol * 1e-3;
        if best.as_ref().is_none_or(|b| fit.error < b.error) {
            best = Some(fit);
        }
        if done {
            break;
        }
    }
    let best = best.ok_or_else(|| Error::InvalidArgument("restarts must be positive".into()))?;
    let circuit = best.to_circuit(&s)?;
    let got = circuit.evaluate();
    let e = error_metric(&got, u)?;
    let max_err = max_abs_diff(got.matrix(), u.matrix());
    if !(e <= opts.tol) {
        return Err(Error::ConvergenceFailure {
            best_error: e,
            restarts: opts.restarts,
        });
    }
    Ok((circuit, e, max_err))
}

/// Synthesises `u` with exactly `sqisw_cost(u)` SQiSW gates.
pub fn synthesize_two_qubit(u: &UnitaryMatrix) -> Result<TwoQubitSynthesis> {
    synthesize_two_qubit_with(u, &Synth2Options::default())
}

pub fn synthesize_two_qubit_with(u: &UnitaryMatrix, opts: &Synth2Options) -> Result<TwoQubitSynthesis> {
    check_dim(u)?;
    let count = sqisw_cost(u)?;
    let (circuit, residual_error, max_entry_error) = fit_count(u, count, opts)?;
    Ok(TwoQubitSynthesis {
        circuit,
        sqisw_count: count,
        residual_error,
        max_entry_error,
    })
}

fn yy() -> CMatrix {
    gates::y().tensor(&gates::y()).into_matrix()
}

fn zz_diagonal() -> [f64; 4] {
    [1.0, -1.0, -1.0, 1.0]
}

/// `exp(i psi Z⊗Z)` as a diagonal matrix.
fn exp_zz(psi: f64) -> CMatrix {
    let d = zz_diagonal().map(|s| C64::from_polar(1.0, psi * s));
    CMatrix::from_diagonal(&DVector::from_column_slice(&d))
}

/// Angle `psi` such that `exp(i psi ZZ) U` has a vanishing third
/// coefficient, for `U` in SU(4). Uses `gamma(U) = U (YY) U^T (YY)`, whose
/// trace is real exactly for such gates; `gamma(D U) = D gamma(U) D` for
/// diagonal `D` commuting with `YY`.
fn remainder_angle(us: &CMatrix) -> f64 {
    let yy = yy();
    let gamma = us * &yy * us.transpose() * &yy;
    let a = gamma.trace();
    let zz = zz_diagonal();
    let b: C64 = (0..4).map(|i| gamma[(i, i)] * zz[i]).sum();
    (-a.im).atan2(b.re) / 2.0
}

/// Writes `u = delta * evaluate(circuit)` with `delta` diagonal and exactly
/// two SQiSW gates in the circuit.
pub fn synthesize_with_diagonal(u: &UnitaryMatrix) -> Result<DiagonalRemainderSynthesis> {
    synthesize_with_diagonal_with(u, &Synth2Options::default())
}

pub fn synthesize_with_diagonal_with(
    u: &UnitaryMatrix,
    opts: &Synth2Options,
) -> Result<DiagonalRemainderSynthesis> {
    check_dim(u)?;
    let phase = u.determinant().arg() / 4.0;
    let us = u.matrix() * C64::from_polar(1.0, -phase);
    let psi = remainder_angle(&us);
    let v = UnitaryMatrix::new_unchecked(exp_zz(psi) * &us);
    let (circuit, _, _) = fit_count(&v, 2, opts)?;
    let delta = UnitaryMatrix::new_unchecked(exp_zz(-psi) * C64::from_polar(1.0, phase));
    let mut out = DiagonalRemainderSynthesis {
        circuit,
        delta,
        residual_error: 0.0,
        max_entry_error: 0.0,
    };
    let got = out.reconstruct();
    out.residual_error = error_metric(&got, u)?;
    out.max_entry_error = max_abs_diff(got.matrix(), u.matrix());
    if !(out.residual_error <= opts.tol) {
        return Err(Error::ConvergenceFailure {
            best_error: out.residual_error,
            restarts: opts.restarts,
        });
    }
    Ok(out)
}

/// Largest off-diagonal magnitude.
pub fn off_diagonal_defect(m: &CMatrix) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if i != j {
                worst = worst.max(m[(i, j)].norm());
            }
        }
    }
    worst
}

/// Synthesises a diagonal two-qubit unitary; it is locally an `Rzz`, so at
/// most two SQiSW are used.
pub fn synthesize_diagonal(delta: &UnitaryMatrix) -> Result<Circuit> {
    synthesize_diagonal_with(delta, &Synth2Options::default())
}

pub fn synthesize_diagonal_with(delta: &UnitaryMatrix, opts: &Synth2Options) -> Result<Circuit> {
    check_dim(delta)?;
    let defect = off_diagonal_defect(delta.matrix());
    if defect > DIAGONAL_TOL {
        return Err(Error::NotDiagonal { defect });
    }
    Ok(synthesize_two_qubit_with(delta, opts)?.circuit)
}
