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

use thiserror::Error;

/// Errors produced by the synthesis toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not unitary: max |U^dag U - I| = {defect:.3e}")]
    NotUnitary { defect: f64 },

    #[error("matrix is not diagonal: max off-diagonal magnitude {defect:.3e}")]
    NotDiagonal { defect: f64 },

    #[error("qubit index {qubit} out of range for a {n_qubits}-qubit circuit")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },

    #[error("gate targets must be distinct, got {0:?}")]
    DuplicateTarget(Vec<usize>),

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("parameter vector has length {found}, layout expects {expected}")]
    ParamLength { expected: usize, found: usize },

    #[error("parameter solver did not converge: best error {best_error:.3e} after {restarts} restarts")]
    ConvergenceFailure { best_error: f64, restarts: usize },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("no circuit reached the error threshold; best error {best_error:.3e}")]
    NotFound { best_error: f64 },

    #[error("structure space for N = {0} exceeds the enumeration limit")]
    TooLarge(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
