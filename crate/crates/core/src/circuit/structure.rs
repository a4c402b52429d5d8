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

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sequence of two-qubit gate positions `(i, j)` with `i < j`, in temporal
/// order. Ordering is lexicographic on the position list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CircuitStructure {
    pub n_qubits: usize,
    pub positions: Vec<(usize, usize)>,
}

impl CircuitStructure {
    pub fn new(n_qubits: usize, positions: Vec<(usize, usize)>) -> Result<Self> {
        for &(i, j) in &positions {
            if j >= n_qubits {
                return Err(Error::QubitOutOfRange { qubit: j, n_qubits });
            }
            if i >= j {
                return Err(Error::InvalidGate(format!(
                    "structure position ({i}, {j}) must satisfy i < j"
                )));
            }
        }
        Ok(CircuitStructure { n_qubits, positions })
    }

    pub(crate) fn new_unchecked(n_qubits: usize, positions: Vec<(usize, usize)>) -> Self {
        CircuitStructure { n_qubits, positions }
    }

    /// Three-qubit structure from a position list.
    pub fn three(positions: &[(usize, usize)]) -> Result<Self> {
        Self::new(3, positions.to_vec())
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

impl fmt::Display for CircuitStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positions.is_empty() {
            return write!(f, "[]");
        }
        let parts: Vec<String> = self
            .positions
            .iter()
            .map(|(i, j)| format!("({i},{j})"))
            .collect();
        write!(f, "{}", parts.join(""))
    }
}

/// One step of a parameterised template.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TemplateOp {
    /// A general single-qubit gate with three free parameters.
    Slot { qubit: usize },
    Sqisw(usize, usize),
}

/// Where single-qubit slots go around the SQiSW gates of a structure.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SlotLayout {
    /// A slot on every qubit at the start, then a slot on each of the two
    /// qubits touched immediately after every SQiSW: `n + 2N` slots.
    #[default]
    Standard,
}

impl SlotLayout {
    pub fn ops(&self, s: &CircuitStructure) -> Vec<TemplateOp> {
        match self {
            SlotLayout::Standard => {
                let mut ops: Vec<TemplateOp> =
                    (0..s.n_qubits).map(|q| TemplateOp::Slot { qubit: q }).collect();
                for &(i, j) in &s.positions {
                    ops.push(TemplateOp::Sqisw(i, j));
                    ops.push(TemplateOp::Slot { qubit: i });
                    ops.push(TemplateOp::Slot { qubit: j });
                }
                ops
            }
        }
    }

    pub fn slot_count(&self, s: &CircuitStructure) -> usize {
        match self {
            SlotLayout::Standard => s.n_qubits + 2 * s.len(),
        }
    }

    pub fn param_len(&self, s: &CircuitStructure) -> usize {
        3 * self.slot_count(s)
    }
}
