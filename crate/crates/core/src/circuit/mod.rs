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

//! Circuit intermediate representation.
//!
//! A [`Circuit`] is an ordered list of gate placements on `n` qubits. Gates
//! are listed in temporal order: when evaluating, later gates multiply on
//! the left. Qubit 0 is the most significant bit of a basis-state index.

mod apply;
pub mod file;
pub mod qasm;
mod structure;

pub use apply::{apply_left, apply_right, embed};
pub use structure::{CircuitStructure, SlotLayout, TemplateOp};

use crate::error::{Error, Result};
use crate::matcore::{gates, CMatrix, UnitaryMatrix, C64};

/// What a placement applies.
#[derive(Clone, Debug, PartialEq)]
pub enum GateKind {
    /// SQiSW on two qubits. Qubit-symmetric, so targets are kept sorted.
    Sqisw,
    /// `Rz(phi) Ry(theta) Rz(lambda)` with parameters `[theta, phi, lambda]`.
    SingleQubit([f64; 3]),
    /// A fixed matrix of dimension `2^targets.len()`; the first target is
    /// the most significant.
    Fixed(CMatrix),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GatePlacement {
    pub kind: GateKind,
    pub targets: Vec<usize>,
}

impl GatePlacement {
    pub fn sqisw(i: usize, j: usize) -> Self {
        GatePlacement {
            kind: GateKind::Sqisw,
            targets: vec![i.min(j), i.max(j)],
        }
    }

    pub fn single(qubit: usize, params: [f64; 3]) -> Self {
        GatePlacement {
            kind: GateKind::SingleQubit(params),
            targets: vec![qubit],
        }
    }

    pub fn fixed(matrix: CMatrix, targets: Vec<usize>) -> Self {
        GatePlacement {
            kind: GateKind::Fixed(matrix),
            targets,
        }
    }

    /// The gate's own matrix (dimension `2^arity`).
    pub fn matrix(&self) -> CMatrix {
        match &self.kind {
            GateKind::Sqisw => gates::sqisw().into_matrix(),
            GateKind::SingleQubit([t, p, l]) => gates::zyz(*t, *p, *l).into_matrix(),
            GateKind::Fixed(m) => m.clone(),
        }
    }

    pub fn is_multi_qubit(&self) -> bool {
        self.targets.len() >= 2
    }

    fn validate(&self, n_qubits: usize) -> Result<()> {
        for &q in &self.targets {
            if q >= n_qubits {
                return Err(Error::QubitOutOfRange { qubit: q, n_qubits });
            }
        }
        for (a, &q) in self.targets.iter().enumerate() {
            if self.targets[..a].contains(&q) {
                return Err(Error::DuplicateTarget(self.targets.clone()));
            }
        }
        match &self.kind {
            GateKind::Sqisw if self.targets.len() != 2 => {
                Err(Error::InvalidGate("SQiSW needs exactly two targets".into()))
            }
            GateKind::Sqisw if self.targets[0] > self.targets[1] => {
                Err(Error::InvalidGate("SQiSW targets must be sorted".into()))
            }
            GateKind::SingleQubit(p) if self.targets.len() != 1 || p.iter().any(|v| !v.is_finite()) => {
                Err(Error::InvalidGate("single-qubit gate needs one target and finite parameters".into()))
            }
            GateKind::Fixed(m) if m.nrows() != 1 << self.targets.len() || m.ncols() != m.nrows() => {
                Err(Error::InvalidGate(format!(
                    "fixed {}x{} matrix on {} targets",
                    m.nrows(),
                    m.ncols(),
                    self.targets.len()
                )))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    pub n_qubits: usize,
    pub gates: Vec<GatePlacement>,
    /// The evaluated operator is multiplied by `exp(i * global_phase)`.
    pub global_phase: f64,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit {
            n_qubits,
            gates: Vec::new(),
            global_phase: 0.0,
        }
    }

    pub fn push(&mut self, mut gate: GatePlacement) -> Result<()> {
        if gate.kind == GateKind::Sqisw && gate.targets.len() == 2 {
            gate.targets.sort_unstable();
        }
        gate.validate(self.n_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn sqisw(&mut self, i: usize, j: usize) -> Result<()> {
        self.push(GatePlacement::sqisw(i, j))
    }

    pub fn u3(&mut self, qubit: usize, params: [f64; 3]) -> Result<()> {
        self.push(GatePlacement::single(qubit, params))
    }

    pub fn ry(&mut self, qubit: usize, theta: f64) -> Result<()> {
        self.u3(qubit, [theta, 0.0, 0.0])
    }

    pub fn rz(&mut self, qubit: usize, theta: f64) -> Result<()> {
        self.u3(qubit, [0.0, theta, 0.0])
    }

    pub fn fixed(&mut self, matrix: CMatrix, targets: Vec<usize>) -> Result<()> {
        self.push(GatePlacement::fixed(matrix, targets))
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn sqisw_count(&self) -> usize {
        self.gates.iter().filter(|g| g.kind == GateKind::Sqisw).count()
    }

    /// Number of multi-qubit gates that are not SQiSW.
    pub fn other_multi_qubit_count(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| g.kind != GateKind::Sqisw && g.is_multi_qubit())
            .count()
    }

    /// Appends `other`, relabelling its qubit `q` to `map[q]`, and adds its
    /// global phase.
    pub fn append_mapped(&mut self, other: &Circuit, map: &[usize]) -> Result<()> {
        if map.len() != other.n_qubits {
            return Err(Error::InvalidArgument(format!(
                "qubit map has {} entries for a {}-qubit circuit",
                map.len(),
                other.n_qubits
            )));
        }
        for g in &other.gates {
            let targets = g.targets.iter().map(|&q| map[q]).collect();
            self.push(GatePlacement {
                kind: g.kind.clone(),
                targets,
            })?;
        }
        self.global_phase += other.global_phase;
        Ok(())
    }

    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        let map: Vec<usize> = (0..other.n_qubits).collect();
        self.append_mapped(other, &map)
    }

    /// Product of the embedded gates in temporal order, times the global
    /// phase.
    pub fn evaluate(&self) -> UnitaryMatrix {
        let d = 1usize << self.n_qubits;
        let mut m = CMatrix::identity(d, d);
        for g in &self.gates {
            apply_left(&mut m, &g.matrix(), &g.targets, self.n_qubits);
        }
        if self.global_phase != 0.0 {
            m *= C64::from_polar(1.0, self.global_phase);
        }
        UnitaryMatrix::new_unchecked(m)
    }

    /// Positions of the multi-qubit gates in temporal order.
    pub fn structure(&self) -> CircuitStructure {
        let positions = self
            .gates
            .iter()
            .filter(|g| g.targets.len() == 2)
            .map(|g| (g.targets[0].min(g.targets[1]), g.targets[0].max(g.targets[1])))
            .collect();
        CircuitStructure::new_unchecked(self.n_qubits, positions)
    }
}

/// Free-function form of [`Circuit::structure`].
pub fn structure_of(c: &Circuit) -> CircuitStructure {
    c.structure()
}

/// Embeds a 4x4 gate on qubits `(i, j)` of an `n`-qubit register; `i` gets
/// the gate's more significant qubit.
pub fn embed_two_qubit(g: &UnitaryMatrix, pair: (usize, usize), n: usize) -> Result<UnitaryMatrix> {
    if g.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: g.dim(),
        });
    }
    let (i, j) = pair;
    for q in [i, j] {
        if q >= n {
            return Err(Error::QubitOutOfRange { qubit: q, n_qubits: n });
        }
    }
    if i == j {
        return Err(Error::DuplicateTarget(vec![i, j]));
    }
    Ok(UnitaryMatrix::new_unchecked(embed(g.matrix(), &[i, j], n)))
}

/// Evaluates a structure with the given slot parameters.
pub fn instantiate(s: &CircuitStructure, params: &[f64], layout: SlotLayout) -> Result<Circuit> {
    let ops = layout.ops(s);
    let expected = 3 * ops.iter().filter(|o| matches!(o, TemplateOp::Slot { .. })).count();
    if params.len() != expected {
        return Err(Error::ParamLength {
            expected,
            found: params.len(),
        });
    }
    let mut c = Circuit::new(s.n_qubits);
    let mut k = 0;
    for op in ops {
        match op {
            TemplateOp::Slot { qubit } => {
                c.u3(qubit, [params[k], params[k + 1], params[k + 2]])?;
                k += 3;
            }
            TemplateOp::Sqisw(i, j) => c.sqisw(i, j)?,
        }
    }
    Ok(c)
}
