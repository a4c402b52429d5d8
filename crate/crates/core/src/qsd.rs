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

//! Quantum Shannon decomposition into SQiSW and single-qubit gates.
//!
//! Each level splits an `n`-qubit unitary by a cosine-sine decomposition
//! about its top qubit, demultiplexes both block-diagonal factors, and
//! recurses on four `(n-1)`-qubit unitaries. Leaves are two-qubit unitaries
//! on the last two qubits.

mod csd;
mod mux;

pub use csd::cosine_sine_decompose;
pub use mux::{
    demultiplex, gray_code_angles, synthesize_multiplexed_rotation,
    synthesize_multiplexed_rotation_open, Axis, Entangler, MultiplexedRotation, Multiplexor,
};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, GateKind};
use crate::error::{Error, Result};
use crate::matcore::{gates, raw_error_metric, CMatrix, UnitaryMatrix};
use crate::synth2q::{synthesize_two_qubit_with, synthesize_with_diagonal_with, Synth2Options};

/// Largest register accepted by [`qsd_synthesize`].
pub const MAX_QSD_QUBITS: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QsdOptions {
    /// Build the CSD rotation from CZ and merge its last CZ into the
    /// neighbouring multiplexor.
    pub cz_absorption: bool,
    /// Synthesize every leaf but the last up to a diagonal, pushing the
    /// diagonal into the next leaf.
    pub diagonal_absorption: bool,
    pub synth: Synth2Options,
}

impl Default for QsdOptions {
    fn default() -> Self {
        QsdOptions {
            cz_absorption: true,
            diagonal_absorption: true,
            synth: Synth2Options::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountLedger {
    pub sqisw_used: usize,
    /// CZ gates merged into neighbouring multiplexors.
    pub cnot_equivalent_saved: usize,
    /// Leaves synthesized up to a diagonal (one SQiSW saved each).
    pub diagonals_carried: usize,
    pub leaves: usize,
    /// CNOT and CZ gates emitted by the multiplexed rotations.
    pub entanglers: usize,
    pub bound: u64,
    /// `E(evaluate(circuit), U)`.
    pub residual_error: f64,
}

/// Worst-case SQiSW count of [`qsd_synthesize`] for `n` qubits.
pub fn implemented_bound(n: usize, cz_absorption: bool, diagonal_absorption: bool) -> Result<u64> {
    if !(2..=30).contains(&n) {
        return Err(Error::InvalidArgument(format!("bound defined for 2..=30 qubits, got {n}")));
    }
    let leaves = 1u64 << (2 * (n - 2));
    let mut total = 3 * leaves;
    if diagonal_absorption {
        total -= leaves - 1;
    }
    for j in 3..=n {
        let nodes = 1u64 << (2 * (n - j));
        let per_node = 3 * (1u64 << j) - if cz_absorption { 2 } else { 0 };
        total += nodes * per_node;
    }
    Ok(total)
}

/// `(139/192) 4^n - 3 * 2^n + 5/3`, the reference count for `n >= 3`.
pub fn reference_bound(n: usize) -> Result<Ratio<i128>> {
    if !(3..=40).contains(&n) {
        return Err(Error::InvalidArgument(format!("bound defined for 3..=40 qubits, got {n}")));
    }
    let four = Ratio::from_integer(1i128 << (2 * n));
    let two = Ratio::from_integer(1i128 << n);
    Ok(Ratio::new(139, 192) * four - Ratio::from_integer(3) * two + Ratio::new(5, 3))
}

enum Item {
    Leaf(CMatrix),
    Mux {
        top: usize,
        rotation: MultiplexedRotation,
        entangler: Entangler,
        open: bool,
    },
}

fn decompose(u: CMatrix, top: usize, n: usize, cz: bool, items: &mut Vec<Item>) -> Result<()> {
    if n - top == 2 {
        items.push(Item::Leaf(u));
        return Ok(());
    }
    let (mut left, ry, right) = cosine_sine_decompose(&UnitaryMatrix::new_unchecked(u))?;
    if cz {
        let rest = UnitaryMatrix::identity(1 << (n - top - 2));
        let zc = gates::z().tensor(&rest);
        left.blocks[1] = left.blocks[1].multiply(&zc)?;
    }
    let (v_r, rz_r, w_r) = demultiplex(&right.blocks[0], &right.blocks[1])?;
    let (v_l, rz_l, w_l) = demultiplex(&left.blocks[0], &left.blocks[1])?;
    let mux = |rotation, entangler, open| Item::Mux {
        top,
        rotation,
        entangler,
        open,
    };
    decompose(w_r.into_matrix(), top + 1, n, cz, items)?;
    items.push(mux(rz_r, Entangler::Cnot, false));
    decompose(v_r.into_matrix(), top + 1, n, cz, items)?;
    let ent = if cz { Entangler::Cz } else { Entangler::Cnot };
    items.push(mux(ry, ent, cz));
    decompose(w_l.into_matrix(), top + 1, n, cz, items)?;
    items.push(mux(rz_l, Entangler::Cnot, false));
    decompose(v_l.into_matrix(), top + 1, n, cz, items)?;
    Ok(())
}

/// Replaces fixed two-qubit gates by their SQiSW circuits.
struct Lowering {
    synth: Synth2Options,
    cache: Vec<(CMatrix, Circuit)>,
}

impl Lowering {
    fn template(&mut self, m: &CMatrix) -> Result<Circuit> {
        if let Some((_, c)) = self.cache.iter().find(|(k, _)| k == m) {
            return Ok(c.clone());
        }
        let u = UnitaryMatrix::new(m.clone())?;
        let c = synthesize_two_qubit_with(&u, &self.synth)?.circuit;
        self.cache.push((m.clone(), c.clone()));
        Ok(c)
    }

    fn lower_into(&mut self, src: &Circuit, map: &[usize], dst: &mut Circuit) -> Result<()> {
        for g in &src.gates {
            let targets: Vec<usize> = g.targets.iter().map(|&q| map[q]).collect();
            match &g.kind {
                GateKind::Fixed(m) if targets.len() == 2 => {
                    let t = self.template(m)?;
                    dst.append_mapped(&t, &targets)?;
                }
                GateKind::Fixed(_) => {
                    return Err(Error::InvalidGate("unexpected fixed gate in multiplexor".into()))
                }
                kind => dst.push(crate::circuit::GatePlacement {
                    kind: kind.clone(),
                    targets,
                })?,
            }
        }
        dst.global_phase += src.global_phase;
        Ok(())
    }
}

/// Synthesizes an `n`-qubit unitary (`2 <= n <= MAX_QSD_QUBITS`) into
/// SQiSW and single-qubit gates, equal to `u` including global phase.
pub fn qsd_synthesize(u: &UnitaryMatrix, opts: &QsdOptions) -> Result<(Circuit, CountLedger)> {
    let n = u.num_qubits()?;
    if n < 2 {
        return Err(Error::InvalidArgument("QSD needs at least two qubits".into()));
    }
    if n > MAX_QSD_QUBITS {
        return Err(Error::TooLarge(n));
    }
    let bound = implemented_bound(n, opts.cz_absorption, opts.diagonal_absorption)?;
    let mut items = Vec::new();
    decompose(u.matrix().clone(), 0, n, opts.cz_absorption, &mut items)?;
    let leaves = items.iter().filter(|i| matches!(i, Item::Leaf(_))).count();

    let mut circuit = Circuit::new(n);
    let mut lowering = Lowering {
        synth: opts.synth.clone(),
        cache: Vec::new(),
    };
    let mut carry: Option<CMatrix> = None;
    let mut seen = 0;
    let mut ledger = CountLedger {
        sqisw_used: 0,
        cnot_equivalent_saved: 0,
        diagonals_carried: 0,
        leaves,
        entanglers: 0,
        bound,
        residual_error: 0.0,
    };
    let last_pair = [n - 2, n - 1];
    for item in items {
        match item {
            Item::Leaf(m) => {
                seen += 1;
                let m = match carry.take() {
                    Some(d) => m * d,
                    None => m,
                };
                let leaf = UnitaryMatrix::new_unchecked(m);
                if opts.diagonal_absorption && seen < leaves {
                    let s = synthesize_with_diagonal_with(&leaf, &opts.synth)?;
                    circuit.append_mapped(&s.circuit, &last_pair)?;
                    carry = Some(s.delta.into_matrix());
                    ledger.diagonals_carried += 1;
                } else {
                    let s = synthesize_two_qubit_with(&leaf, &opts.synth)?;
                    circuit.append_mapped(&s.circuit, &last_pair)?;
                }
            }
            Item::Mux {
                top,
                rotation,
                entangler,
                open,
            } => {
                let mc = synthesize_multiplexed_rotation_open(&rotation, entangler, open)?;
                ledger.entanglers += mc.other_multi_qubit_count();
                if open {
                    ledger.cnot_equivalent_saved += 1;
                }
                let map: Vec<usize> = (top..n).collect();
                lowering.lower_into(&mc, &map, &mut circuit)?;
            }
        }
    }
    ledger.sqisw_used = circuit.sqisw_count();
    ledger.residual_error = raw_error_metric(circuit.evaluate().matrix(), u.matrix());
    let tol = 1e-7 * n as f64;
    if !(ledger.residual_error <= tol) {
        return Err(Error::Numerical(format!(
            "QSD residual {:e} exceeds {tol:e}",
            ledger.residual_error
        )));
    }
    Ok((circuit, ledger))
}

#[cfg(test)]
mod tests;
