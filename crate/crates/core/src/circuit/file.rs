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

//! JSON circuit files.
//!
//! ```text
//! {"qubits": n,
//!  "gates": [{"kind": "sqisw", "targets": [i, j]},
//!            {"kind": "u1", "target": q, "params": [theta, phi, lambda]}],
//!  "global_phase": phi}
//! ```
//!
//! Fixed matrices, which only appear in intermediate circuits, are written
//! as `{"kind": "unitary", "targets": [...], "re": [[...]], "im": [[...]]}`.

use serde::{Deserialize, Serialize};

use super::{Circuit, GateKind, GatePlacement};
use crate::error::{Error, Result};
use crate::matcore::io::MatrixFile;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GateRecord {
    Sqisw { targets: [usize; 2] },
    U1 { target: usize, params: [f64; 3] },
    Unitary {
        targets: Vec<usize>,
        re: Vec<Vec<f64>>,
        im: Vec<Vec<f64>>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CircuitFile {
    pub qubits: usize,
    pub gates: Vec<GateRecord>,
    #[serde(default)]
    pub global_phase: f64,
}

impl From<&Circuit> for CircuitFile {
    fn from(c: &Circuit) -> Self {
        let gates = c
            .gates
            .iter()
            .map(|g| match &g.kind {
                GateKind::Sqisw => GateRecord::Sqisw {
                    targets: [g.targets[0], g.targets[1]],
                },
                GateKind::SingleQubit(p) => GateRecord::U1 {
                    target: g.targets[0],
                    params: *p,
                },
                GateKind::Fixed(m) => {
                    let f = MatrixFile::from_matrix(m);
                    GateRecord::Unitary {
                        targets: g.targets.clone(),
                        re: f.re,
                        im: f.im,
                    }
                }
            })
            .collect();
        CircuitFile {
            qubits: c.n_qubits,
            gates,
            global_phase: c.global_phase,
        }
    }
}

impl TryFrom<&CircuitFile> for Circuit {
    type Error = Error;

    fn try_from(f: &CircuitFile) -> Result<Circuit> {
        let mut c = Circuit::new(f.qubits);
        c.global_phase = f.global_phase;
        for (idx, g) in f.gates.iter().enumerate() {
            let placement = match g {
                GateRecord::Sqisw { targets } => GatePlacement::sqisw(targets[0], targets[1]),
                GateRecord::U1 { target, params } => GatePlacement::single(*target, *params),
                GateRecord::Unitary { targets, re, im } => {
                    let mf = MatrixFile {
                        dim: 1 << targets.len(),
                        re: re.clone(),
                        im: im.clone(),
                    };
                    GatePlacement::fixed(mf.to_matrix()?, targets.clone())
                }
            };
            c.push(placement)
                .map_err(|e| Error::Parse(format!("gates[{idx}]: {e}")))?;
        }
        Ok(c)
    }
}

impl Circuit {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&CircuitFile::from(self)).expect("circuit serialises")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&CircuitFile::from(self)).expect("circuit serialises")
    }

    pub fn from_json(text: &str) -> Result<Circuit> {
        let f: CircuitFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Circuit::try_from(&f)
    }
}
