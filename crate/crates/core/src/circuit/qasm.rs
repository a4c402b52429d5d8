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

//! OpenQASM 3 emission for SQiSW + single-qubit circuits.

use std::fmt::Write;

use super::{Circuit, GateKind};
use crate::error::{Error, Result};

/// Body of the `sqisw` gate definition in standard gates, applied in order.
/// `exp(i pi/8 XX)` via a Hadamard frame, then `exp(i pi/8 YY)` via an
/// `rx(pi/2)` frame; both conjugate a CX-Rz-CX `exp(-i t/2 ZZ)` block.
pub const SQISW_DEFINITION: &[(&str, Option<f64>, &[usize])] = &[
    ("h", None, &[0]),
    ("h", None, &[1]),
    ("cx", None, &[0, 1]),
    ("rz", Some(-std::f64::consts::FRAC_PI_4), &[1]),
    ("cx", None, &[0, 1]),
    ("h", None, &[0]),
    ("h", None, &[1]),
    ("rx", Some(std::f64::consts::FRAC_PI_2), &[0]),
    ("rx", Some(std::f64::consts::FRAC_PI_2), &[1]),
    ("cx", None, &[0, 1]),
    ("rz", Some(-std::f64::consts::FRAC_PI_4), &[1]),
    ("cx", None, &[0, 1]),
    ("rx", Some(-std::f64::consts::FRAC_PI_2), &[0]),
    ("rx", Some(-std::f64::consts::FRAC_PI_2), &[1]),
];

fn fmt_angle(a: f64) -> String {
    format!("{a:.17}")
}

/// Emits OpenQASM 3. Single-qubit slots become `U(theta, phi, lambda)`,
/// whose phase convention differs from ours by `exp(i(phi+lambda)/2)`; the
/// difference is folded into a trailing `gphase`.
pub fn to_qasm(c: &Circuit) -> Result<String> {
    let mut out = String::new();
    out.push_str("OPENQASM 3.0;\ninclude \"stdgates.inc\";\n\n");
    out.push_str("// sqisw = sqrt(iSWAP):\n");
    out.push_str("// [[1,0,0,0],[0,1/sqrt(2),i/sqrt(2),0],[0,i/sqrt(2),1/sqrt(2),0],[0,0,0,1]]\n");
    out.push_str("gate sqisw a, b {\n");
    for (name, angle, qs) in SQISW_DEFINITION {
        let args: Vec<&str> = qs.iter().map(|&q| if q == 0 { "a" } else { "b" }).collect();
        match angle {
            Some(t) => writeln!(out, "  {name}({}) {};", fmt_angle(*t), args.join(", ")).unwrap(),
            None => writeln!(out, "  {name} {};", args.join(", ")).unwrap(),
        }
    }
    out.push_str("}\n\n");
    writeln!(out, "qubit[{}] q;", c.n_qubits).unwrap();
    let mut phase = c.global_phase;
    for (idx, g) in c.gates.iter().enumerate() {
        match &g.kind {
            GateKind::Sqisw => {
                writeln!(out, "sqisw q[{}], q[{}];", g.targets[0], g.targets[1]).unwrap();
            }
            GateKind::SingleQubit([t, p, l]) => {
                phase -= (p + l) / 2.0;
                writeln!(
                    out,
                    "U({}, {}, {}) q[{}];",
                    fmt_angle(*t),
                    fmt_angle(*p),
                    fmt_angle(*l),
                    g.targets[0]
                )
                .unwrap();
            }
            GateKind::Fixed(_) => {
                return Err(Error::InvalidGate(format!(
                    "gate {idx} is a fixed matrix; lower it to SQiSW before emitting QASM"
                )))
            }
        }
    }
    if phase != 0.0 {
        writeln!(out, "gphase({});", fmt_angle(phase)).unwrap();
    }
    Ok(out)
}

impl Circuit {
    pub fn to_qasm(&self) -> Result<String> {
        to_qasm(self)
    }
}
