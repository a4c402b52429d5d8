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

//! Exact Toffoli with eight SQiSW gates.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, CircuitStructure};
use crate::matcore::{error_metric, gates, phase_aligned_distance, UnitaryMatrix, C64};

/// Gate positions of the scheme, in temporal order.
pub const TOFFOLI_POSITIONS: [(usize, usize); 8] =
    [(1, 2), (0, 2), (0, 2), (0, 1), (1, 2), (1, 2), (0, 2), (0, 2)];

/// `arcsin(1 - sqrt 2)`, the value of `theta1` that makes the scheme exact.
pub fn toffoli_solution() -> f64 {
    (1.0 - SQRT_2).asin()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ToffoliScheme {
    pub theta1: f64,
    pub theta2: f64,
    pub theta3: f64,
    pub circuit: Circuit,
}

impl ToffoliScheme {
    pub fn structure(&self) -> CircuitStructure {
        self.circuit.structure()
    }
}

enum Step {
    Ry(usize, f64),
    Rz(usize, f64),
    Sq(usize, usize),
}

/// The scheme with free angle `theta1`; `theta2 = theta1 + pi/2` and
/// `theta3 = theta1 + pi`.
pub fn build_toffoli_scheme(theta1: f64) -> ToffoliScheme {
    use Step::*;
    let theta2 = theta1 + FRAC_PI_2;
    let theta3 = theta1 + PI;
    let steps = [
        Ry(1, FRAC_PI_2),
        Rz(2, FRAC_PI_2),
        Rz(1, -FRAC_PI_2),
        Sq(1, 2),
        Ry(2, FRAC_PI_2),
        Rz(2, FRAC_PI_2),
        Sq(0, 2),
        Sq(0, 2),
        Ry(0, FRAC_PI_2),
        Ry(2, theta1),
        Sq(0, 1),
        Ry(0, FRAC_PI_4),
        Ry(1, -3.0 * FRAC_PI_4),
        Rz(0, FRAC_PI_2),
        Rz(1, FRAC_PI_2),
        Sq(1, 2),
        Rz(1, -PI),
        Ry(2, theta2),
        Sq(1, 2),
        Ry(1, FRAC_PI_2),
        Ry(2, theta3),
        Rz(2, -PI),
        Sq(0, 2),
        Sq(0, 2),
        Ry(0, PI),
        Ry(2, -FRAC_PI_4),
        Rz(0, -FRAC_PI_4),
        Rz(2, FRAC_PI_2),
    ];
    let mut circuit = Circuit::new(3);
    for s in steps {
        match s {
            Ry(q, a) => circuit.ry(q, a),
            Rz(q, a) => circuit.rz(q, a),
            Sq(i, j) => circuit.sqisw(i, j),
        }
        .expect("fixed gates are valid");
    }
    ToffoliScheme {
        theta1,
        theta2,
        theta3,
        circuit,
    }
}

pub fn toffoli_matrix() -> UnitaryMatrix {
    gates::toffoli()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchemeCheck {
    pub sqisw_count: usize,
    /// `E(circuit, Toffoli)`.
    pub error: f64,
    /// Largest entrywise deviation after optimal global-phase alignment.
    pub max_entry_residual: f64,
}

pub fn check_scheme(scheme: &ToffoliScheme) -> SchemeCheck {
    let u = scheme.circuit.evaluate();
    let t = toffoli_matrix();
    SchemeCheck {
        sqisw_count: scheme.circuit.sqisw_count(),
        error: error_metric(&u, &t).expect("both 8x8"),
        max_entry_residual: phase_aligned_distance(u.matrix(), t.matrix()),
    }
}

/// Closed forms of the diagonal-pattern entries as functions of `x`.
/// Indices are 0-based `(row, col)`; the forms use `Rz(t) = diag(1, e^{it})`,
/// which differs from the circuit's `exp(-i t/2 Z)` by an overall
/// `e^{-i pi/8}` for this circuit (its Rz angles sum to `-pi/4`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntryForms {
    pub u00: C64,
    pub u22: C64,
    pub u44: C64,
    pub u76: C64,
}

fn root_of_minus_one(p: f64) -> C64 {
    C64::from_polar(1.0, PI * p)
}

pub fn entry_forms(x: f64) -> EntryForms {
    let (s, sq2) = (x.sin(), SQRT_2);
    let cp = (x / 2.0).cos() + (x / 2.0).sin();
    let i = C64::i();
    let u00 = C64::new(-0.25, 0.25)
        * root_of_minus_one(3.0 / 8.0)
        * cp
        * (C64::new(-2.0, sq2) + (2.0 + sq2) * s);
    let u22 = 0.5 * root_of_minus_one(7.0 / 8.0) * cp * (-i - sq2 + (1.0 + sq2) * s);
    let num = root_of_minus_one(1.0 / 8.0)
        * cp
        * (C64::new(5.0, -1.0) - C64::new(4.0, -1.0) * sq2 + C64::new(-1.0 + sq2, -1.0) * s);
    let den = 2.0 * (root_of_minus_one(0.25) - 1.0).powi(3);
    let u44 = -num / den;
    let u76 = -0.5 * root_of_minus_one(1.0 / 8.0) * cp * (i - sq2 + (1.0 + sq2) * s);
    EntryForms { u00, u22, u44, u76 }
}

/// `(cos(x/2) - sin(x/2)) (1 + (1 + sqrt 2) sin x)`, which multiplies every
/// entry outside the Toffoli pattern.
pub fn off_pattern_factor(x: f64) -> f64 {
    ((x / 2.0).cos() - (x / 2.0).sin()) * (1.0 + (1.0 + SQRT_2) * x.sin())
}

fn in_pattern(r: usize, c: usize) -> bool {
    (r == c && r < 6) || (r, c) == (6, 7) || (r, c) == (7, 6)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryReport {
    pub x: f64,
    /// Largest `|form - e^{-i pi/8} U_rc|` over the eight pattern entries.
    pub formula_residual: f64,
    /// Largest magnitude outside the pattern.
    pub off_pattern_max: f64,
    pub factor: f64,
}

pub fn verify_entry_formulas(x: f64) -> EntryReport {
    let u = build_toffoli_scheme(x).circuit.evaluate();
    let m = u.matrix() * C64::from_polar(1.0, -PI / 8.0);
    let f = entry_forms(x);
    let pairs = [
        (f.u00, (0, 0)),
        (f.u00, (1, 1)),
        (f.u22, (2, 2)),
        (f.u22, (3, 3)),
        (f.u44, (4, 4)),
        (f.u44, (5, 5)),
        (f.u76, (7, 6)),
        (f.u76, (6, 7)),
    ];
    let formula_residual = pairs
        .iter()
        .map(|(v, rc)| (v - m[*rc]).norm())
        .fold(0.0, f64::max);
    let mut off = 0.0f64;
    for r in 0..8 {
        for c in 0..8 {
            if !in_pattern(r, c) {
                off = off.max(m[(r, c)].norm());
            }
        }
    }
    EntryReport {
        x,
        formula_residual,
        off_pattern_max: off,
        factor: off_pattern_factor(x),
    }
}
