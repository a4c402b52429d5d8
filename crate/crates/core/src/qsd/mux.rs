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

//! Multiplexors, multiplexed rotations and their circuits.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::Schur;
use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::matcore::{gates, max_abs_diff, CMatrix, UnitaryMatrix, C64};

/// Block-diagonal operator selecting one of `2^controls` blocks by the
/// state of the leading qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct Multiplexor {
    pub controls: usize,
    pub data_qubits: usize,
    pub blocks: Vec<UnitaryMatrix>,
}

impl Multiplexor {
    pub fn new(controls: usize, blocks: Vec<UnitaryMatrix>) -> Result<Self> {
        if blocks.len() != 1 << controls {
            return Err(Error::InvalidArgument(format!(
                "{} blocks for {controls} controls",
                blocks.len()
            )));
        }
        let d = blocks[0].dim();
        if let Some(b) = blocks.iter().find(|b| b.dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: b.dim(),
            });
        }
        let data_qubits = blocks[0].num_qubits()?;
        Ok(Multiplexor {
            controls,
            data_qubits,
            blocks,
        })
    }

    pub fn to_matrix(&self) -> CMatrix {
        let d = 1 << self.data_qubits;
        let total = d * self.blocks.len();
        let mut m = CMatrix::zeros(total, total);
        for (k, b) in self.blocks.iter().enumerate() {
            m.view_mut((k * d, k * d), (d, d)).copy_from(b.matrix());
        }
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    Y,
    Z,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Entangler {
    Cnot,
    Cz,
}

/// Rotation of the first qubit about `axis` by `angles[j]`, where `j` is
/// the state of the remaining qubits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiplexedRotation {
    pub axis: Axis,
    pub angles: Vec<f64>,
}

impl MultiplexedRotation {
    pub fn new(axis: Axis, angles: Vec<f64>) -> Result<Self> {
        if angles.is_empty() || !angles.len().is_power_of_two() {
            return Err(Error::NotPowerOfTwo(angles.len()));
        }
        Ok(MultiplexedRotation { axis, angles })
    }

    pub fn num_controls(&self) -> usize {
        self.angles.len().trailing_zeros() as usize
    }

    pub fn num_qubits(&self) -> usize {
        self.num_controls() + 1
    }

    pub fn to_matrix(&self) -> CMatrix {
        let h = self.angles.len();
        let mut m = CMatrix::zeros(2 * h, 2 * h);
        for (j, &t) in self.angles.iter().enumerate() {
            let r = rotation(self.axis, t);
            for a in 0..2 {
                for b in 0..2 {
                    m[(a * h + j, b * h + j)] = r[(a, b)];
                }
            }
        }
        m
    }
}

fn rotation(axis: Axis, t: f64) -> CMatrix {
    match axis {
        Axis::Y => gates::ry(t).into_matrix(),
        Axis::Z => gates::rz(t).into_matrix(),
    }
}

fn gray(i: usize) -> usize {
    i ^ (i >> 1)
}

/// Circuit angles for the Gray-code staircase: `alpha = 2^-k M^T theta`
/// with `M[j][i] = (-1)^popcount(j & gray(i))`.
pub fn gray_code_angles(theta: &[f64]) -> Vec<f64> {
    let h = theta.len();
    (0..h)
        .map(|i| {
            let g = gray(i);
            let s: f64 = theta
                .iter()
                .enumerate()
                .map(|(j, t)| if (j & g).count_ones() % 2 == 0 { *t } else { -*t })
                .sum();
            s / h as f64
        })
        .collect()
}

/// Control qubit of the entangler following rotation `i`, for a rotation
/// on qubit 0 with controls 1..=k (qubit 1 is the most significant bit of
/// the angle index).
fn entangler_control(i: usize, k: usize) -> usize {
    let h = 1usize << k;
    let next = if i + 1 == h { 0 } else { gray(i + 1) };
    let bit = (gray(i) ^ next).trailing_zeros() as usize;
    k - bit
}

/// Gray-code circuit on `k + 1` qubits (target 0, controls `1..=k`) with
/// exactly `2^k` entanglers for `k >= 1`.
///
/// With `open`, the final entangler (always between qubits 0 and 1) is
/// left out, so the circuit realises `CZ01 · M`. Only a Y-multiplexor
/// built from CZ can be opened, since the dropped gate must be diagonal.
pub fn synthesize_multiplexed_rotation_open(
    m: &MultiplexedRotation,
    entangler: Entangler,
    open: bool,
) -> Result<Circuit> {
    if open && (m.axis != Axis::Y || entangler != Entangler::Cz || m.num_controls() == 0) {
        return Err(Error::InvalidArgument(
            "only a controlled Y-multiplexor with CZ entanglers can be opened".into(),
        ));
    }
    let k = m.num_controls();
    let n = k + 1;
    let mut c = Circuit::new(n);
    let alpha = gray_code_angles(&m.angles);
    if k == 0 {
        match m.axis {
            Axis::Y => c.ry(0, alpha[0]),
            Axis::Z => c.rz(0, alpha[0]),
        }
        .expect("valid");
        return Ok(c);
    }
    // CZ only anticommutes with Y- and X-rotations; a Z-multiplexor is run
    // as an X-multiplexor between Hadamards.
    let hadamard = m.axis == Axis::Z && entangler == Entangler::Cz;
    // H = i Ry(pi/2) Rz(pi).
    let push_h = |c: &mut Circuit| {
        c.u3(0, [FRAC_PI_2, 0.0, PI]).expect("valid");
        c.global_phase += FRAC_PI_2;
    };
    if hadamard {
        push_h(&mut c);
    }
    let ent = match entangler {
        Entangler::Cnot => gates::cnot().into_matrix(),
        Entangler::Cz => gates::cz().into_matrix(),
    };
    let h = alpha.len();
    for (i, &a) in alpha.iter().enumerate() {
        let params = match (m.axis, hadamard) {
            (Axis::Y, _) => [a, 0.0, 0.0],
            // Rx(a) = Rz(-pi/2) Ry(a) Rz(pi/2).
            (Axis::Z, true) => [a, -FRAC_PI_2, FRAC_PI_2],
            (Axis::Z, false) => [0.0, a, 0.0],
        };
        c.u3(0, params).expect("valid");
        if open && i + 1 == h {
            break;
        }
        let ctrl = entangler_control(i, k);
        c.fixed(ent.clone(), vec![ctrl, 0]).expect("valid");
    }
    if hadamard {
        push_h(&mut c);
    }
    Ok(c)
}

pub fn synthesize_multiplexed_rotation(m: &MultiplexedRotation, entangler: Entangler) -> Circuit {
    synthesize_multiplexed_rotation_open(m, entangler, false).expect("closed circuits always build")
}

/// Splits `diag(u1, u2)` as `(I ⊗ V) · Rz-mux · (I ⊗ W)`, from the
/// eigendecomposition `u1 u2^dag = V D^2 V^dag`.
pub fn demultiplex(
    u1: &UnitaryMatrix,
    u2: &UnitaryMatrix,
) -> Result<(UnitaryMatrix, MultiplexedRotation, UnitaryMatrix)> {
    if u1.dim() != u2.dim() {
        return Err(Error::DimensionMismatch {
            expected: u1.dim(),
            found: u2.dim(),
        });
    }
    let d = u1.dim();
    let prod = u1.matrix() * u2.matrix().adjoint();
    let (v, t) = Schur::new(prod).unpack();
    let mut off = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                off = off.max(t[(i, j)].norm());
            }
        }
    }
    if off > 1e-9 {
        return Err(Error::NotDiagonal { defect: off });
    }
    let phases: Vec<f64> = (0..d).map(|i| t[(i, i)].arg() / 2.0).collect();
    let dmat = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        d,
        phases.iter().map(|&p| C64::from_polar(1.0, p)),
    ));
    let w = &dmat * v.adjoint() * u2.matrix();
    let angles = phases.iter().map(|p| -2.0 * p).collect();
    let rz = MultiplexedRotation::new(Axis::Z, angles)?;

    let recon = |mid: &CMatrix| &v * mid * &w;
    let e1 = max_abs_diff(&recon(&dmat), u1.matrix());
    let e2 = max_abs_diff(&recon(&dmat.adjoint()), u2.matrix());
    if !(e1.max(e2) <= 1e-9) {
        return Err(Error::Numerical(format!(
            "demultiplex reconstruction error {:e}",
            e1.max(e2)
        )));
    }
    Ok((UnitaryMatrix::new_unchecked(v), rz, UnitaryMatrix::new_unchecked(w)))
}
