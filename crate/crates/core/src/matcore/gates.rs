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

//! Named gate constants and parameterised rotations.
//!
//! Rotations follow `R_k(t) = exp(-i t/2 k)`. Qubit 0 is the most
//! significant bit of a basis-state index, so in `CNOT` qubit 0 is the
//! control.

use std::f64::consts::FRAC_1_SQRT_2;

use super::{c, CMatrix, UnitaryMatrix, C64};

fn from_rows(dim: usize, rows: &[C64]) -> UnitaryMatrix {
    UnitaryMatrix::new_unchecked(CMatrix::from_row_slice(dim, dim, rows))
}

fn permutation(perm: &[usize]) -> UnitaryMatrix {
    let d = perm.len();
    let mut m = CMatrix::zeros(d, d);
    for (col, &row) in perm.iter().enumerate() {
        m[(row, col)] = c(1.0, 0.0);
    }
    UnitaryMatrix::new_unchecked(m)
}

pub fn i2() -> UnitaryMatrix {
    UnitaryMatrix::identity(2)
}

pub fn x() -> UnitaryMatrix {
    let (o, l) = (c(0.0, 0.0), c(1.0, 0.0));
    from_rows(2, &[o, l, l, o])
}

pub fn y() -> UnitaryMatrix {
    let o = c(0.0, 0.0);
    from_rows(2, &[o, c(0.0, -1.0), c(0.0, 1.0), o])
}

pub fn z() -> UnitaryMatrix {
    let o = c(0.0, 0.0);
    from_rows(2, &[c(1.0, 0.0), o, o, c(-1.0, 0.0)])
}

pub fn h() -> UnitaryMatrix {
    let s = c(FRAC_1_SQRT_2, 0.0);
    from_rows(2, &[s, s, s, -s])
}

pub fn cnot() -> UnitaryMatrix {
    permutation(&[0, 1, 3, 2])
}

pub fn cz() -> UnitaryMatrix {
    diagonal(&[c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)])
}

pub fn swap() -> UnitaryMatrix {
    permutation(&[0, 2, 1, 3])
}

pub fn iswap() -> UnitaryMatrix {
    let (o, l, i) = (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
    from_rows(4, &[l, o, o, o, o, o, i, o, o, i, o, o, o, o, o, l])
}

/// Square root of iSWAP.
pub fn sqisw() -> UnitaryMatrix {
    let (o, l) = (c(0.0, 0.0), c(1.0, 0.0));
    let s = c(FRAC_1_SQRT_2, 0.0);
    let is = c(0.0, FRAC_1_SQRT_2);
    from_rows(4, &[l, o, o, o, o, s, is, o, o, is, s, o, o, o, o, l])
}

/// Doubly-controlled X with qubits 0 and 1 as controls.
pub fn toffoli() -> UnitaryMatrix {
    permutation(&[0, 1, 2, 3, 4, 5, 7, 6])
}

pub fn diagonal(entries: &[C64]) -> UnitaryMatrix {
    UnitaryMatrix::new_unchecked(CMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(
        entries,
    )))
}

pub fn rx(theta: f64) -> UnitaryMatrix {
    let (s, co) = (theta / 2.0).sin_cos();
    from_rows(2, &[c(co, 0.0), c(0.0, -s), c(0.0, -s), c(co, 0.0)])
}

pub fn ry(theta: f64) -> UnitaryMatrix {
    let (s, co) = (theta / 2.0).sin_cos();
    from_rows(2, &[c(co, 0.0), c(-s, 0.0), c(s, 0.0), c(co, 0.0)])
}

pub fn rz(theta: f64) -> UnitaryMatrix {
    let o = c(0.0, 0.0);
    from_rows(
        2,
        &[
            C64::from_polar(1.0, -theta / 2.0),
            o,
            o,
            C64::from_polar(1.0, theta / 2.0),
        ],
    )
}

/// `diag(e^{-it/2}, e^{it/2}, e^{it/2}, e^{-it/2}) = exp(-i t/2 Z(x)Z)`.
pub fn rzz(theta: f64) -> UnitaryMatrix {
    let m = C64::from_polar(1.0, -theta / 2.0);
    let p = C64::from_polar(1.0, theta / 2.0);
    diagonal(&[m, p, p, m])
}

/// `Rz(phi) Ry(theta) Rz(lambda)`, the single-qubit slot parameterisation.
pub fn zyz(theta: f64, phi: f64, lambda: f64) -> UnitaryMatrix {
    let (s, co) = (theta / 2.0).sin_cos();
    let a = C64::from_polar(co, -(phi + lambda) / 2.0);
    let b = C64::from_polar(-s, -(phi - lambda) / 2.0);
    let cc = C64::from_polar(s, (phi - lambda) / 2.0);
    let d = C64::from_polar(co, (phi + lambda) / 2.0);
    from_rows(2, &[a, b, cc, d])
}

/// Magic (Bell) basis change; columns are the magic basis vectors.
pub fn magic_basis() -> CMatrix {
    let s = FRAC_1_SQRT_2;
    let (o, l, i) = (c(0.0, 0.0), c(s, 0.0), c(0.0, s));
    CMatrix::from_row_slice(4, 4, &[l, o, o, i, o, i, l, o, o, i, -l, o, l, o, o, -i])
}

/// Diagonal of `exp(i (x XX + y YY + z ZZ))` in the magic basis.
pub fn canonical_phases(x: f64, y: f64, z: f64) -> [f64; 4] {
    [x - y + z, x + y - z, -x - y - z, -x + y + z]
}

/// `exp(i (x XX + y YY + z ZZ))`.
pub fn canonical_gate(x: f64, y: f64, z: f64) -> UnitaryMatrix {
    let b = magic_basis();
    let ph = canonical_phases(x, y, z);
    let d = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        4,
        ph.iter().map(|&p| C64::from_polar(1.0, p)),
    ));
    UnitaryMatrix::new_unchecked(&b * d * b.adjoint())
}

/// The B gate, `exp(i (pi/4 XX + pi/8 YY))`.
pub fn b_gate() -> UnitaryMatrix {
    use std::f64::consts::PI;
    canonical_gate(PI / 4.0, PI / 8.0, 0.0)
}
