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

//! Two-qubit KAK decomposition and Weyl-chamber geometry.
//!
//! Every `U` in U(4) factors as
//! `U = e^{i phase} g (A0 ⊗ A1) exp(i (x XX + y YY + z ZZ)) (B0 ⊗ B1)`
//! with `g` in `{1, i}`, single-qubit factors in SU(2) and `(x, y, z)` in
//! the canonical chamber `pi/4 >= x >= y >= |z|`, `z >= 0` when `x = pi/4`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8};
use std::fmt;

use nalgebra::{DMatrix, Schur, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::gates::{canonical_gate, canonical_phases, magic_basis};
use crate::matcore::{c, haar_random_unitary_with_rng, max_abs_diff, CMatrix, UnitaryMatrix, C64};

/// Absolute tolerance for all chamber comparisons.
pub const WEYL_TOL: f64 = 1e-9;

/// Reconstruction tolerance for [`kak_decompose`].
pub const KAK_TOL: f64 = 1e-9;

// Inputs whose unitarity defect exceeds this are rejected.
const INPUT_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InteractionCoefficients {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl InteractionCoefficients {
    pub const ZERO: InteractionCoefficients = InteractionCoefficients { x: 0.0, y: 0.0, z: 0.0 };

    pub fn as_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn max_diff(&self, other: &InteractionCoefficients) -> f64 {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }

    pub fn approx_eq(&self, other: &InteractionCoefficients, tol: f64) -> bool {
        self.max_diff(other) <= tol
    }

    /// True if the point satisfies the chamber inequalities within `tol`.
    pub fn is_canonical(&self, tol: f64) -> bool {
        let InteractionCoefficients { x, y, z } = *self;
        x <= FRAC_PI_4 + tol
            && x >= y - tol
            && y >= z.abs() - tol
            && ((x - FRAC_PI_4).abs() > tol || z >= -tol)
    }
}

impl fmt::Display for InteractionCoefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

fn reduce(a: f64) -> f64 {
    let mut v = a.rem_euclid(FRAC_PI_2);
    if v > FRAC_PI_4 {
        v -= FRAC_PI_2;
    }
    if (v + FRAC_PI_4).abs() < 1e-12 {
        v = FRAC_PI_4;
    }
    v
}

/// Maps any triple to its canonical chamber representative using shifts by
/// `pi/2`, sign flips of two coordinates, and permutations.
pub fn canonicalize(v: [f64; 3]) -> InteractionCoefficients {
    let mut r = v.map(reduce);
    r.sort_by(|p, q| q.abs().total_cmp(&p.abs()));
    let [mut a, mut b, mut cc] = r;
    if a < 0.0 {
        a = -a;
        cc = -cc;
    }
    if b < 0.0 {
        b = -b;
        cc = -cc;
    }
    if (a - FRAC_PI_4).abs() <= WEYL_TOL && cc < 0.0 {
        cc = -cc;
    }
    // Normalise negative zeros so output compares and prints cleanly.
    InteractionCoefficients {
        x: a + 0.0,
        y: b + 0.0,
        z: cc + 0.0,
    }
}

fn check_two_qubit(u: &UnitaryMatrix) -> Result<()> {
    if u.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: u.dim(),
        });
    }
    let defect = u.unitarity_defect();
    if !(defect <= INPUT_TOL) {
        return Err(Error::NotUnitary { defect });
    }
    Ok(())
}

struct MagicForm {
    phase: f64,
    up: CMatrix,
    m2: CMatrix,
}

fn magic_form(u: &UnitaryMatrix) -> MagicForm {
    let phase = u.determinant().arg() / 4.0;
    let us = u.matrix() * C64::from_polar(1.0, -phase);
    let b = magic_basis();
    let up = b.adjoint() * us * &b;
    let m2 = up.transpose() * &up;
    MagicForm { phase, up, m2 }
}

// Halved eigenphases with the last fixed so they sum to zero.
fn half_phases(d: [C64; 4]) -> [f64; 4] {
    let mut l = d.map(|v| v.arg() / 2.0);
    l[3] = -(l[0] + l[1] + l[2]);
    l
}

fn raw_coefficients(l: [f64; 4]) -> [f64; 3] {
    [
        (l[0] + l[1] - l[2] - l[3]) / 4.0,
        (l[1] + l[3] - l[0] - l[2]) / 4.0,
        (l[0] + l[3] - l[1] - l[2]) / 4.0,
    ]
}

/// Canonical interaction coefficients `k(U)`, read from the spectrum of
/// `(B^dag U B)^T (B^dag U B)`.
pub fn interaction_coefficients(u: &UnitaryMatrix) -> Result<InteractionCoefficients> {
    check_two_qubit(u)?;
    let mf = magic_form(u);
    let ev = Schur::new(mf.m2).eigenvalues().ok_or_else(|| {
        Error::Numerical("eigenvalues of the magic-basis product did not converge".into())
    })?;
    let d = [ev[0], ev[1], ev[2], ev[3]];
    Ok(canonicalize(raw_coefficients(half_phases(d))))
}

/// Points with `x >= y + |z|`: gates reachable with two SQiSW.
pub fn in_w_prime(k: &InteractionCoefficients) -> bool {
    k.x >= k.y + k.z.abs() - WEYL_TOL
}

/// Minimal number of SQiSW gates needed for `U`, up to single-qubit gates.
pub fn sqisw_cost(u: &UnitaryMatrix) -> Result<usize> {
    Ok(sqisw_cost_of(&interaction_coefficients(u)?))
}

pub fn sqisw_cost_of(k: &InteractionCoefficients) -> usize {
    let sq = InteractionCoefficients {
        x: FRAC_PI_8,
        y: FRAC_PI_8,
        z: 0.0,
    };
    if k.approx_eq(&InteractionCoefficients::ZERO, WEYL_TOL) {
        0
    } else if k.approx_eq(&sq, WEYL_TOL) {
        1
    } else if in_w_prime(k) {
        2
    } else {
        3
    }
}

/// Fraction of `samples` Haar-random two-qubit gates with cost at most 2.
pub fn haar_w_prime_fraction(samples: usize, seed: u64) -> Result<f64> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0usize;
    for _ in 0..samples {
        let u = haar_random_unitary_with_rng(4, &mut rng);
        if sqisw_cost(&u)? <= 2 {
            hits += 1;
        }
    }
    Ok(hits as f64 / samples as f64)
}

#[derive(Clone, Debug, PartialEq)]
pub struct KakDecomposition {
    /// Global phase `arg(det U) / 4`.
    pub phase: f64,
    /// Either `1` or `i`.
    pub g: C64,
    pub a0: UnitaryMatrix,
    pub a1: UnitaryMatrix,
    pub b0: UnitaryMatrix,
    pub b1: UnitaryMatrix,
    pub k: InteractionCoefficients,
}

impl KakDecomposition {
    pub fn reconstruct(&self) -> UnitaryMatrix {
        let a = self.a0.tensor(&self.a1);
        let b = self.b0.tensor(&self.b1);
        let can = canonical_gate(self.k.x, self.k.y, self.k.z);
        let m = a.matrix() * can.matrix() * b.matrix() * (self.g * C64::from_polar(1.0, self.phase));
        UnitaryMatrix::new_unchecked(m)
    }
}

// Real orthogonal P (det +1) diagonalising the complex symmetric unitary
// `m2`. Its real and imaginary parts commute, so a generic real
// combination shares their eigenvectors.
fn real_diagonaliser(m2: &CMatrix) -> Result<DMatrix<f64>> {
    let re = m2.map(|v| v.re);
    let im = m2.map(|v| v.im);
    const MIX: [(f64, f64); 8] = [
        (1.0, 0.0),
        (0.0, 1.0),
        (1.0, 1.0),
        (1.0, -0.5),
        (0.37, 1.13),
        (1.71, -0.29),
        (-0.61, 1.47),
        (2.3, 0.81),
    ];
    let mut best: Option<(f64, DMatrix<f64>)> = None;
    for (a, b) in MIX {
        let s = &re * a + &im * b;
        let s = (&s + s.transpose()) * 0.5;
        let mut p = SymmetricEigen::new(s).eigenvectors;
        if p.determinant() < 0.0 {
            p.column_mut(0).neg_mut();
        }
        let pc = p.map(|v| c(v, 0.0));
        let d = pc.transpose() * m2 * &pc;
        let mut off = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    off = off.max(d[(i, j)].norm());
                }
            }
        }
        if off < 1e-12 {
            return Ok(p);
        }
        if best.as_ref().is_none_or(|(o, _)| off < *o) {
            best = Some((off, p));
        }
    }
    match best {
        Some((off, p)) if off < 1e-9 => Ok(p),
        Some((off, _)) => Err(Error::NotDiagonal { defect: off }),
        None => unreachable!(),
    }
}

const PERMS: [[usize; 4]; 24] = {
    let mut out = [[0usize; 4]; 24];
    let mut n = 0;
    let mut a = 0;
    while a < 4 {
        let mut b = 0;
        while b < 4 {
            let mut cc = 0;
            while cc < 4 {
                if a != b && a != cc && b != cc {
                    let d = 6 - a - b - cc;
                    out[n] = [a, b, cc, d];
                    n += 1;
                }
                cc += 1;
            }
            b += 1;
        }
        a += 1;
    }
    out
};

// Splits a matrix in SU(2) ⊗ SU(2) into its two factors.
fn split_tensor(m: &CMatrix) -> (CMatrix, CMatrix) {
    let (mut r, mut col, mut big) = (0, 0, 0.0);
    for i in 0..4 {
        for j in 0..4 {
            if m[(i, j)].norm() > big {
                big = m[(i, j)].norm();
                r = i;
                col = j;
            }
        }
    }
    let (i0, k0) = (r / 2, r % 2);
    let (j0, l0) = (col / 2, col % 2);
    let a = CMatrix::from_fn(2, 2, |i, j| m[(2 * i + k0, 2 * j + l0)]);
    let b = CMatrix::from_fn(2, 2, |k, l| m[(2 * i0 + k, 2 * j0 + l)]);
    let norm = |x: CMatrix| {
        let det = x[(0, 0)] * x[(1, 1)] - x[(0, 1)] * x[(1, 0)];
        x / det.sqrt()
    };
    let mut a = norm(a);
    let b = norm(b);
    if (a.kronecker(&b) - m).norm() > (a.kronecker(&b) + m).norm() {
        a = -a;
    }
    (a, b)
}

/// Full KAK factorisation, validated by reconstruction.
pub fn kak_decompose(u: &UnitaryMatrix) -> Result<KakDecomposition> {
    check_two_qubit(u)?;
    let mf = magic_form(u);
    let p = real_diagonaliser(&mf.m2)?;
    let pc = p.map(|v| c(v, 0.0));
    let dm = pc.transpose() * &mf.m2 * &pc;
    let lam = half_phases([dm[(0, 0)], dm[(1, 1)], dm[(2, 2)], dm[(3, 3)]]);
    let delta: Vec<C64> = lam.iter().map(|&l| C64::from_polar(1.0, l)).collect();

    let mut k1 = &mf.up * &pc;
    for j in 0..4 {
        let inv = delta[j].conj();
        for i in 0..4 {
            k1[(i, j)] *= inv;
        }
    }
    let k1 = k1.map(|v| v.re);

    let k = canonicalize(raw_coefficients(lam));
    let dc = canonical_phases(k.x, k.y, k.z).map(|ph| C64::from_polar(1.0, ph));

    // Match delta_j = g * s_j * dc[perm[j]] with s_j = ±1.
    let gs = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)];
    let mut best: Option<(f64, usize, [f64; 4], usize)> = None;
    for (pi, perm) in PERMS.iter().enumerate() {
        for (gi, g) in gs.iter().enumerate() {
            let mut signs = [1.0; 4];
            let mut worst = 0.0f64;
            for j in 0..4 {
                let ratio = delta[j] / (g * dc[perm[j]]);
                signs[j] = if ratio.re >= 0.0 { 1.0 } else { -1.0 };
                worst = worst.max((ratio - signs[j]).norm());
            }
            if best.as_ref().is_none_or(|b| worst < b.0) {
                best = Some((worst, pi, signs, gi));
            }
        }
    }
    let (_, pi, signs, gi) = best.expect("non-empty search");
    let perm = PERMS[pi];
    let mut q = DMatrix::<f64>::zeros(4, 4);
    for j in 0..4 {
        q[(j, perm[j])] = 1.0;
    }
    let s = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&signs));
    let mut o1 = k1 * s * &q;
    let mut o2 = q.transpose() * p.transpose();
    if o1.determinant() < 0.0 {
        o1.column_mut(0).neg_mut();
        o2.row_mut(0).neg_mut();
    }

    let b = magic_basis();
    let to_local = |o: &DMatrix<f64>| &b * o.map(|v| c(v, 0.0)) * b.adjoint();
    let (mut a0, a1) = split_tensor(&to_local(&o1));
    let (b0, b1) = split_tensor(&to_local(&o2));
    let mut g = gs[gi];
    if gi >= 2 {
        g = -g;
        a0 = -a0;
    }

    let kak = KakDecomposition {
        phase: mf.phase,
        g,
        a0: UnitaryMatrix::new_unchecked(a0),
        a1: UnitaryMatrix::new_unchecked(a1),
        b0: UnitaryMatrix::new_unchecked(b0),
        b1: UnitaryMatrix::new_unchecked(b1),
        k,
    };
    let err = max_abs_diff(kak.reconstruct().matrix(), u.matrix());
    if !(err <= KAK_TOL) {
        return Err(Error::Numerical(format!(
            "KAK reconstruction error {err:e} exceeds {KAK_TOL:e}"
        )));
    }
    Ok(kak)
}
