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

//! Dense complex matrix arithmetic for unitaries.
//!
//! [`CMatrix`] is the raw (unchecked) matrix type. [`UnitaryMatrix`] wraps it
//! and guarantees `max |U^dag U - I| <= UNITARITY_TOL` at construction.

pub mod gates;
mod haar;
pub mod io;

pub use haar::{haar_random_unitary, haar_random_unitary_with_rng};

use nalgebra::DMatrix;
pub use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Raw dense complex matrix.
pub type CMatrix = DMatrix<C64>;

/// Tolerance of the checked unitary constructor.
pub const UNITARITY_TOL: f64 = 1e-10;

/// Largest supported dimension (12 qubits).
pub const MAX_DIM: usize = 1 << 12;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `max_ij |(U^dag U - I)_ij|`.
pub fn unitarity_defect(m: &CMatrix) -> f64 {
    let p = m.adjoint() * m;
    let mut worst = 0.0f64;
    for i in 0..p.nrows() {
        for j in 0..p.ncols() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((p[(i, j)] - C64::new(target, 0.0)).norm());
        }
    }
    worst
}

/// Maximum entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Maximum entrywise distance after multiplying `b` by the global phase that
/// best aligns it with `a`.
pub fn phase_aligned_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    let overlap: C64 = b.conjugate().component_mul(a).sum();
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        C64::new(1.0, 0.0)
    };
    max_abs_diff(a, &(b * phase))
}

/// `log2(dim)` if `dim` is a power of two.
pub fn qubits_for_dim(dim: usize) -> Result<usize> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(dim));
    }
    Ok(dim.trailing_zeros() as usize)
}

/// A square matrix that passed the unitarity check.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix {
    m: CMatrix,
}

impl UnitaryMatrix {
    /// Checked constructor: square, finite, and unitary to [`UNITARITY_TOL`].
    pub fn new(m: CMatrix) -> Result<Self> {
        Self::with_tolerance(m, UNITARITY_TOL)
    }

    pub fn with_tolerance(m: CMatrix, tol: f64) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NotSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        if m.nrows() == 0 || m.nrows() > MAX_DIM {
            return Err(Error::InvalidArgument(format!(
                "unsupported dimension {}",
                m.nrows()
            )));
        }
        for j in 0..m.ncols() {
            for i in 0..m.nrows() {
                let z = m[(i, j)];
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        let defect = unitarity_defect(&m);
        if defect > tol {
            return Err(Error::NotUnitary { defect });
        }
        Ok(UnitaryMatrix { m })
    }

    /// Wraps a matrix without checking it. Callers vouch for unitarity.
    pub fn new_unchecked(m: CMatrix) -> Self {
        debug_assert_eq!(m.nrows(), m.ncols());
        UnitaryMatrix { m }
    }

    pub fn identity(dim: usize) -> Self {
        UnitaryMatrix {
            m: CMatrix::identity(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn num_qubits(&self) -> Result<usize> {
        qubits_for_dim(self.dim())
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.m[(row, col)]
    }

    /// Standard matrix product `self * other`.
    pub fn multiply(&self, other: &UnitaryMatrix) -> Result<UnitaryMatrix> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(UnitaryMatrix {
            m: &self.m * &other.m,
        })
    }

    pub fn dagger(&self) -> UnitaryMatrix {
        UnitaryMatrix {
            m: self.m.adjoint(),
        }
    }

    /// Kronecker product; `self` acts on the more significant qubits.
    pub fn tensor(&self, other: &UnitaryMatrix) -> UnitaryMatrix {
        UnitaryMatrix {
            m: self.m.kronecker(&other.m),
        }
    }

    pub fn scale_phase(&self, phi: f64) -> UnitaryMatrix {
        UnitaryMatrix {
            m: &self.m * C64::from_polar(1.0, phi),
        }
    }

    pub fn trace(&self) -> C64 {
        self.m.trace()
    }

    pub fn determinant(&self) -> C64 {
        self.m.clone().determinant()
    }

    /// Divides by the principal `dim`-th root of the determinant.
    pub fn to_special(&self) -> UnitaryMatrix {
        let det = self.determinant();
        let root = C64::from_polar(1.0, det.arg() / self.dim() as f64);
        UnitaryMatrix { m: &self.m / root }
    }

    pub fn unitarity_defect(&self) -> f64 {
        unitarity_defect(&self.m)
    }

    /// Entrywise distance to `other`, after optimal global-phase alignment.
    pub fn phase_distance(&self, other: &UnitaryMatrix) -> f64 {
        phase_aligned_distance(&self.m, &other.m)
    }
}

impl From<UnitaryMatrix> for CMatrix {
    fn from(u: UnitaryMatrix) -> CMatrix {
        u.m
    }
}

/// `E(U, V) = 1 - |tr(U^dag V)| / dim`, clamped to `[0, 1]`.
pub fn error_metric(u: &UnitaryMatrix, v: &UnitaryMatrix) -> Result<f64> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            found: v.dim(),
        });
    }
    Ok(raw_error_metric(u.matrix(), v.matrix()))
}

/// Unchecked variant of [`error_metric`] for raw matrices of equal shape.
pub fn raw_error_metric(u: &CMatrix, v: &CMatrix) -> f64 {
    let overlap: C64 = u.conjugate().component_mul(v).sum();
    let e = 1.0 - overlap.norm() / u.nrows() as f64;
    e.clamp(0.0, 1.0)
}
