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

//! Cosine-sine decomposition about the leading qubit.

use crate::error::{Error, Result};
use crate::matcore::{max_abs_diff, CMatrix, UnitaryMatrix, C64};

use super::mux::{Axis, MultiplexedRotation, Multiplexor};

const CSD_TOL: f64 = 1e-9;

fn polar_unitary(m: CMatrix) -> CMatrix {
    let svd = m.svd(true, true);
    svd.u.expect("requested") * svd.v_t.expect("requested")
}

/// `U = (L0 ⊕ L1) · Ry-mux(theta) · (R0 ⊕ R1)`, where the rotation acts on
/// qubit 0 and is selected by the remaining qubits.
pub fn cosine_sine_decompose(
    u: &UnitaryMatrix,
) -> Result<(Multiplexor, MultiplexedRotation, Multiplexor)> {
    let n = u.num_qubits()?;
    if n < 1 {
        return Err(Error::InvalidArgument("CSD needs at least one qubit".into()));
    }
    let h = u.dim() / 2;
    let m = u.matrix();
    let u00 = m.view((0, 0), (h, h)).into_owned();
    let u01 = m.view((0, h), (h, h)).into_owned();
    let u10 = m.view((h, 0), (h, h)).into_owned();
    let u11 = m.view((h, h), (h, h)).into_owned();

    let svd = u00.svd(true, true);
    let (a, bt) = (svd.u.expect("requested"), svd.v_t.expect("requested"));
    let mut order: Vec<usize> = (0..h).collect();
    // Ascending cosines put the well-conditioned sines first in the QR.
    order.sort_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]));
    let cos: Vec<f64> = order.iter().map(|&i| svd.singular_values[i].min(1.0)).collect();
    let l0 = CMatrix::from_fn(h, h, |r, k| a[(r, order[k])]);
    let r0 = CMatrix::from_fn(h, h, |k, col| bt[(order[k], col)]);

    let t = &u10 * r0.adjoint();
    let qr = t.qr();
    let (q, rr) = (qr.q(), qr.r());
    let mut sin = vec![0.0; h];
    let mut l1 = q;
    for k in 0..h {
        let d = rr[(k, k)];
        sin[k] = d.norm();
        let ph = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for r in 0..h {
            l1[(r, k)] *= ph;
        }
    }

    let from_c = l1.adjoint() * &u11;
    let from_s = l0.adjoint() * &u01;
    let mut r1 = CMatrix::zeros(h, h);
    for k in 0..h {
        for col in 0..h {
            r1[(k, col)] = if cos[k] >= sin[k] {
                from_c[(k, col)] / cos[k]
            } else {
                -from_s[(k, col)] / sin[k]
            };
        }
    }
    let r1 = polar_unitary(r1);

    let theta: Vec<f64> = (0..h).map(|k| 2.0 * sin[k].atan2(cos[k])).collect();
    let left = Multiplexor::new(
        1,
        vec![UnitaryMatrix::new_unchecked(l0), UnitaryMatrix::new_unchecked(l1)],
    )?;
    let right = Multiplexor::new(
        1,
        vec![UnitaryMatrix::new_unchecked(r0), UnitaryMatrix::new_unchecked(r1)],
    )?;
    let ry = MultiplexedRotation::new(Axis::Y, theta)?;

    let recon = left.to_matrix() * ry.to_matrix() * right.to_matrix();
    let err = max_abs_diff(&recon, m);
    if !(err <= CSD_TOL) {
        return Err(Error::Numerical(format!("CSD reconstruction error {err:e}")));
    }
    Ok((left, ry, right))
}
