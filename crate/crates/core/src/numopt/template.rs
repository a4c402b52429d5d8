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

//! Fast evaluation of parameterised structures and their derivatives.

use crate::circuit::{apply_left, apply_right, CircuitStructure, SlotLayout, TemplateOp};
use crate::matcore::{gates, CMatrix, C64};

/// A structure expanded into slots and SQiSW gates, ready for repeated
/// evaluation.
#[derive(Clone, Debug)]
pub struct Template {
    pub n_qubits: usize,
    ops: Vec<TemplateOp>,
    n_slots: usize,
    sqisw: CMatrix,
}

/// The slot gate and its derivatives in `theta`, `phi`, `lambda`.
pub fn zyz_with_derivatives(theta: f64, phi: f64, lambda: f64) -> [CMatrix; 4] {
    let (s, co) = (theta / 2.0).sin_cos();
    let ep = |ang: f64| C64::from_polar(1.0, ang);
    let (pa, pb, pc, pd) = (
        ep(-(phi + lambda) / 2.0),
        ep(-(phi - lambda) / 2.0),
        ep((phi - lambda) / 2.0),
        ep((phi + lambda) / 2.0),
    );
    let g = [pa * co, pb * -s, pc * s, pd * co];
    let dt = [pa * (-s / 2.0), pb * (-co / 2.0), pc * (co / 2.0), pd * (-s / 2.0)];
    let half_i = |k: f64| C64::new(0.0, k / 2.0);
    let dp = [g[0] * half_i(-1.0), g[1] * half_i(-1.0), g[2] * half_i(1.0), g[3] * half_i(1.0)];
    let dl = [g[0] * half_i(-1.0), g[1] * half_i(1.0), g[2] * half_i(-1.0), g[3] * half_i(1.0)];
    [g, dt, dp, dl].map(|e| CMatrix::from_row_slice(2, 2, &e))
}

impl Template {
    pub fn new(s: &CircuitStructure, layout: SlotLayout) -> Self {
        let ops = layout.ops(s);
        Template {
            n_qubits: s.n_qubits,
            n_slots: layout.slot_count(s),
            ops,
            sqisw: gates::sqisw().into_matrix(),
        }
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn param_len(&self) -> usize {
        3 * self.n_slots
    }

    fn targets(op: &TemplateOp) -> Vec<usize> {
        match *op {
            TemplateOp::Slot { qubit } => vec![qubit],
            TemplateOp::Sqisw(i, j) => vec![i, j],
        }
    }

    pub fn evaluate(&self, params: &[f64]) -> CMatrix {
        assert_eq!(params.len(), self.param_len(), "parameter length");
        let d = self.dim();
        let mut m = CMatrix::identity(d, d);
        let mut k = 0;
        for op in &self.ops {
            match *op {
                TemplateOp::Slot { qubit } => {
                    let g = gates::zyz(params[k], params[k + 1], params[k + 2]);
                    apply_left(&mut m, g.matrix(), &[qubit], self.n_qubits);
                    k += 3;
                }
                TemplateOp::Sqisw(i, j) => apply_left(&mut m, &self.sqisw, &[i, j], self.n_qubits),
            }
        }
        m
    }

    /// The operator and its derivative with respect to every parameter.
    pub fn evaluate_with_jacobian(&self, params: &[f64]) -> (CMatrix, Vec<CMatrix>) {
        assert_eq!(params.len(), self.param_len(), "parameter length");
        let d = self.dim();
        let n = self.n_qubits;
        let mut locals: Vec<Option<[CMatrix; 4]>> = Vec::with_capacity(self.ops.len());
        let mut k = 0;
        for op in &self.ops {
            match op {
                TemplateOp::Slot { .. } => {
                    locals.push(Some(zyz_with_derivatives(params[k], params[k + 1], params[k + 2])));
                    k += 3;
                }
                TemplateOp::Sqisw(..) => locals.push(None),
            }
        }
        let gate = |idx: usize| -> &CMatrix {
            match &locals[idx] {
                Some(l) => &l[0],
                None => &self.sqisw,
            }
        };

        // prefix[i] = product of gates before op i.
        let mut prefix = Vec::with_capacity(self.ops.len() + 1);
        let mut m = CMatrix::identity(d, d);
        prefix.push(m.clone());
        for (idx, op) in self.ops.iter().enumerate() {
            apply_left(&mut m, gate(idx), &Self::targets(op), n);
            prefix.push(m.clone());
        }
        let full = m;

        let mut jac = vec![CMatrix::zeros(d, d); self.param_len()];
        let mut suffix = CMatrix::identity(d, d);
        let mut k = self.param_len();
        for idx in (0..self.ops.len()).rev() {
            let op = &self.ops[idx];
            let t = Self::targets(op);
            if let Some(l) = &locals[idx] {
                k -= 3;
                for a in 0..3 {
                    let mut x = prefix[idx].clone();
                    apply_left(&mut x, &l[a + 1], &t, n);
                    jac[k + a] = &suffix * x;
                }
            }
            apply_right(&mut suffix, gate(idx), &t, n);
        }
        (full, jac)
    }
}

/// `E = 1 - |tr(T^dag C)| / d` and its gradient.
pub fn error_and_gradient(template: &Template, params: &[f64], target: &CMatrix) -> (f64, Vec<f64>) {
    let (c, jac) = template.evaluate_with_jacobian(params);
    let d = template.dim() as f64;
    let t: C64 = target.conjugate().component_mul(&c).sum();
    let abs = t.norm();
    let e = (1.0 - abs / d).clamp(0.0, 1.0);
    let grad = jac
        .iter()
        .map(|dc| {
            if abs == 0.0 {
                return 0.0;
            }
            let dt: C64 = target.conjugate().component_mul(dc).sum();
            -(t.conj() * dt).re / (abs * d)
        })
        .collect();
    (e, grad)
}

/// Largest relative discrepancy, over `points` random parameter vectors,
/// between the analytic gradient and central differences with step `h`.
/// Discrepancies are measured as `|g - g_fd|_2 / max(|g_fd|_2, 1e-12)`.
pub fn gradient_check(
    template: &Template,
    target: &CMatrix,
    points: usize,
    h: f64,
    seed: u64,
) -> f64 {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let len = template.param_len();
    let err = |p: &[f64]| {
        let c = template.evaluate(p);
        1.0 - target.conjugate().component_mul(&c).sum().norm() / template.dim() as f64
    };
    for _ in 0..points {
        let p: Vec<f64> = (0..len)
            .map(|_| rng.random_range(-std::f64::consts::PI..std::f64::consts::PI))
            .collect();
        let (_, g) = error_and_gradient(template, &p, target);
        let mut diff2 = 0.0;
        let mut norm2 = 0.0;
        for i in 0..len {
            let mut pp = p.clone();
            pp[i] += h;
            let ep = err(&pp);
            pp[i] -= 2.0 * h;
            let em = err(&pp);
            let fd = (ep - em) / (2.0 * h);
            diff2 += (g[i] - fd).powi(2);
            norm2 += fd * fd;
        }
        worst = worst.max(diff2.sqrt() / norm2.sqrt().max(1e-12));
    }
    worst
}
