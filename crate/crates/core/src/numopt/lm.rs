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

//! Levenberg-Marquardt fit of a template to a target operator.
//!
//! Residual: the real and imaginary parts of `e^{i phi} C(params) - T`, with
//! the global phase `phi` as an extra unknown. Whenever the phase is optimal,
//! `|r|^2 = 2 d E`, so decreasing the residual decreases `E`.

use nalgebra::{DMatrix, DVector};

use super::template::Template;
use crate::matcore::{CMatrix, C64};

#[derive(Clone, Copy, Debug)]
pub struct LmOptions {
    pub max_iterations: usize,
    /// Stop once `E` falls to this value. The test uses the squared
    /// residual `2 d E`, which stays accurate far below the rounding floor
    /// of `1 - |tr| / d`.
    pub stop_error: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LmOutcome {
    pub params: Vec<f64>,
    pub phase: f64,
    pub error: f64,
    pub initial_error: f64,
    pub iterations: usize,
}

fn overlap(c: &CMatrix, target: &CMatrix) -> C64 {
    target.conjugate().component_mul(c).sum()
}

fn error_of(t: C64, d: usize) -> f64 {
    (1.0 - t.norm() / d as f64).clamp(0.0, 1.0)
}

// Squared residual with the optimal phase, plus that phase.
fn phased_cost(c: &CMatrix, target: &CMatrix) -> (f64, f64) {
    let phase = -overlap(c, target).arg();
    let e = C64::from_polar(1.0, phase);
    let cost = c.iter().zip(target.iter()).map(|(a, b)| (a * e - b).norm_sqr()).sum();
    (cost, phase)
}

pub fn levenberg_marquardt(
    template: &Template,
    target: &CMatrix,
    init: Vec<f64>,
    opts: LmOptions,
) -> LmOutcome {
    let d = template.dim();
    let n = init.len();
    let rows = 2 * d * d;
    let mut params = init.clone();
    let c0 = template.evaluate(&params);
    let initial_error = error_of(overlap(&c0, target), d);
    let (mut cost, mut phase) = phased_cost(&c0, target);
    let mut error = initial_error;
    let mut mu = 1e-3;
    let mut iterations = 0;
    let mut stalled = 0;

    let stop_cost = 2.0 * d as f64 * opts.stop_error;
    while iterations < opts.max_iterations && cost > stop_cost {
        iterations += 1;
        let (c, jac) = template.evaluate_with_jacobian(&params);
        let e = C64::from_polar(1.0, phase);
        let mut jm = DMatrix::<f64>::zeros(rows, n + 1);
        let mut r = DVector::<f64>::zeros(rows);
        let dd = d * d;
        for (idx, (cv, tv)) in c.iter().zip(target.iter()).enumerate() {
            let v = cv * e - tv;
            r[idx] = v.re;
            r[dd + idx] = v.im;
            let w = cv * e * C64::i();
            jm[(idx, n)] = w.re;
            jm[(dd + idx, n)] = w.im;
        }
        for (k, dc) in jac.iter().enumerate() {
            for (idx, v) in dc.iter().enumerate() {
                let w = v * e;
                jm[(idx, k)] = w.re;
                jm[(dd + idx, k)] = w.im;
            }
        }
        let jt = jm.transpose();
        let a = &jt * &jm;
        let g = &jt * &r;
        if g.amax() < 1e-300 {
            break;
        }

        let mut accepted = false;
        while mu < 1e12 {
            let mut m = a.clone();
            for i in 0..=n {
                m[(i, i)] += mu * (1.0 + a[(i, i)]);
            }
            let Some(chol) = m.cholesky() else {
                mu *= 4.0;
                continue;
            };
            let delta = chol.solve(&(-&g));
            let trial: Vec<f64> = params.iter().zip(delta.iter()).map(|(p, q)| p + q).collect();
            let ct = template.evaluate(&trial);
            let (cost_t, phase_t) = phased_cost(&ct, target);
            if cost_t < cost {
                let gain = (cost - cost_t) / cost.max(1e-300);
                stalled = if gain < 1e-12 { stalled + 1 } else { 0 };
                params = trial;
                cost = cost_t;
                phase = phase_t;
                error = error_of(overlap(&ct, target), d);
                mu = (mu / 3.0).max(1e-15);
                accepted = true;
                break;
            }
            mu *= 4.0;
        }
        if !accepted || stalled >= 20 {
            break;
        }
    }

    if error > initial_error {
        // Only reachable through rounding in E; keep the starting point.
        return LmOutcome {
            phase: phased_cost(&c0, target).1,
            params: init,
            error: initial_error,
            initial_error,
            iterations,
        };
    }
    LmOutcome {
        params,
        phase,
        error,
        initial_error,
        iterations,
    }
}
