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

use super::*;
use crate::circuit::embed_two_qubit;
use crate::matcore::{error_metric, gates, haar_random_unitary, max_abs_diff, CMatrix};

fn toffoli_scheme_structure() -> CircuitStructure {
    CircuitStructure::three(&[(1, 2), (0, 2), (0, 2), (0, 1), (1, 2), (1, 2), (0, 2), (0, 2)]).unwrap()
}

#[test]
fn slot_derivatives_match_differences() {
    let p = [0.7, -1.3, 2.2];
    let [g, dt, dp, dl] = zyz_with_derivatives(p[0], p[1], p[2]);
    assert!(max_abs_diff(&g, gates::zyz(p[0], p[1], p[2]).matrix()) < 1e-15);
    let h = 1e-6;
    for (k, d) in [dt, dp, dl].iter().enumerate() {
        let mut a = p;
        let mut b = p;
        a[k] += h;
        b[k] -= h;
        let fd = (gates::zyz(a[0], a[1], a[2]).into_matrix() - gates::zyz(b[0], b[1], b[2]).into_matrix())
            / crate::matcore::c(2.0 * h, 0.0);
        assert!(max_abs_diff(d, &fd) < 1e-9, "param {k}");
    }
}

#[test]
fn template_matches_instantiated_circuit() {
    let s = toffoli_scheme_structure();
    let t = Template::new(&s, SlotLayout::Standard);
    let p = random_params(t.param_len(), 4);
    let c = instantiate(&s, &p, SlotLayout::Standard).unwrap();
    assert!(max_abs_diff(&t.evaluate(&p), c.evaluate().matrix()) < 1e-13);
}

#[test]
fn jacobian_matches_differences() {
    let s = CircuitStructure::three(&[(0, 1), (1, 2), (0, 2)]).unwrap();
    let t = Template::new(&s, SlotLayout::Standard);
    let p = random_params(t.param_len(), 8);
    let (c, jac) = t.evaluate_with_jacobian(&p);
    assert!(max_abs_diff(&c, &t.evaluate(&p)) < 1e-14);
    let h = 1e-6;
    for k in 0..t.param_len() {
        let mut a = p.clone();
        let mut b = p.clone();
        a[k] += h;
        b[k] -= h;
        let fd: CMatrix = (t.evaluate(&a) - t.evaluate(&b)) / crate::matcore::c(2.0 * h, 0.0);
        assert!(max_abs_diff(&jac[k], &fd) < 1e-8, "param {k}");
    }
}

#[test]
fn gradient_sanity() {
    let t = Template::new(&toffoli_scheme_structure(), SlotLayout::Standard);
    let worst = gradient_check(&t, gates::toffoli().matrix(), 20, 1e-6, 1);
    assert!(worst < 1e-5, "{worst}");
}

#[test]
fn local_target_fits_empty_structure() {
    let target = haar_random_unitary(2, 1)
        .tensor(&haar_random_unitary(2, 2))
        .tensor(&haar_random_unitary(2, 3));
    let s = CircuitStructure::new(3, vec![]).unwrap();
    let (fit, _) = fit_best(&s, &target, &OptimizerConfig::default()).unwrap();
    assert!(fit.error <= 1e-9, "{}", fit.error);
    let c = fit.to_circuit(&s).unwrap();
    assert!(error_metric(&c.evaluate(), &target).unwrap() <= 1e-9);
}

#[test]
fn sqisw_target_fits_single_gate() {
    let target = embed_two_qubit(&gates::sqisw(), (0, 1), 3).unwrap();
    let s = CircuitStructure::three(&[(0, 1)]).unwrap();
    let (fit, _) = fit_best(&s, &target, &OptimizerConfig::default()).unwrap();
    assert!(fit.error <= 1e-9);
    // The fitted phase makes the circuit equal to the target, not just
    // equivalent up to phase.
    let c = fit.to_circuit(&s).unwrap();
    assert!(max_abs_diff(c.evaluate().matrix(), target.matrix()) < 1e-6);
}

#[test]
fn fit_never_worsens_initial_error() {
    let s = CircuitStructure::three(&[(0, 1), (1, 2)]).unwrap();
    let target = gates::toffoli();
    let cfg = OptimizerConfig {
        max_iterations: 30,
        ..Default::default()
    };
    for r in 0..5 {
        let fit = fit_parameters(&s, &target, &cfg, r).unwrap();
        assert!(fit.error <= fit.initial_error);
        let t = Template::new(&s, SlotLayout::Standard);
        let init = random_params(t.param_len(), derive_seed(&[cfg.seed, r]));
        let e0 = crate::matcore::raw_error_metric(&t.evaluate(&init), target.matrix());
        assert!((e0 - fit.initial_error).abs() < 1e-12);
    }
}

#[test]
fn fit_is_deterministic() {
    let s = CircuitStructure::three(&[(0, 1), (1, 2), (0, 2)]).unwrap();
    let target = haar_random_unitary(8, 5);
    let cfg = OptimizerConfig {
        max_iterations: 50,
        seed: 77,
        ..Default::default()
    };
    let a = fit_parameters(&s, &target, &cfg, 3).unwrap();
    let b = fit_parameters(&s, &target, &cfg, 3).unwrap();
    assert_eq!(a, b);
    let c = fit_parameters(&s, &target, &cfg, 4).unwrap();
    assert_ne!(a.params, c.params);
}

#[test]
fn fit_checks_dimensions_and_config() {
    let s = CircuitStructure::three(&[(0, 1)]).unwrap();
    assert!(matches!(
        fit_parameters(&s, &gates::cnot(), &OptimizerConfig::default(), 0),
        Err(Error::DimensionMismatch { .. })
    ));
    let bad = OptimizerConfig {
        restarts: 0,
        ..Default::default()
    };
    assert!(fit_parameters(&s, &gates::toffoli(), &bad, 0).is_err());
}

#[test]
fn toffoli_structure_is_feasible() {
    let cfg = OptimizerConfig::default();
    let out = search_structures(&[toffoli_scheme_structure()], &gates::toffoli(), &cfg).unwrap();
    let success = out.success.expect("some restart reaches the threshold");
    assert!(success.error <= 1e-6);
    assert_eq!(success.circuit.sqisw_count(), 8);
    assert!(error_metric(&success.circuit.evaluate(), &gates::toffoli()).unwrap() <= 1e-6);
}

#[test]
fn short_toffoli_search_fails_and_reports() {
    let cfg = OptimizerConfig {
        restarts: 2,
        max_iterations: 100,
        ..Default::default()
    };
    let out = toffoli_search(1, 2, &cfg).unwrap();
    assert!(out.success.is_none());
    assert_eq!(out.report.records.len(), 1 + 2);
    assert_eq!(out.report.summary.len(), 2);
    for r in &out.report.records {
        assert!(r.best_so_far.windows(2).all(|w| w[1] <= w[0]));
        assert_eq!(r.best_so_far.last().copied(), Some(r.best_error));
    }
    assert_eq!(out.report.to_json_lines().lines().count(), 3);
    assert!(out.report.summary_table().contains("log10(E)"));
    assert!(matches!(out.require_success(), Err(Error::NotFound { .. })));
}

#[test]
fn search_is_deterministic_across_thread_counts() {
    let base = OptimizerConfig {
        restarts: 2,
        max_iterations: 40,
        seed: 9,
        ..Default::default()
    };
    let a = toffoli_search(2, 3, &base).unwrap();
    let b = toffoli_search(
        2,
        3,
        &OptimizerConfig {
            threads: 3,
            ..base.clone()
        },
    )
    .unwrap();
    assert_eq!(a.report, b.report);
    assert_eq!(a.report.to_json_lines(), b.report.to_json_lines());
}

#[test]
fn average_search_with_identity_target() {
    let cfg = OptimizerConfig::default();
    let out =
        average_error_search_with_targets(1, 3, &cfg, &[UnitaryMatrix::identity(8)]).unwrap();
    // A lone SQiSW is entangling, so the identity first becomes reachable
    // with two gates (SQiSW and a locally equivalent inverse).
    let s = out.success.expect("identity is reachable");
    assert!(s.average_error <= 1e-9);
    assert_eq!(s.structure.len(), 2, "{}", out.report.summary_table());
    assert_eq!(out.report.summary.len(), 2);
    assert!(out.report.summary[0].best_error > 1e-3);
}

#[test]
fn average_search_small_run() {
    let cfg = OptimizerConfig {
        restarts: 2,
        max_iterations: 60,
        haar_samples: 2,
        ..Default::default()
    };
    let out = average_error_search(1, 2, &cfg).unwrap();
    assert!(out.success.is_none());
    for r in &out.report.records {
        assert_eq!(r.per_target.as_ref().map(|v| v.len()), Some(2));
    }
    assert!(average_error_search(3, 2, &cfg).is_err());
}

