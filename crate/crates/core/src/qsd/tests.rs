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


use num_rational::Ratio;
use proptest::prelude::*;

use super::*;
use crate::matcore::{gates, haar_random_unitary, max_abs_diff, C64};

fn kron_oracle(axis: Axis, angles: &[f64]) -> CMatrix {
    // sum_j R(theta_j) (x) |j><j|
    let h = angles.len();
    let mut acc = CMatrix::zeros(2 * h, 2 * h);
    for (j, &t) in angles.iter().enumerate() {
        let r = match axis {
            Axis::Y => gates::ry(t).into_matrix(),
            Axis::Z => gates::rz(t).into_matrix(),
        };
        let mut proj = CMatrix::zeros(h, h);
        proj[(j, j)] = C64::new(1.0, 0.0);
        acc += r.kronecker(&proj);
    }
    acc
}

fn angles(k: usize, seed: u64) -> Vec<f64> {
    (0..1usize << k)
        .map(|j| ((seed as f64 + 1.0) * 0.7331 + j as f64 * 1.917).sin() * 3.0)
        .collect()
}

#[test]
fn multiplexed_rotation_matrix_matches_projector_sum() {
    for axis in [Axis::Y, Axis::Z] {
        for k in 0..4 {
            let a = angles(k, k as u64);
            let m = MultiplexedRotation::new(axis, a.clone()).unwrap();
            assert!(max_abs_diff(&m.to_matrix(), &kron_oracle(axis, &a)) < 1e-15);
        }
    }
}

#[test]
fn one_control_angles_are_half_sum_and_difference() {
    let (t1, t2) = (0.9, -0.4);
    let a = gray_code_angles(&[t1, t2]);
    assert!((a[0] - (t1 + t2) / 2.0).abs() < 1e-15);
    assert!((a[1] - (t1 - t2) / 2.0).abs() < 1e-15);
}

#[test]
fn gray_code_circuits_are_exact_with_one_entangler_per_angle() {
    for axis in [Axis::Y, Axis::Z] {
        for ent in [Entangler::Cnot, Entangler::Cz] {
            for k in 0..5 {
                let m = MultiplexedRotation::new(axis, angles(k, 3 + k as u64)).unwrap();
                let c = synthesize_multiplexed_rotation(&m, ent);
                let expected = if k == 0 { 0 } else { 1 << k };
                assert_eq!(c.other_multi_qubit_count(), expected, "{axis:?} {ent:?} k={k}");
                let err = max_abs_diff(c.evaluate().matrix(), &m.to_matrix());
                assert!(err <= 1e-10, "{axis:?} {ent:?} k={k}: {err:e}");
            }
        }
    }
}

#[test]
fn open_circuit_drops_a_boundary_cz() {
    for k in 1..4 {
        let m = MultiplexedRotation::new(Axis::Y, angles(k, 11)).unwrap();
        let c = synthesize_multiplexed_rotation_open(&m, Entangler::Cz, true).unwrap();
        assert_eq!(c.other_multi_qubit_count(), (1 << k) - 1);
        let cz01 = gates::cz().tensor(&UnitaryMatrix::identity(1 << (k - 1)));
        let expect = cz01.matrix() * m.to_matrix();
        assert!(max_abs_diff(c.evaluate().matrix(), &expect) < 1e-10);
    }
    let z = MultiplexedRotation::new(Axis::Z, angles(2, 1)).unwrap();
    assert!(synthesize_multiplexed_rotation_open(&z, Entangler::Cz, true).is_err());
}

fn check_csd(u: &UnitaryMatrix) {
    let (l, ry, r) = cosine_sine_decompose(u).unwrap();
    for b in l.blocks.iter().chain(r.blocks.iter()) {
        assert!(b.unitarity_defect() < 1e-10);
    }
    let recon = l.to_matrix() * ry.to_matrix() * r.to_matrix();
    assert!(max_abs_diff(&recon, u.matrix()) < 1e-10);
}

#[test]
fn csd_reconstructs_random_and_structured_unitaries() {
    for n in 1..=5 {
        for s in 0..5 {
            check_csd(&haar_random_unitary(1 << n, 100 * n as u64 + s));
        }
    }
    for u in [
        UnitaryMatrix::identity(8),
        gates::toffoli(),
        gates::cnot(),
        gates::swap(),
        gates::x().tensor(&gates::i2()),
        gates::h().tensor(&gates::cnot()),
        gates::sqisw().tensor(&gates::h()),
    ] {
        check_csd(&u);
    }
}

#[test]
fn demultiplex_reconstructs_both_blocks() {
    let id = UnitaryMatrix::identity(4);
    let cases = [
        (haar_random_unitary(4, 1), haar_random_unitary(4, 2)),
        (haar_random_unitary(8, 3), haar_random_unitary(8, 4)),
        (id.clone(), id.clone()),
        (gates::cnot(), id.clone()),
        (haar_random_unitary(4, 5), haar_random_unitary(4, 5)),
    ];
    for (u1, u2) in cases {
        let (v, rz, w) = demultiplex(&u1, &u2).unwrap();
        assert_eq!(rz.axis, Axis::Z);
        let d = u1.dim();
        let iv = CMatrix::identity(2, 2).kronecker(v.matrix());
        let iw = CMatrix::identity(2, 2).kronecker(w.matrix());
        let mut block = CMatrix::zeros(2 * d, 2 * d);
        block.view_mut((0, 0), (d, d)).copy_from(u1.matrix());
        block.view_mut((d, d), (d, d)).copy_from(u2.matrix());
        assert!(max_abs_diff(&(iv * rz.to_matrix() * iw), &block) < 1e-10);
    }
}

#[test]
fn bounds_table() {
    assert_eq!(implemented_bound(2, true, true).unwrap(), 3);
    assert_eq!(implemented_bound(3, true, true).unwrap(), 31);
    assert_eq!(implemented_bound(3, false, false).unwrap(), 36);
    assert_eq!(implemented_bound(3, true, false).unwrap(), 34);
    assert_eq!(implemented_bound(3, false, true).unwrap(), 33);
    assert_eq!(implemented_bound(4, true, true).unwrap(), 167);
    assert_eq!(implemented_bound(4, false, false).unwrap(), 192);
    assert_eq!(reference_bound(3).unwrap(), Ratio::from_integer(24));
    assert_eq!(reference_bound(4).unwrap(), Ratio::from_integer(139));
    assert_eq!(reference_bound(5).unwrap(), Ratio::from_integer(647));
    assert!(implemented_bound(1, true, true).is_err());
    assert!(reference_bound(2).is_err());
}

#[test]
fn closed_form_bound_matches_level_recurrence() {
    for cz in [false, true] {
        for diag in [false, true] {
            // c_2 = 3, c_j = 4 c_{j-1} + 3 * 2^j - 2[cz] - 3[diag]
            let mut c = 3u64;
            for j in 3..=10usize {
                c = 4 * c + 3 * (1 << j) - if cz { 2 } else { 0 } - if diag { 3 } else { 0 };
                assert_eq!(implemented_bound(j, cz, diag).unwrap(), c);
            }
        }
    }
}

fn run(u: &UnitaryMatrix, cz: bool, diag: bool) -> (Circuit, CountLedger) {
    let opts = QsdOptions {
        cz_absorption: cz,
        diagonal_absorption: diag,
        ..QsdOptions::default()
    };
    qsd_synthesize(u, &opts).unwrap()
}

#[test]
fn qsd_is_exact_and_within_bound() {
    for n in 2..=4 {
        for s in 0..2 {
            let u = haar_random_unitary(1 << n, 40 + 10 * n as u64 + s);
            for (cz, diag) in [(true, true), (false, false), (true, false), (false, true)] {
                let (c, ledger) = run(&u, cz, diag);
                assert!(ledger.residual_error <= 1e-7 * n as f64);
                assert!(max_abs_diff(c.evaluate().matrix(), u.matrix()) < 1e-6);
                assert_eq!(ledger.sqisw_used, c.sqisw_count());
                assert_eq!(c.other_multi_qubit_count(), 0);
                assert!(ledger.sqisw_used as u64 <= ledger.bound, "n={n} {ledger:?}");
                assert_eq!(ledger.leaves, 1 << (2 * (n - 2)));
            }
        }
    }
}

#[test]
fn cz_absorption_reduces_count() {
    for n in 3..=4 {
        let u = haar_random_unitary(1 << n, 900 + n as u64);
        let (_, on) = run(&u, true, true);
        let (_, off) = run(&u, false, true);
        assert!(on.sqisw_used < off.sqisw_used, "{on:?} {off:?}");
        assert_eq!(on.cnot_equivalent_saved, ((1 << (2 * (n - 2))) - 1) / 3);
        assert_eq!(off.cnot_equivalent_saved, 0);
    }
}

#[test]
fn qsd_handles_structured_targets() {
    for u in [gates::toffoli(), UnitaryMatrix::identity(8), gates::cnot().tensor(&gates::h())] {
        let (c, ledger) = run(&u, true, true);
        assert!(ledger.residual_error <= 3e-7);
        assert!(ledger.sqisw_used as u64 <= ledger.bound);
        assert!(max_abs_diff(c.evaluate().matrix(), u.matrix()) < 1e-6);
    }
}

#[test]
fn qsd_rejects_single_qubit_input() {
    assert!(qsd_synthesize(&gates::h(), &QsdOptions::default()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn gray_code_angles_invert_walsh_transform(theta in prop::collection::vec(-3.0f64..3.0, 8)) {
        let alpha = gray_code_angles(&theta);
        for (j, t) in theta.iter().enumerate() {
            let back: f64 = alpha.iter().enumerate().map(|(i, a)| {
                let g = i ^ (i >> 1);
                if (j & g).count_ones() % 2 == 0 { *a } else { -*a }
            }).sum();
            prop_assert!((back - t).abs() < 1e-12);
        }
    }
}
