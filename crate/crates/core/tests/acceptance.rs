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


//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sqisw_core::circuit::{CircuitStructure, SlotLayout};
use sqisw_core::matcore::{gates, haar_random_unitary, max_abs_diff, raw_error_metric};
use sqisw_core::numopt::{fit_best, gradient_check, toffoli_search, OptimizerConfig, Template};
use sqisw_core::prune::{closure_census, reverse, closure_count_formula, FormulaVariant, RelabelOp};
use sqisw_core::qsd::{reference_bound, qsd_synthesize, QsdOptions};
use sqisw_core::synth2q::synthesize_two_qubit;
use sqisw_core::toffoli::{
    build_toffoli_scheme, check_scheme, toffoli_solution, verify_entry_formulas, TOFFOLI_POSITIONS,
};
use sqisw_core::weyl::{haar_w_prime_fraction, interaction_coefficients, kak_decompose, sqisw_cost};
use sqisw_core::{error_metric, UnitaryMatrix};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: String) -> Check {
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn weyl_labels() -> Check {
    let q = FRAC_PI_4;
    let cases = [
        ("CNOT", gates::cnot(), [q, 0.0, 0.0]),
        ("iSWAP", gates::iswap(), [q, q, 0.0]),
        ("SWAP", gates::swap(), [q, q, q]),
        ("SWAP^dag", gates::swap().dagger(), [q, q, q]),
        ("B", gates::b_gate(), [q, FRAC_PI_8, 0.0]),
        ("SQiSW", gates::sqisw(), [FRAC_PI_8, FRAC_PI_8, 0.0]),
    ];
    let mut worst = 0.0f64;
    for (name, u, want) in cases {
        let k = interaction_coefficients(&u).map_err(|e| format!("{name}: {e}"))?.as_array();
        let d = (0..3).map(|i| (k[i] - want[i]).abs()).fold(0.0, f64::max);
        if d > 1e-9 {
            return Err(format!("{name}: got {k:?}, expected {want:?}"));
        }
        worst = worst.max(d);
    }
    Ok(format!("6 labels, worst deviation {worst:.1e}"))
}

fn kak_reconstruction() -> Check {
    let mut targets: Vec<(String, UnitaryMatrix)> = vec![
        ("I".into(), UnitaryMatrix::identity(4)),
        ("CNOT".into(), gates::cnot()),
        ("CZ".into(), gates::cz()),
        ("SWAP".into(), gates::swap()),
        ("iSWAP".into(), gates::iswap()),
    ];
    targets.extend((0..1000).map(|i| (format!("haar {i}"), haar_random_unitary(4, 0xACCE_0000 + i))));
    let mut worst = 0.0f64;
    for (name, u) in &targets {
        let kak = kak_decompose(u).map_err(|e| format!("{name}: {e}"))?;
        let err = max_abs_diff(kak.reconstruct().matrix(), u.matrix());
        if err > 1e-8 {
            return Err(format!("{name}: reconstruction error {err:.2e}"));
        }
        worst = worst.max(err);
    }
    Ok(format!("{} gates, worst entry error {worst:.1e}", targets.len()))
}

fn w_prime_mass() -> Check {
    let f = haar_w_prime_fraction(100_000, 0xACCE_0003).map_err(|e| e.to_string())?;
    ensure((f - 0.79).abs() <= 0.01, format!("fraction with cost <= 2: {f:.4}"))
}

fn two_qubit_synthesis() -> Check {
    let mut worst = 0.0f64;
    for i in 0..200 {
        let u = haar_random_unitary(4, 0xACCE_0004_0000 + i);
        let cost = sqisw_cost(&u).map_err(|e| e.to_string())?;
        let s = synthesize_two_qubit(&u).map_err(|e| format!("target {i}: {e}"))?;
        if s.sqisw_count != cost || s.circuit.sqisw_count() != cost {
            return Err(format!("target {i}: {} gates, cost {cost}", s.sqisw_count));
        }
        let e = error_metric(&s.circuit.evaluate(), &u).unwrap();
        if e > 1e-9 {
            return Err(format!("target {i}: E = {e:.2e}"));
        }
        worst = worst.max(e);
    }
    Ok(format!("200 targets, worst E {worst:.1e}"))
}

fn toffoli_exactness() -> Check {
    let check = check_scheme(&build_toffoli_scheme(toffoli_solution()));
    if check.sqisw_count != 8 || check.max_entry_residual > 1e-12 {
        return Err(format!("{} SQiSW, residual {:.2e}", check.sqisw_count, check.max_entry_residual));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0005);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let x: f64 = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
        let r = verify_entry_formulas(x);
        if r.formula_residual > 1e-10 {
            return Err(format!("entry formulas off by {:.2e} at x = {x}", r.formula_residual));
        }
        worst = worst.max(r.formula_residual);
    }
    Ok(format!(
        "8 SQiSW, residual {:.1e}; entry formulas worst {worst:.1e} over 20 x",
        check.max_entry_residual
    ))
}

fn qsd_pipeline() -> Check {
    let on = QsdOptions::default();
    let off = QsdOptions {
        cz_absorption: false,
        ..QsdOptions::default()
    };
    let mut lines = Vec::new();
    for (n, count, tol) in [(3usize, 20u64, 1e-7), (4, 5, 1e-6)] {
        let mut worst = 0.0f64;
        let (mut used_on, mut used_off) = (0, 0);
        for i in 0..count {
            let u = haar_random_unitary(1 << n, 0xACCE_0006_0000 + 100 * n as u64 + i);
            let (c_on, l_on) = qsd_synthesize(&u, &on).map_err(|e| format!("n={n} #{i}: {e}"))?;
            let (c_off, l_off) = qsd_synthesize(&u, &off).map_err(|e| format!("n={n} #{i}: {e}"))?;
            for (c, l) in [(&c_on, &l_on), (&c_off, &l_off)] {
                let e = raw_error_metric(c.evaluate().matrix(), u.matrix());
                if e > tol {
                    return Err(format!("n={n} #{i}: E = {e:.2e}"));
                }
                if l.sqisw_used as u64 > l.bound {
                    return Err(format!("n={n} #{i}: {} SQiSW above bound {}", l.sqisw_used, l.bound));
                }
                worst = worst.max(e);
            }
            if l_on.sqisw_used >= l_off.sqisw_used {
                return Err(format!(
                    "n={n} #{i}: CZ absorption gives {} vs {} without",
                    l_on.sqisw_used, l_off.sqisw_used
                ));
            }
            used_on = l_on.sqisw_used.max(used_on);
            used_off = l_off.sqisw_used.max(used_off);
        }
        lines.push(format!("n={n}: worst E {worst:.1e}, max SQiSW {used_on} (vs {used_off} without CZ absorption)"));
    }
    Ok(lines.join("; "))
}

fn bound_arithmetic() -> Check {
    let b3 = reference_bound(3).map_err(|e| e.to_string())?;
    if b3 != Ratio::from_integer(24) {
        return Err(format!("reference_bound(3) = {b3}"));
    }
    // 576 * bound = 417 * 4^n - 1728 * 2^n + 960, evaluated in integers.
    for n in 3..=10u32 {
        let num = 417 * 4i128.pow(n) - 1728 * 2i128.pow(n) + 960;
        let expect = Ratio::new(num, 576);
        let got = reference_bound(n as usize).map_err(|e| e.to_string())?;
        if got != expect {
            return Err(format!("reference_bound({n}) = {got}, integer route {expect}"));
        }
    }
    Ok(format!("reference_bound(3) = 24; n = 3..10 exact, e.g. reference_bound(10) = {}", reference_bound(10).unwrap()))
}

fn pruning_census() -> Check {
    let mut sizes = Vec::new();
    let mut notes = Vec::new();
    for n in 1..=9usize {
        let c = closure_census(n).map_err(|e| e.to_string())?;
        if c.covered() != 3u64.pow(n as u32) {
            return Err(format!("N={n}: 3c3+6c6+12c12 = {}", c.covered()));
        }
        let size = Ratio::from_integer(c.closures() as i128);
        let st = closure_count_formula(n, FormulaVariant::FloorTerm).unwrap();
        let pf = closure_count_formula(n, FormulaVariant::HalfTerm).unwrap();
        if n % 2 == 0 && st != size {
            return Err(format!("N={n}: census {size}, floor-term formula {st}"));
        }
        if pf != size {
            return Err(format!("N={n}: census {size}, half-term formula {pf}"));
        }
        if st != size {
            notes.push(format!("N={n} floor-term {st} vs census {size}"));
        }
        sizes.push(c.closures());
    }
    if sizes[..4] != [1, 2, 4, 10] {
        return Err(format!("pruned sizes {:?}", &sizes[..4]));
    }
    Ok(format!("sizes {sizes:?}; floor-term formula discrepancies: {}", notes.join(", ")))
}

fn desk_search() -> Check {
    let cfg = OptimizerConfig::default();
    let toffoli = gates::toffoli();
    let s = CircuitStructure::new(3, TOFFOLI_POSITIONS.to_vec()).unwrap();
    let (best, _) = fit_best(&s, &toffoli, &cfg).map_err(|e| e.to_string())?;
    if best.error > 1e-6 {
        return Err(format!("(a) fixed structure best E {:.2e}", best.error));
    }
    let out = toffoli_search(1, 4, &cfg).map_err(|e| e.to_string())?;
    if let Some(found) = out.success {
        return Err(format!("(b) {} reached E {:.2e}", found.structure, found.error));
    }
    let low = out.report.best_error();
    let template = Template::new(&s, SlotLayout::Standard);
    let g = gradient_check(&template, toffoli.matrix(), 100, 1e-6, 0xACCE_0009);
    if !(g < 1e-5) {
        return Err(format!("(c) gradient relative error {g:.2e}"));
    }
    Ok(format!(
        "(a) E {:.1e}; (b) best over N<=4 {low:.2e} ({} structures); (c) gradient error {g:.1e}",
        best.error,
        out.report.records.len()
    ))
}

fn pruning_soundness() -> Check {
    let cfg = OptimizerConfig::default();
    let toffoli = gates::toffoli();
    let pairs = [(0, 1), (0, 2), (1, 2)];
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0010);
    let mut lines = Vec::new();
    for _ in 0..5 {
        let positions = (0..4).map(|_| pairs[rng.random_range(0..3)]).collect();
        let c = CircuitStructure::new(3, positions).unwrap();
        let op = RelabelOp::ALL[rng.random_range(0..6)];
        let image = reverse(&op.apply(&c));
        let (a, _) = fit_best(&c, &toffoli, &cfg).map_err(|e| e.to_string())?;
        let (b, _) = fit_best(&image, &toffoli, &cfg).map_err(|e| e.to_string())?;
        let ratio = a.error.max(b.error) / a.error.min(b.error);
        if !(ratio <= 10.0) {
            return Err(format!("{c} -> {image}: {:.3e} vs {:.3e}", a.error, b.error));
        }
        lines.push(format!("{c}->{image} ratio {ratio:.2}"));
    }
    Ok(lines.join(", "))
}

fn main() {
    let criteria: [(&str, fn() -> Check, u64); 10] = [
        ("1 weyl labels", weyl_labels, 1),
        ("2 KAK reconstruction", kak_reconstruction, 30),
        ("3 W' mass", w_prime_mass, 120),
        ("4 two-qubit synthesis", two_qubit_synthesis, 600),
        ("5 Toffoli exactness", toffoli_exactness, 1),
        ("6 QSD pipeline", qsd_pipeline, 300),
        ("7 bound arithmetic", bound_arithmetic, 1),
        ("8 pruning census", pruning_census, 120),
        ("9 desk-scale search", desk_search, 1200),
        ("10 pruning soundness", pruning_soundness, 600),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let over = took > Duration::from_secs(budget);
        let (tag, detail) = match (&result, over) {
            (Ok(msg), false) => ("PASS", msg.clone()),
            (Ok(msg), true) => ("FAIL", format!("{msg}; over the {budget} s budget")),
            (Err(msg), _) => ("FAIL", msg.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("{tag} [{name}] {detail} ({:.2} s)", took.as_secs_f64());
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
