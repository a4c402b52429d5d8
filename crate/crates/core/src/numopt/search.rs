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

//! Structure searches over pruned three-qubit structure spaces.

use std::fmt::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{derive_seed, fit_template, FitResult, OptimizerConfig, Template};
use crate::circuit::{Circuit, CircuitStructure, SlotLayout};
use crate::error::{Error, Result};
use crate::matcore::{gates, haar_random_unitary, UnitaryMatrix};
use crate::prune::enumerate_pruned;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureRecord {
    pub n_gates: usize,
    pub structure: Vec<(usize, usize)>,
    /// Best error over restarts; for the average search, the mean over
    /// targets of the per-target best.
    pub best_error: f64,
    pub best_params: Vec<f64>,
    pub restarts_used: usize,
    /// Running minimum over the restart sequence (first target only for the
    /// average search).
    pub best_so_far: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub per_target: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub n_gates: usize,
    pub structures: usize,
    pub best_error: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub records: Vec<StructureRecord>,
    pub summary: Vec<SummaryRow>,
}

impl SearchReport {
    fn push_level(&mut self, n_gates: usize, records: Vec<StructureRecord>) {
        let best = records.iter().map(|r| r.best_error).fold(f64::INFINITY, f64::min);
        self.summary.push(SummaryRow {
            n_gates,
            structures: records.len(),
            best_error: best,
        });
        self.records.extend(records);
    }

    pub fn best_error(&self) -> f64 {
        self.summary.iter().map(|r| r.best_error).fold(f64::INFINITY, f64::min)
    }

    /// One JSON object per structure record.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("record serialises"));
            out.push('\n');
        }
        out
    }

    /// Gate count against the base-10 logarithm of the best error.
    pub fn summary_table(&self) -> String {
        let mut out = String::from("   N  structures       best E  log10(E)\n");
        for row in &self.summary {
            let lg = if row.best_error > 0.0 {
                format!("{:8.2}", row.best_error.log10())
            } else {
                "    -inf".to_string()
            };
            writeln!(out, "{:4}  {:10}  {:11.3e}  {lg}", row.n_gates, row.structures, row.best_error).unwrap();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ToffoliSuccess {
    pub structure: CircuitStructure,
    pub circuit: Circuit,
    pub error: f64,
    pub restart: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AverageSuccess {
    pub structure: CircuitStructure,
    pub average_error: f64,
}

/// A search report together with the first success, if any.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchOutcome<S> {
    pub report: SearchReport,
    pub success: Option<S>,
}

impl<S> SearchOutcome<S> {
    /// The success, or `NotFound` carrying the best error seen.
    pub fn require_success(self) -> Result<S> {
        let best = self.report.best_error();
        self.success.ok_or(Error::NotFound { best_error: best })
    }
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if threads == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn check_range(n_min: usize, n_max: usize) -> Result<()> {
    if n_min == 0 || n_min > n_max {
        return Err(Error::InvalidArgument(format!(
            "gate range {n_min}..={n_max} must satisfy 1 <= min <= max"
        )));
    }
    Ok(())
}

// Fits every (structure, restart) job in parallel; results come back in job
// order so the merge is independent of scheduling.
fn run_level(
    structures: &[CircuitStructure],
    target: &UnitaryMatrix,
    cfg: &OptimizerConfig,
    stream: &[u64],
) -> Vec<Vec<FitResult>> {
    let templates: Vec<Template> =
        structures.iter().map(|s| Template::new(s, SlotLayout::Standard)).collect();
    let jobs: Vec<(usize, usize)> = (0..structures.len())
        .flat_map(|s| (0..cfg.restarts).map(move |r| (s, r)))
        .collect();
    let fits: Vec<FitResult> = jobs
        .par_iter()
        .map(|&(s, r)| {
            let mut parts = stream.to_vec();
            parts.extend([s as u64, r as u64]);
            fit_template(&templates[s], target, cfg, derive_seed(&parts))
        })
        .collect();
    let mut out: Vec<Vec<FitResult>> = vec![Vec::new(); structures.len()];
    for ((s, _), fit) in jobs.into_iter().zip(fits) {
        out[s].push(fit);
    }
    out
}

fn best_index(fits: &[FitResult]) -> usize {
    let mut best = 0;
    for (i, f) in fits.iter().enumerate() {
        if f.error < fits[best].error {
            best = i;
        }
    }
    best
}

fn running_min(errors: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut m = f64::INFINITY;
    errors
        .map(|e| {
            if e < m {
                m = e;
            }
            m
        })
        .collect()
}

/// Fits `target` on each given structure. The success is the first
/// (structure, restart) in order whose error is at most `cfg.epsilon`.
pub fn search_structures(
    structures: &[CircuitStructure],
    target: &UnitaryMatrix,
    cfg: &OptimizerConfig,
) -> Result<SearchOutcome<ToffoliSuccess>> {
    cfg.validate()?;
    let mut report = SearchReport::default();
    let mut by_n: Vec<(usize, Vec<CircuitStructure>)> = Vec::new();
    for s in structures {
        if (1usize << s.n_qubits) != target.dim() {
            return Err(Error::DimensionMismatch {
                expected: 1 << s.n_qubits,
                found: target.dim(),
            });
        }
        match by_n.iter_mut().find(|(n, _)| *n == s.len()) {
            Some((_, v)) => v.push(s.clone()),
            None => by_n.push((s.len(), vec![s.clone()])),
        }
    }
    let mut success = None;
    for (n, list) in by_n {
        let fits = in_pool(cfg.threads, || run_level(&list, target, cfg, &[cfg.seed, n as u64]))?;
        let mut records = Vec::new();
        for (s, f) in list.iter().zip(&fits) {
            let b = best_index(f);
            if success.is_none() {
                if let Some(r) = f.iter().position(|x| x.error <= cfg.epsilon) {
                    success = Some(ToffoliSuccess {
                        structure: s.clone(),
                        circuit: f[r].to_circuit(s)?,
                        error: f[r].error,
                        restart: r,
                    });
                }
            }
            records.push(StructureRecord {
                n_gates: n,
                structure: s.positions.clone(),
                best_error: f[b].error,
                best_params: f[b].params.clone(),
                restarts_used: f.len(),
                best_so_far: running_min(f.iter().map(|x| x.error)),
                per_target: None,
            });
        }
        report.push_level(n, records);
    }
    Ok(SearchOutcome { report, success })
}

/// Searches pruned structures with `n_min..=n_max` gates for an exact
/// Toffoli, stopping after the first gate count with a success.
pub fn toffoli_search(
    n_min: usize,
    n_max: usize,
    cfg: &OptimizerConfig,
) -> Result<SearchOutcome<ToffoliSuccess>> {
    check_range(n_min, n_max)?;
    cfg.validate()?;
    let target = gates::toffoli();
    let mut report = SearchReport::default();
    for n in n_min..=n_max {
        let structures = enumerate_pruned(n)?;
        let out = search_structures(&structures, &target, cfg)?;
        report.records.extend(out.report.records);
        report.summary.extend(out.report.summary);
        if out.success.is_some() {
            return Ok(SearchOutcome {
                report,
                success: out.success,
            });
        }
    }
    Ok(SearchOutcome { report, success: None })
}

/// For each pruned structure, the mean over `cfg.haar_samples` Haar targets
/// of the best-of-restarts error; stops after the first gate count at which
/// some structure's mean is at most `cfg.epsilon`.
pub fn average_error_search(
    n_min: usize,
    n_max: usize,
    cfg: &OptimizerConfig,
) -> Result<SearchOutcome<AverageSuccess>> {
    check_range(n_min, n_max)?;
    cfg.validate()?;
    if cfg.haar_samples == 0 {
        return Err(Error::InvalidArgument("haar_samples must be positive".into()));
    }
    let targets: Vec<UnitaryMatrix> = (0..cfg.haar_samples)
        .map(|i| haar_random_unitary(8, derive_seed(&[cfg.seed, 0x7a26, i as u64])))
        .collect();
    average_error_search_with_targets(n_min, n_max, cfg, &targets)
}

/// [`average_error_search`] over explicit targets.
pub fn average_error_search_with_targets(
    n_min: usize,
    n_max: usize,
    cfg: &OptimizerConfig,
    targets: &[UnitaryMatrix],
) -> Result<SearchOutcome<AverageSuccess>> {
    check_range(n_min, n_max)?;
    cfg.validate()?;
    let mut report = SearchReport::default();
    for n in n_min..=n_max {
        let structures = enumerate_pruned(n)?;
        let per_target: Vec<Vec<Vec<FitResult>>> = in_pool(cfg.threads, || {
            targets
                .iter()
                .enumerate()
                .map(|(ti, t)| run_level(&structures, t, cfg, &[cfg.seed, n as u64, ti as u64]))
                .collect()
        })?;
        let mut records = Vec::new();
        let mut success = None;
        for (si, s) in structures.iter().enumerate() {
            let bests: Vec<f64> = per_target
                .iter()
                .map(|fits| fits[si][best_index(&fits[si])].error)
                .collect();
            let mean = bests.iter().sum::<f64>() / bests.len() as f64;
            let first = &per_target[0][si];
            if success.is_none() && mean <= cfg.epsilon {
                success = Some(AverageSuccess {
                    structure: s.clone(),
                    average_error: mean,
                });
            }
            records.push(StructureRecord {
                n_gates: n,
                structure: s.positions.clone(),
                best_error: mean,
                best_params: first[best_index(first)].params.clone(),
                restarts_used: cfg.restarts,
                best_so_far: running_min(first.iter().map(|x| x.error)),
                per_target: Some(bests),
            });
        }
        report.push_level(n, records);
        if success.is_some() {
            return Ok(SearchOutcome { report, success });
        }
    }
    Ok(SearchOutcome { report, success: None })
}
