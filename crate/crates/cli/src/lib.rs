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

//! Command-line front end for `sqisw-core`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 search found nothing.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use sqisw_core::circuit::Circuit;
use sqisw_core::matcore::{gates, haar_random_unitary, io::matrix_from_json};
use sqisw_core::numopt::{average_error_search, toffoli_search, OptimizerConfig, SearchReport};
use sqisw_core::prune::{closure_census, closure_count_formula, FormulaVariant};
use sqisw_core::qsd::{qsd_synthesize, QsdOptions};
use sqisw_core::synth2q::{synthesize_two_qubit_with, Synth2Options};
use sqisw_core::toffoli::{build_toffoli_scheme, check_scheme, toffoli_solution, verify_entry_formulas};
use sqisw_core::weyl::{in_w_prime, interaction_coefficients, sqisw_cost_of};
use sqisw_core::{Error, UnitaryMatrix};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_FOUND: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "sqisw", version, about = "Circuit synthesis over SQiSW and single-qubit gates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Interaction coefficients, W' membership and SQiSW cost of a 2-qubit gate.
    Weyl {
        /// Matrix file or built-in name (cnot, swap, iswap, sqisw, toffoli, haar:<n>:<seed>).
        matrix: String,
        /// Skip the unitarity check when reading a file.
        #[arg(long)]
        raw: bool,
    },
    /// Exact 2-qubit synthesis with the minimal number of SQiSW gates.
    Synth2 {
        matrix: String,
        #[command(flatten)]
        common: Common,
    },
    /// Shannon-decomposition synthesis of an n-qubit unitary.
    Synth {
        matrix: String,
        #[arg(long)]
        no_cz_absorb: bool,
        #[arg(long)]
        no_diag_absorb: bool,
        #[command(flatten)]
        common: Common,
    },
    /// The exact 8-SQiSW Toffoli scheme.
    Toffoli {
        #[arg(long, value_enum, default_value = "json")]
        emit: Emit,
        #[arg(long)]
        verify: bool,
        /// First rotation angle; defaults to the exact solution.
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<f64>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search pruned 3-qubit structures for an exact Toffoli.
    SearchToffoli {
        #[arg(long)]
        max_gates: usize,
        #[arg(long, default_value_t = 5)]
        min_gates: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Search pruned 3-qubit structures by mean error over Haar targets.
    #[command(name = "search-3q")]
    Search3q {
        #[arg(long)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        min_gates: usize,
        #[arg(long, default_value_t = 6)]
        max_gates: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Closure census of 3-qubit structures.
    Census {
        #[arg(long = "max-N")]
        max_n: usize,
        #[arg(long)]
        compare_formula: bool,
    },
}

#[derive(clap::Args, Debug)]
pub struct Common {
    #[arg(long)]
    raw: bool,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    restarts: Option<usize>,
    /// Write the circuit JSON here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 10)]
    restarts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    max_iterations: usize,
    /// Success threshold on the error.
    #[arg(long, default_value_t = 1e-6)]
    epsilon: f64,
    /// Write the JSON-lines report here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Emit {
    Qasm,
    Json,
}

/// Failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: msg.into() }
    }
    fn verify(msg: impl Into<String>) -> Self {
        Failure { code: EXIT_VERIFY, message: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotFound { .. } => EXIT_NOT_FOUND,
            Error::ConvergenceFailure { .. } | Error::Numerical(_) => EXIT_VERIFY,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

type CliResult = std::result::Result<(), Failure>;

/// Formats with 12 significant digits, dropping trailing zeros.
pub fn sig12(v: f64) -> String {
    if v.abs() < 1e-13 {
        return "0".into();
    }
    let rounded: f64 = format!("{v:.11e}").parse().expect("formatted float parses");
    format!("{rounded}")
}

/// Resolves a built-in matrix name or reads a matrix file.
pub fn load_matrix(spec: &str, raw: bool) -> Result<UnitaryMatrix, Failure> {
    match spec {
        "cnot" => return Ok(gates::cnot()),
        "swap" => return Ok(gates::swap()),
        "iswap" => return Ok(gates::iswap()),
        "sqisw" => return Ok(gates::sqisw()),
        "toffoli" => return Ok(gates::toffoli()),
        _ => {}
    }
    if let Some(rest) = spec.strip_prefix("haar:") {
        let mut parts = rest.splitn(2, ':');
        let n: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .filter(|n| (1..=10).contains(n))
            .ok_or_else(|| Failure::usage(format!("bad qubit count in '{spec}'")))?;
        let seed: u64 = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Failure::usage(format!("bad seed in '{spec}'")))?;
        return Ok(haar_random_unitary(1 << n, seed));
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| Failure::usage(format!("cannot read '{spec}': {e}")))?;
    matrix_from_json(&text, raw).map_err(|e| Failure::usage(format!("{spec}: {e}")))
}

fn write_or_print(path: &Option<PathBuf>, text: &str, out: &mut dyn Write) -> CliResult {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure::usage(format!("cannot write '{}': {e}", p.display()))),
        None => {
            out.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn threads(t: Option<usize>) -> Result<usize, Failure> {
    match t {
        Some(0) => Err(Failure::usage("--threads must be at least 1")),
        Some(t) => Ok(t),
        None => Ok(std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)),
    }
}

fn check_tol(tol: f64) -> CliResult {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Failure::usage("--tol must be positive"))
    }
}

fn emit_circuit(c: &Circuit, path: &Option<PathBuf>, out: &mut dyn Write) -> CliResult {
    let mut json = c.to_json_pretty();
    json.push('\n');
    write_or_print(path, &json, out)
}

fn cmd_weyl(matrix: &str, raw: bool, out: &mut dyn Write) -> CliResult {
    let u = load_matrix(matrix, raw)?;
    let k = interaction_coefficients(&u)?;
    writeln!(out, "{} {} {}", sig12(k.x), sig12(k.y), sig12(k.z))?;
    writeln!(out, "in_w_prime: {}", in_w_prime(&k))?;
    writeln!(out, "sqisw_cost: {}", sqisw_cost_of(&k))?;
    Ok(())
}

fn synth_options(common: &Common) -> Result<Synth2Options, Failure> {
    let mut o = Synth2Options::default();
    if let Some(s) = common.seed {
        o.seed = s;
    }
    if let Some(r) = common.restarts {
        if r == 0 {
            return Err(Failure::usage("--restarts must be at least 1"));
        }
        o.restarts = r;
    }
    Ok(o)
}

fn cmd_synth2(matrix: &str, common: &Common, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let tol = common.tol.unwrap_or(1e-9);
    check_tol(tol)?;
    let u = load_matrix(matrix, common.raw)?;
    let opts = synth_options(common)?;
    writeln!(err, "seed: {}", opts.seed)?;
    let s = synthesize_two_qubit_with(&u, &opts)?;
    emit_circuit(&s.circuit, &common.output, out)?;
    writeln!(err, "sqisw_count: {}", s.sqisw_count)?;
    writeln!(err, "residual_error: {:.3e}", s.residual_error)?;
    writeln!(err, "max_entry_error: {:.3e}", s.max_entry_error)?;
    if s.residual_error > tol {
        return Err(Failure::verify(format!("residual {:.3e} above tol {tol:e}", s.residual_error)));
    }
    Ok(())
}

fn cmd_synth(
    matrix: &str,
    no_cz: bool,
    no_diag: bool,
    common: &Common,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult {
    let u = load_matrix(matrix, common.raw)?;
    let n = u.num_qubits()?;
    let tol = common.tol.unwrap_or(1e-7 * n as f64);
    check_tol(tol)?;
    let opts = QsdOptions {
        cz_absorption: !no_cz,
        diagonal_absorption: !no_diag,
        synth: synth_options(common)?,
    };
    writeln!(err, "seed: {}", opts.synth.seed)?;
    let (c, ledger) = if n == 2 {
        let s = synthesize_two_qubit_with(&u, &opts.synth)?;
        let e = s.residual_error;
        (s.circuit, (s.sqisw_count, 0usize, 3u64, e))
    } else {
        let (c, l) = qsd_synthesize(&u, &opts)?;
        (c, (l.sqisw_used, l.cnot_equivalent_saved, l.bound, l.residual_error))
    };
    emit_circuit(&c, &common.output, out)?;
    let (used, saved, bound, resid) = ledger;
    writeln!(err, "qubits: {n}")?;
    writeln!(err, "sqisw_used: {used}")?;
    writeln!(err, "cnot_equivalent_saved: {saved}")?;
    writeln!(err, "bound: {bound}")?;
    writeln!(err, "residual_error: {resid:.3e}")?;
    if resid > tol {
        return Err(Failure::verify(format!("residual {resid:.3e} above tol {tol:e}")));
    }
    if used as u64 > bound {
        return Err(Failure::verify(format!("{used} SQiSW gates exceed the bound {bound}")));
    }
    Ok(())
}

fn cmd_toffoli(
    emit: Emit,
    verify: bool,
    theta: Option<f64>,
    tol: Option<f64>,
    output: &Option<PathBuf>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult {
    let tol = tol.unwrap_or(1e-12);
    check_tol(tol)?;
    let theta = theta.unwrap_or_else(toffoli_solution);
    if !theta.is_finite() {
        return Err(Failure::usage("--theta must be finite"));
    }
    let scheme = build_toffoli_scheme(theta);
    let text = match emit {
        Emit::Json => scheme.circuit.to_json_pretty() + "\n",
        Emit::Qasm => scheme.circuit.to_qasm()?,
    };
    write_or_print(output, &text, out)?;
    let check = check_scheme(&scheme);
    let entries = verify_entry_formulas(theta);
    writeln!(err, "theta1: {}", sig12(theta))?;
    writeln!(err, "sqisw_count: {}", check.sqisw_count)?;
    writeln!(err, "error: {:.3e}", check.error)?;
    writeln!(err, "max_entry_residual: {:.3e}", check.max_entry_residual)?;
    writeln!(err, "entry_formula_residual: {:.3e}", entries.formula_residual)?;
    if verify {
        if check.max_entry_residual > tol || check.sqisw_count != 8 {
            return Err(Failure::verify(format!(
                "scheme residual {:.3e} above tol {tol:e}",
                check.max_entry_residual
            )));
        }
        if entries.formula_residual > 1e-10 {
            return Err(Failure::verify(format!(
                "entry formulas deviate by {:.3e}",
                entries.formula_residual
            )));
        }
        writeln!(err, "verify: ok")?;
    }
    Ok(())
}

fn search_config(s: &SearchArgs) -> Result<OptimizerConfig, Failure> {
    let cfg = OptimizerConfig {
        restarts: s.restarts,
        max_iterations: s.max_iterations,
        epsilon: s.epsilon,
        seed: s.seed,
        threads: threads(s.threads)?,
        ..OptimizerConfig::default()
    };
    cfg.validate()?;
    Ok(cfg)
}

fn report_search(report: &SearchReport, s: &SearchArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    write_or_print(&s.output, &report.to_json_lines(), out)?;
    write!(err, "{}", report.summary_table())?;
    Ok(())
}

fn cmd_search_toffoli(min: usize, max: usize, s: &SearchArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let cfg = search_config(s)?;
    writeln!(err, "seed: {}", cfg.seed)?;
    let outcome = toffoli_search(min, max, &cfg)?;
    report_search(&outcome.report, s, out, err)?;
    let found = outcome.require_success()?;
    writeln!(err, "found: {} error {:.3e} restart {}", found.structure, found.error, found.restart)?;
    Ok(())
}

fn cmd_search_3q(samples: usize, min: usize, max: usize, s: &SearchArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let mut cfg = search_config(s)?;
    if samples == 0 {
        return Err(Failure::usage("--samples must be at least 1"));
    }
    cfg.haar_samples = samples;
    writeln!(err, "seed: {}", cfg.seed)?;
    let outcome = average_error_search(min, max, &cfg)?;
    report_search(&outcome.report, s, out, err)?;
    let found = outcome.require_success()?;
    writeln!(err, "found: {} mean error {:.3e}", found.structure, found.average_error)?;
    Ok(())
}

fn cmd_census(max_n: usize, compare: bool, out: &mut dyn Write) -> CliResult {
    if max_n == 0 {
        return Err(Failure::usage("--max-N must be at least 1"));
    }
    let mut header = format!("{:>3} {:>10} {:>8} {:>6} {:>6} {:>6}", "N", "3^N", "pruned", "c3", "c6", "c12");
    if compare {
        header += &format!(" {:>10} {:>10} {:>6} {:>6}", "floor_term", "half_term", "fl_ok", "hf_ok");
    }
    writeln!(out, "{header}")?;
    let mut mismatches = Vec::new();
    for n in 1..=max_n {
        let c = closure_census(n)?;
        let mut line = format!(
            "{n:>3} {:>10} {:>8} {:>6} {:>6} {:>6}",
            3u64.pow(n as u32),
            c.closures(),
            c.count3,
            c.count6,
            c.count12
        );
        if compare {
            let st = closure_count_formula(n, FormulaVariant::FloorTerm)?;
            let pf = closure_count_formula(n, FormulaVariant::HalfTerm)?;
            let size = num_rational::Ratio::from_integer(c.closures() as i128);
            let (st_ok, pf_ok) = (st == size, pf == size);
            if !st_ok {
                mismatches.push(n);
            }
            line += &format!(" {:>10} {:>10} {:>6} {:>6}", st.to_string(), pf.to_string(), st_ok, pf_ok);
        }
        writeln!(out, "{line}")?;
    }
    if compare && !mismatches.is_empty() {
        writeln!(out, "floor-term formula differs from the census at N = {mismatches:?}")?;
    }
    Ok(())
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    match cli.command {
        Command::Weyl { matrix, raw } => cmd_weyl(&matrix, raw, out),
        Command::Synth2 { matrix, common } => cmd_synth2(&matrix, &common, out, err),
        Command::Synth { matrix, no_cz_absorb, no_diag_absorb, common } => {
            cmd_synth(&matrix, no_cz_absorb, no_diag_absorb, &common, out, err)
        }
        Command::Toffoli { emit, verify, theta, tol, output } => {
            cmd_toffoli(emit, verify, theta, tol, &output, out, err)
        }
        Command::SearchToffoli { max_gates, min_gates, search } => {
            cmd_search_toffoli(min_gates, max_gates, &search, out, err)
        }
        Command::Search3q { samples, min_gates, max_gates, search } => {
            cmd_search_3q(samples, min_gates, max_gates, &search, out, err)
        }
        Command::Census { max_n, compare_formula } => cmd_census(max_n, compare_formula, out),
    }
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli, out, err) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
