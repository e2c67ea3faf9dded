//! Command implementations, decoupled from argument parsing so they can be
//! driven from tests.
//!
//! Exit codes: 0 success (solution found, or report produced), 1 negative
//! result (no solution / scan reject / differential disagreement), 2
//! internal inconsistency in a search run, 64 usage, file, or parse errors.

use std::path::Path;

use qbs_core::accounting::{total_cost, CostModel};
use qbs_core::amplifier::{theorem_report, AmplifierConfig};
use qbs_core::oracle::{classical_scan, compile_reversible, OracleBackend, OracleSpec};
use qbs_core::search::{run_search_capped, SearchReport};

use crate::differential::{run_differential, Mode};
use crate::error::{CliError, Result};
use crate::oracle_file::load_oracle;
use crate::report::{
    complexity_text, differential_text, scan_text, search_text, theorem_csv, theorems_text,
    to_json, ComplexityDoc, ScanDoc, SearchDoc, TheoremDoc,
};

/// Rendered payload plus the process exit code it implies.
#[derive(Debug)]
pub struct CmdOutput {
    pub payload: String,
    pub exit_code: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl OutputFormat {
    fn reject_csv(self, command: &str) -> Result<Self> {
        if self == OutputFormat::Csv {
            return Err(CliError::Invalid(format!(
                "csv output is only available for trajectories and theorem tables, not {command}"
            )));
        }
        Ok(self)
    }
}

fn amplifier_config(n: usize, a: f64, k_max_override: Option<usize>) -> Result<AmplifierConfig> {
    let mut config = AmplifierConfig::for_bits(n).with_a(a)?;
    if let Some(k_max) = k_max_override {
        config = config.with_k_max(k_max);
    }
    Ok(config)
}

/// Runs the staged search on an oracle file.
pub fn cmd_search(
    oracle_path: &Path,
    a: f64,
    k_max_override: Option<usize>,
    t_uf_override: Option<u64>,
    format: OutputFormat,
    max_qubits: usize,
) -> Result<CmdOutput> {
    let format = format.reject_csv("search")?;
    let spec = load_oracle(oracle_path)?;
    let config = amplifier_config(spec.n(), a, k_max_override)?;
    let mut report = run_search_capped(&spec, &config, max_qubits)?;
    if let Some(t_uf) = t_uf_override {
        report.complexity = report.reconcile_with(&CostModel { n: report.n, t_uf })?;
    }
    let exit_code = search_exit_code(&spec, &report);
    let payload = match format {
        OutputFormat::Json => to_json(&SearchDoc::from_report(&report)),
        OutputFormat::Text => search_text(&report),
        OutputFormat::Csv => unreachable!(),
    };
    Ok(CmdOutput { payload, exit_code })
}

/// 0 found, 1 no solution, 2 when the run contradicts itself.
fn search_exit_code(spec: &OracleSpec, report: &SearchReport) -> u8 {
    if !report.false_negative_stages().is_empty() {
        return 2;
    }
    match report.solution() {
        Some(x) => {
            if spec.is_solution(x) {
                0
            } else {
                2
            }
        }
        None => 1,
    }
}

/// Runs the classical linear scan on an oracle file.
pub fn cmd_scan(oracle_path: &Path, format: OutputFormat) -> Result<CmdOutput> {
    let format = format.reject_csv("scan")?;
    let spec = load_oracle(oracle_path)?;
    let result = classical_scan(&spec);
    let doc = ScanDoc::from_result(spec.n(), &result);
    let exit_code = if result.found() { 0 } else { 1 };
    let payload = match format {
        OutputFormat::Json => to_json(&doc),
        OutputFormat::Text => scan_text(&doc),
        OutputFormat::Csv => unreachable!(),
    };
    Ok(CmdOutput { payload, exit_code })
}

/// Sweeps the crossing bounds over a range of bit counts.
pub fn cmd_theorems(n_lo: usize, n_hi: usize, a: f64, format: OutputFormat) -> Result<CmdOutput> {
    let report = theorem_report(n_lo, n_hi, a)?;
    let payload = match format {
        OutputFormat::Csv => theorem_csv(&report),
        OutputFormat::Json => to_json(&TheoremDoc::from_report(&report)),
        OutputFormat::Text => theorems_text(&report),
    };
    Ok(CmdOutput {
        payload,
        exit_code: 0,
    })
}

/// Evaluates the complexity formulas; with an oracle file it also runs the
/// search and reconciles measured counts.
pub fn cmd_complexity(
    n: Option<usize>,
    t_uf: Option<u64>,
    oracle_path: Option<&Path>,
    a: f64,
    k_max_override: Option<usize>,
    format: OutputFormat,
    max_qubits: usize,
) -> Result<CmdOutput> {
    let format = format.reject_csv("complexity")?;
    let doc = match oracle_path {
        Some(path) => {
            let spec = load_oracle(path)?;
            // Expression oracles are compiled so T(U_f) is measured, and the
            // run then exercises the compiled unitary it was measured from.
            let spec = match spec.backend() {
                OracleBackend::Expression(expr) => {
                    OracleSpec::from_circuit(compile_reversible(expr, spec.n())?)
                }
                _ => spec,
            };
            let t_uf = match t_uf.or(spec.t_uf()) {
                Some(v) => v,
                None => {
                    return Err(CliError::Invalid(
                        "this oracle does not supply T(U_f); pass --tuf".into(),
                    ))
                }
            };
            let config = amplifier_config(spec.n(), a, k_max_override)?;
            let report = run_search_capped(&spec, &config, max_qubits)?;
            let reconciled = report.reconcile_with(&CostModel { n: spec.n(), t_uf })?;
            ComplexityDoc::from_reconcile(&reconciled)
        }
        None => {
            let n = n.ok_or_else(|| CliError::Invalid("pass --n or --oracle".into()))?;
            let t_uf = t_uf.ok_or_else(|| {
                CliError::Invalid("--tuf is required when no compiled oracle supplies it".into())
            })?;
            ComplexityDoc::formula_only(&total_cost(&CostModel { n, t_uf }))
        }
    };
    let payload = match format {
        OutputFormat::Json => to_json(&doc),
        OutputFormat::Text => complexity_text(&doc),
        OutputFormat::Csv => unreachable!(),
    };
    Ok(CmdOutput {
        payload,
        exit_code: 0,
    })
}

/// Default sample count for sampled differential runs.
pub const DEFAULT_SAMPLES: usize = 500;

/// Default seed for sampled differential runs.
pub const DEFAULT_SEED: u64 = 0x5EED_0001;

/// Compares the quantum search against the classical scan over many
/// functions; disagreement exits nonzero.
pub fn cmd_differential(
    n: usize,
    samples: Option<usize>,
    seed: u64,
    a: f64,
    k_max_override: Option<usize>,
    format: OutputFormat,
    max_qubits: usize,
) -> Result<CmdOutput> {
    let format = format.reject_csv("differential")?;
    let config = amplifier_config(n, a, k_max_override)?;
    let mode = match samples {
        None if n <= crate::differential::EXHAUSTIVE_LIMIT => Mode::Exhaustive,
        None => Mode::Sampled {
            samples: DEFAULT_SAMPLES,
            seed,
        },
        Some(samples) => Mode::Sampled { samples, seed },
    };
    let summary = run_differential(n, mode, &config, max_qubits)?;
    let exit_code = if summary.all_agree() { 0 } else { 1 };
    let payload = match format {
        OutputFormat::Json => to_json(&summary),
        OutputFormat::Text => differential_text(&summary),
        OutputFormat::Csv => unreachable!(),
    };
    Ok(CmdOutput { payload, exit_code })
}
