//! Differential harness: runs the staged quantum search and the classical
//! linear scan over the same functions and compares verdicts.
//!
//! Small bit counts are checked exhaustively over all `2^(2^n)` functions;
//! larger ones are sampled from a seeded, self-contained generator so runs
//! are reproducible byte for byte.

use serde::Serialize;

use qbs_core::amplifier::AmplifierConfig;
use qbs_core::oracle::{classical_scan, OracleSpec};
use qbs_core::search::run_search_capped;

use crate::error::{CliError, Result};
use crate::oracle_file::encode_table_hex;

/// Largest `n` for which exhaustive enumeration is allowed.
pub const EXHAUSTIVE_LIMIT: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// All `2^(2^n)` functions.
    Exhaustive,
    Sampled {
        samples: usize,
        seed: u64,
    },
}

/// One function on which the engines disagreed, or whose returned solution
/// failed verification.
#[derive(Debug, Serialize)]
pub struct Disagreement {
    pub table_hex: String,
    pub quantum_found: bool,
    pub classical_found: bool,
    pub x: Option<u64>,
    pub x_valid: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct DifferentialSummary {
    pub n: usize,
    pub mode: &'static str,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub total: usize,
    pub agreements: usize,
    pub disagreements: Vec<Disagreement>,
}

impl DifferentialSummary {
    pub fn all_agree(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Runs the comparison for every selected function.
pub fn run_differential(
    n: usize,
    mode: Mode,
    config: &AmplifierConfig,
    max_qubits: usize,
) -> Result<DifferentialSummary> {
    if n == 0 {
        return Err(CliError::Invalid(
            "differential testing needs n >= 1".into(),
        ));
    }
    let entries = 1usize << n;
    let (tables, mode_name, samples, seed): (Vec<Vec<bool>>, &'static str, _, _) = match mode {
        Mode::Exhaustive => {
            if n > EXHAUSTIVE_LIMIT {
                return Err(CliError::Invalid(format!(
                    "exhaustive mode supports n <= {EXHAUSTIVE_LIMIT}; use sampling"
                )));
            }
            let count = 1u64 << entries;
            let tables = (0..count)
                .map(|f_bits| (0..entries).map(|x| f_bits >> x & 1 == 1).collect())
                .collect();
            (tables, "exhaustive", None, None)
        }
        Mode::Sampled { samples, seed } => {
            let mut rng = SplitMix64::new(seed);
            let tables = (0..samples)
                .map(|_| (0..entries).map(|_| rng.next() & 1 == 1).collect())
                .collect();
            (tables, "sampled", Some(samples), Some(seed))
        }
    };

    let mut disagreements = Vec::new();
    let total = tables.len();
    for table in tables {
        let spec = OracleSpec::from_table(n, table)?;
        let report = run_search_capped(&spec, config, max_qubits)?;
        let scan = classical_scan(&spec);
        let quantum_found = report.solution().is_some();
        let classical_found = scan.found();
        let x_valid = report.solution().map(|x| spec.is_solution(x));
        if quantum_found != classical_found || x_valid == Some(false) {
            disagreements.push(Disagreement {
                table_hex: encode_table_hex(&spec.to_truth_table()),
                quantum_found,
                classical_found,
                x: report.solution(),
                x_valid,
            });
        }
    }

    Ok(DifferentialSummary {
        n,
        mode: mode_name,
        samples,
        seed,
        total,
        agreements: total - disagreements.len(),
        disagreements,
    })
}

/// SplitMix64: tiny, seedable, and stable across releases.
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn next(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qbs_core::qsim::DEFAULT_MAX_QUBITS;

    #[test]
    fn exhaustive_n2_all_agree() {
        let config = AmplifierConfig::for_bits(2);
        let summary = run_differential(2, Mode::Exhaustive, &config, DEFAULT_MAX_QUBITS).unwrap();
        assert_eq!(summary.total, 16);
        assert_eq!(summary.agreements, 16);
        assert!(summary.all_agree());
    }

    #[test]
    fn sampling_is_reproducible() {
        let config = AmplifierConfig::for_bits(5);
        let a = run_differential(
            5,
            Mode::Sampled {
                samples: 20,
                seed: 7,
            },
            &config,
            DEFAULT_MAX_QUBITS,
        )
        .unwrap();
        let b = run_differential(
            5,
            Mode::Sampled {
                samples: 20,
                seed: 7,
            },
            &config,
            DEFAULT_MAX_QUBITS,
        )
        .unwrap();
        assert_eq!(a.total, b.total);
        assert_eq!(a.agreements, b.agreements);
        assert!(a.all_agree());
    }

    #[test]
    fn exhaustive_cap_enforced() {
        let config = AmplifierConfig::for_bits(5);
        assert!(run_differential(5, Mode::Exhaustive, &config, DEFAULT_MAX_QUBITS).is_err());
    }
}
