//! The staged search driver: stage `i` tests whether a solution exists
//! with bit `eps_i = 0` under the bits already fixed, via superposition
//! over the free qubits, one oracle call, reduction of the answer qubit,
//! and chaos amplification of the resulting weight.
//!
//! Detection means solutions exist on the `eps_i = 0` branch, so the bit is
//! fixed to 0; otherwise it is fixed to 1. Once any stage has detected, a
//! solution is guaranteed inside the running prefix and the assembled
//! candidate solves the problem. If no stage ever detects, the candidate is
//! all-ones and one direct evaluation decides between a solution there and
//! no solution at all.

use alloc::vec::Vec;

use crate::accounting::{reconcile, CostModel, MeasuredBlock, ReconcileReport};
use crate::amplifier::{detect, AmplifierConfig, AmplifierTrace};
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::oracle::OracleSpec;
use crate::qsim::{GateLog, QuantumState, DEFAULT_MAX_QUBITS, DIAGONAL_TOLERANCE};

/// Outcome of one stage.
#[derive(Debug, Clone, PartialEq)]
pub struct StageResult {
    /// Stage index, 1-based.
    pub i: usize,
    /// Bits `eps_1 ... eps_{i-1}` fixed before this stage.
    pub tested_prefix: BitString,
    /// Answer-qubit weight produced by the reduction.
    pub p: f64,
    pub trace: AmplifierTrace,
    /// The bit this stage fixed: 0 exactly when the amplifier detected.
    pub epsilon: bool,
    /// Gates this stage applied.
    pub gates: GateLog,
}

impl StageResult {
    /// Amplifier channel applications this stage performed.
    pub fn channel_steps(&self) -> u64 {
        self.trace.steps() as u64
    }
}

/// Final verdict of a search run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Existence {
    /// `x` with `f(x) = 1`, as an integer.
    SolutionFound(u64),
    NoSolution,
}

/// Full record of a staged search run.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    pub n: usize,
    /// Candidate bits `eps_1 ... eps_n` assembled over the stages.
    pub bits: BitString,
    pub existence: Existence,
    pub stages: Vec<StageResult>,
    /// True exactly when no stage detected and `f(1...1)` was evaluated.
    pub final_check_performed: bool,
    /// Gate counters aggregated over all stages.
    pub gates: GateLog,
    /// Channel applications aggregated over all stages.
    pub channel_steps: u64,
    /// Formula-vs-measured comparison, using the compiled `T(U_f)` when the
    /// oracle carries one and zero for the abstract backends.
    pub complexity: ReconcileReport,
}

impl SearchReport {
    pub fn solution(&self) -> Option<u64> {
        match self.existence {
            Existence::SolutionFound(x) => Some(x),
            Existence::NoSolution => None,
        }
    }

    /// Stages that computed a strictly positive weight yet did not detect.
    /// Any entry here marks the run unsound: the amplifier missed solutions
    /// it was handed.
    pub fn false_negative_stages(&self) -> Vec<usize> {
        self.stages
            .iter()
            .filter(|s| s.p > 0.0 && !s.trace.detected())
            .map(|s| s.i)
            .collect()
    }

    /// Per-stage crossing indices, absent for undetected stages.
    pub fn per_stage_crossings(&self) -> Vec<Option<usize>> {
        self.stages.iter().map(|s| s.trace.crossing()).collect()
    }

    /// Recomputes the complexity comparison against a caller-supplied model.
    pub fn reconcile_with(&self, model: &CostModel) -> Result<ReconcileReport> {
        let measured = MeasuredBlock::from_log(&self.gates, self.channel_steps);
        reconcile(&measured, self.n, model)
    }
}

/// The stage weight is `s / 2^free` for an integer solution count `s`, a
/// grid whose spacing dwarfs the reduction's float error. Rounding onto
/// that grid recovers the exact weight, so an exact-1/2 weight can never
/// drift across the strict detection threshold.
fn snap_to_dyadic(p: f64, free_qubits: usize) -> f64 {
    let scale = (1u64 << free_qubits) as f64;
    let s = libm::round(p * scale);
    (s / scale).clamp(0.0, 1.0)
}

/// Builds the stage-`i` input state: all-zero register, NOT gates writing
/// the fixed prefix bits, then Hadamards over the free qubits `i+1 ..= n`.
/// Qubit `i` itself stays at 0 — the stage tests `eps_i = 0`.
pub fn prepare_stage_state(
    i: usize,
    prefix: &BitString,
    spec: &OracleSpec,
    max_qubits: usize,
) -> Result<QuantumState> {
    let n = spec.n();
    if i == 0 || i > n {
        return Err(Error::StageOutOfRange { i, n });
    }
    if prefix.len() != i - 1 {
        return Err(Error::BitLengthMismatch {
            expected: i - 1,
            actual: prefix.len(),
        });
    }
    let mut state =
        QuantumState::new_basis_capped(n, spec.dust_qubits(), &BitString::zeros(n), max_qubits)?;
    for k in 1..i {
        if prefix.bit(k) {
            state.apply_not(k)?;
        }
    }
    for q in (i + 1)..=n {
        state.apply_hadamard(q)?;
    }
    Ok(state)
}

/// Runs stage `i` under the bits fixed so far.
pub fn run_stage(
    i: usize,
    prefix: &BitString,
    spec: &OracleSpec,
    config: &AmplifierConfig,
) -> Result<StageResult> {
    run_stage_capped(i, prefix, spec, config, DEFAULT_MAX_QUBITS)
}

pub fn run_stage_capped(
    i: usize,
    prefix: &BitString,
    spec: &OracleSpec,
    config: &AmplifierConfig,
    max_qubits: usize,
) -> Result<StageResult> {
    let mut state = prepare_stage_state(i, prefix, spec, max_qubits)?;
    state.apply_oracle(spec)?;
    let rho = state.reduce_last_qubit()?;
    let off = rho.off_diagonal_magnitude();
    if off > DIAGONAL_TOLERANCE {
        return Err(Error::NonDiagonalDensity { off_diag: off });
    }
    let p = snap_to_dyadic(rho.excited_population(), spec.n() - i);
    let trace = detect(p, config);
    let epsilon = !trace.detected();
    Ok(StageResult {
        i,
        tested_prefix: prefix.clone(),
        p,
        trace,
        epsilon,
        gates: *state.log(),
    })
}

/// Runs all `n` stages in order and applies the final all-ones check when
/// no stage detected.
pub fn run_search(spec: &OracleSpec, config: &AmplifierConfig) -> Result<SearchReport> {
    run_search_capped(spec, config, DEFAULT_MAX_QUBITS)
}

pub fn run_search_capped(
    spec: &OracleSpec,
    config: &AmplifierConfig,
    max_qubits: usize,
) -> Result<SearchReport> {
    let n = spec.n();
    let mut bits = BitString::default();
    let mut stages = Vec::with_capacity(n);
    let mut gates = GateLog::default();
    let mut channel_steps = 0u64;
    let mut any_detected = false;

    for i in 1..=n {
        let stage = run_stage_capped(i, &bits, spec, config, max_qubits)?;
        gates.accumulate(&stage.gates);
        channel_steps += stage.channel_steps();
        any_detected |= stage.trace.detected();
        bits.push(stage.epsilon);
        stages.push(stage);
    }

    let final_check_performed = !any_detected;
    let existence = if any_detected {
        Existence::SolutionFound(bits.value())
    } else if spec.is_solution(bits.value()) {
        // The undetected path leaves every bit at 1; one classical call on
        // the all-ones candidate settles the question.
        Existence::SolutionFound(bits.value())
    } else {
        Existence::NoSolution
    };

    let model = CostModel {
        n,
        t_uf: spec.t_uf().unwrap_or(0),
    };
    let measured = MeasuredBlock::from_log(&gates, channel_steps);
    let complexity = reconcile(&measured, n, &model)?;

    Ok(SearchReport {
        n,
        bits,
        existence,
        stages,
        final_check_performed,
        gates,
        channel_steps,
        complexity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{classical_scan, compile_reversible, parse_expression, OracleSpec};

    fn config_for(n: usize) -> AmplifierConfig {
        AmplifierConfig::for_bits(n)
    }

    /// Number of solutions consistent with `prefix` and `eps_i = 0`.
    fn count_consistent(spec: &OracleSpec, prefix: &BitString, i: usize) -> u64 {
        let n = spec.n();
        (0..(1u64 << n))
            .filter(|&x| {
                (1..i).all(|k| ((x >> (k - 1)) & 1 == 1) == prefix.bit(k))
                    && (x >> (i - 1)) & 1 == 0
                    && spec.is_solution(x)
            })
            .count() as u64
    }

    #[test]
    fn first_stage_of_minterm_two() {
        let spec = OracleSpec::from_minterms(2, &[2]).unwrap();
        let stage = run_stage(1, &BitString::default(), &spec, &config_for(2)).unwrap();
        assert_eq!(stage.p, 0.5);
        assert!(stage.trace.detected());
        assert_eq!(stage.trace.crossing(), Some(1));
        assert_eq!(stage.trace.xs()[1], 0.9275);
        assert!(!stage.epsilon);
    }

    #[test]
    fn last_stage_has_no_free_qubits() {
        let spec = OracleSpec::from_minterms(2, &[2]).unwrap();
        let prefix = BitString::new(vec![false]);
        let stage = run_stage(2, &prefix, &spec, &config_for(2)).unwrap();
        assert_eq!(stage.p, 0.0);
        assert!(!stage.trace.detected());
        assert!(stage.epsilon);
        assert_eq!(stage.gates.hadamard_count, 0);
    }

    #[test]
    fn constant_one_detects_immediately() {
        let spec = OracleSpec::from_table(2, vec![true; 4]).unwrap();
        let stage = run_stage(1, &BitString::default(), &spec, &config_for(2)).unwrap();
        assert_eq!(stage.p, 1.0);
        assert_eq!(stage.trace.crossing(), Some(0));
        assert!(!stage.epsilon);
    }

    #[test]
    fn full_search_on_minterm_two() {
        let spec = OracleSpec::from_minterms(2, &[2]).unwrap();
        let report = run_search(&spec, &config_for(2)).unwrap();
        assert_eq!(report.bits.as_slice(), &[false, true]);
        assert_eq!(report.existence, Existence::SolutionFound(2));
        assert!(!report.final_check_performed);
        assert_eq!(report.gates.hadamard_count, 1);
        assert_eq!(report.gates.oracle_count, 2);
        // Stage 1 crosses after one step; stage 2 sees p = 0 and burns the
        // whole k_max = 4 budget.
        assert_eq!(report.channel_steps, 5);
        assert_eq!(report.per_stage_crossings(), vec![Some(1), None]);
    }

    #[test]
    fn empty_function_rejects_after_final_check() {
        let spec = OracleSpec::from_minterms(3, &[]).unwrap();
        let report = run_search(&spec, &config_for(3)).unwrap();
        assert_eq!(report.bits.value(), 7);
        assert_eq!(report.existence, Existence::NoSolution);
        assert!(report.final_check_performed);
        assert_eq!(report.gates.not_count, 3);
        assert_eq!(report.gates.hadamard_count, 3);
        assert!(report.false_negative_stages().is_empty());
    }

    #[test]
    fn all_ones_solution_survives_final_check() {
        for n in 1..=4usize {
            let spec = OracleSpec::from_minterms(n, &[(1 << n) - 1]).unwrap();
            let report = run_search(&spec, &config_for(n)).unwrap();
            assert!(report.final_check_performed);
            assert_eq!(report.existence, Existence::SolutionFound((1 << n) - 1));
        }
    }

    #[test]
    fn prefix_threading_writes_fixed_bits() {
        let spec = OracleSpec::from_minterms(3, &[6]).unwrap();
        let prefix = BitString::new(vec![false, true]);
        let state = prepare_stage_state(3, &prefix, &spec, 26).unwrap();
        // Occupied components must all carry eps_1 = 0, eps_2 = 1, eps_3 = 0.
        for (idx, amp) in state.amplitudes().iter().enumerate() {
            if amp.norm_sqr() > 0.0 {
                assert_eq!(idx & 0b111, 0b010);
            }
        }
    }

    #[test]
    fn stage_gate_counts_follow_the_stage_shape() {
        let spec = OracleSpec::from_minterms(4, &[9]).unwrap();
        let config = config_for(4);
        let mut bits = BitString::default();
        for i in 1..=4usize {
            let stage = run_stage(i, &bits, &spec, &config).unwrap();
            assert_eq!(stage.gates.hadamard_count as usize, 4 - i);
            assert_eq!(stage.gates.not_count as usize, bits.ones());
            assert_eq!(stage.gates.oracle_count, 1);
            bits.push(stage.epsilon);
        }
    }

    #[test]
    fn stage_weight_is_the_consistent_solution_fraction() {
        let spec = OracleSpec::from_minterms(4, &[3, 5, 11]).unwrap();
        let config = config_for(4);
        let mut bits = BitString::default();
        for i in 1..=4usize {
            let stage = run_stage(i, &bits, &spec, &config).unwrap();
            let s = count_consistent(&spec, &bits, i);
            let expected = s as f64 / (1u64 << (4 - i)) as f64;
            assert!((stage.p - expected).abs() <= 1e-12, "i={i}");
            bits.push(stage.epsilon);
        }
    }

    #[test]
    fn reduction_matches_brute_force_for_every_function_stage_and_prefix() {
        // Exhaustive at n = 3: every function, stage, and prefix assignment.
        let n = 3usize;
        let config = config_for(n);
        for f_bits in 0u32..(1u32 << (1 << n)) {
            let table: Vec<bool> = (0..(1 << n)).map(|x| f_bits >> x & 1 == 1).collect();
            let spec = OracleSpec::from_table(n, table).unwrap();
            for i in 1..=n {
                for prefix_value in 0..(1u64 << (i - 1)) {
                    let prefix = BitString::from_value(prefix_value, i - 1).unwrap();
                    let stage = run_stage(i, &prefix, &spec, &config).unwrap();
                    let s = count_consistent(&spec, &prefix, i);
                    let expected = s as f64 / (1u64 << (n - i)) as f64;
                    assert_eq!(stage.p, expected, "f={f_bits:b} i={i} prefix={prefix}");
                }
            }
        }
    }

    #[test]
    fn agrees_with_classical_scan_exhaustively_small() {
        for n in 1..=2usize {
            for f_bits in 0u32..(1u32 << (1 << n)) {
                let table: Vec<bool> = (0..(1 << n)).map(|x| f_bits >> x & 1 == 1).collect();
                let spec = OracleSpec::from_table(n, table).unwrap();
                let report = run_search(&spec, &config_for(n)).unwrap();
                let scan = classical_scan(&spec);
                assert_eq!(
                    report.solution().is_some(),
                    scan.found(),
                    "n={n} f={f_bits:b}"
                );
                if let Some(x) = report.solution() {
                    assert!(spec.is_solution(x));
                }
            }
        }
    }

    #[test]
    fn compiled_backend_searches_with_dust_qubits() {
        let expr = parse_expression("~x1 & x2", 2).unwrap();
        let circuit = compile_reversible(&expr, 2).unwrap();
        assert!(circuit.dust_qubits() > 0);
        let spec = OracleSpec::from_circuit(circuit);
        let report = run_search(&spec, &config_for(2)).unwrap();
        assert_eq!(report.existence, Existence::SolutionFound(2));
        assert!(report.gates.elementary_gate_count > 0);
    }

    #[test]
    fn crossings_stay_within_the_stage_budget() {
        let spec = OracleSpec::from_minterms(5, &[17, 29]).unwrap();
        let report = run_search(&spec, &config_for(5)).unwrap();
        for stage in &report.stages {
            if let Some(k) = stage.trace.crossing() {
                assert!(k <= 2 * 5);
            }
        }
    }

    #[test]
    fn qubit_cap_propagates() {
        let spec = OracleSpec::from_minterms(4, &[1]).unwrap();
        let err = run_search_capped(&spec, &config_for(4), 3).unwrap_err();
        assert!(matches!(err, Error::QubitCapExceeded { .. }));
    }

    #[test]
    fn starved_amplifier_budget_is_flagged_as_false_negative() {
        // With k_max = 0 stage 1 sees p = 1/2 but may not iterate, so the
        // missed detection must surface through the soundness flag.
        let spec = OracleSpec::from_minterms(2, &[2]).unwrap();
        let config = AmplifierConfig::new(3.71, 0).unwrap();
        let report = run_search(&spec, &config).unwrap();
        assert_eq!(report.false_negative_stages(), vec![1]);
        assert_eq!(report.existence, Existence::NoSolution);
    }

    #[test]
    fn sound_runs_have_no_false_negatives() {
        for n in 1..=3usize {
            for f_bits in 0u32..(1u32 << (1 << n)) {
                let table: Vec<bool> = (0..(1 << n)).map(|x| f_bits >> x & 1 == 1).collect();
                let spec = OracleSpec::from_table(n, table).unwrap();
                let report = run_search(&spec, &config_for(n)).unwrap();
                assert!(
                    report.false_negative_stages().is_empty(),
                    "n={n} f={f_bits:b}"
                );
                // Detection soundness: a detecting stage always has weight.
                for stage in &report.stages {
                    if stage.trace.detected() {
                        assert!(stage.p > 0.0);
                    }
                }
            }
        }
    }
}
