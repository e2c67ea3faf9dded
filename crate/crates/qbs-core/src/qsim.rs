//! Dense state-vector simulation over `n + m + 1` qubits.
//!
//! Qubit `q` (1-based) is bit `q - 1` of the amplitude index, so the first
//! search bit is the least significant index bit and the answer qubit is the
//! most significant one. Register roles: qubits `1..=n` hold the search
//! input, `n+1..=n+m` the oracle dust, and the last qubit the answer.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::oracle::{OracleBackend, OracleSpec, RevGate};

/// Default cap on the total register size for dense simulation.
pub const DEFAULT_MAX_QUBITS: usize = 26;

/// Norm drift tolerated before reduction refuses the state.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Off-diagonal weight tolerated in a pipeline reduction.
pub const DIAGONAL_TOLERANCE: f64 = 1e-12;

/// Amplitude magnitude below which a component counts as unoccupied.
pub const AMPLITUDE_THRESHOLD: f64 = 1e-14;

/// Counters for every gate and oracle application performed on a state.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GateLog {
    pub hadamard_count: u64,
    pub not_count: u64,
    pub oracle_count: u64,
    /// X/CNOT/Toffoli gates applied inside compiled oracle calls.
    pub elementary_gate_count: u64,
}

impl GateLog {
    pub fn accumulate(&mut self, other: &GateLog) {
        self.hadamard_count += other.hadamard_count;
        self.not_count += other.not_count;
        self.oracle_count += other.oracle_count;
        self.elementary_gate_count += other.elementary_gate_count;
    }
}

/// Complex amplitude vector over the full register.
#[derive(Debug, Clone)]
pub struct QuantumState {
    amps: Vec<Complex64>,
    n: usize,
    m: usize,
    log: GateLog,
}

impl QuantumState {
    /// Basis state `|prefix>|0^m>|0>` with the default qubit cap.
    pub fn new_basis(n: usize, m: usize, prefix: &BitString) -> Result<Self> {
        Self::new_basis_capped(n, m, prefix, DEFAULT_MAX_QUBITS)
    }

    /// Basis state `|prefix>|0^m>|0>`; fails when `n + m + 1 > max_qubits`.
    pub fn new_basis_capped(
        n: usize,
        m: usize,
        prefix: &BitString,
        max_qubits: usize,
    ) -> Result<Self> {
        if prefix.len() != n {
            return Err(Error::BitLengthMismatch {
                expected: n,
                actual: prefix.len(),
            });
        }
        let qubits = n + m + 1;
        if qubits > max_qubits || qubits >= usize::BITS as usize {
            return Err(Error::QubitCapExceeded {
                qubits,
                cap: max_qubits,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << qubits];
        amps[prefix.value() as usize] = Complex64::new(1.0, 0.0);
        Ok(QuantumState {
            amps,
            n,
            m,
            log: GateLog::default(),
        })
    }

    pub fn qubit_count(&self) -> usize {
        self.n + self.m + 1
    }

    pub fn search_qubits(&self) -> usize {
        self.n
    }

    pub fn dust_qubits(&self) -> usize {
        self.m
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn log(&self) -> &GateLog {
        &self.log
    }

    /// Squared 2-norm of the amplitude vector.
    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum()
    }

    fn qubit_mask(&self, qubit: usize) -> Result<usize> {
        if qubit == 0 || qubit > self.qubit_count() {
            return Err(Error::QubitOutOfRange {
                qubit,
                qubit_count: self.qubit_count(),
            });
        }
        Ok(1usize << (qubit - 1))
    }

    /// Hadamard on one qubit.
    pub fn apply_hadamard(&mut self, qubit: usize) -> Result<()> {
        let bit = self.qubit_mask(qubit)?;
        for idx in 0..self.amps.len() {
            if idx & bit == 0 {
                let a = self.amps[idx];
                let b = self.amps[idx | bit];
                self.amps[idx] = (a + b) * FRAC_1_SQRT_2;
                self.amps[idx | bit] = (a - b) * FRAC_1_SQRT_2;
            }
        }
        self.log.hadamard_count += 1;
        Ok(())
    }

    /// NOT (Pauli-X) on one qubit.
    pub fn apply_not(&mut self, qubit: usize) -> Result<()> {
        let bit = self.qubit_mask(qubit)?;
        self.flip(bit);
        self.log.not_count += 1;
        Ok(())
    }

    fn flip(&mut self, bit: usize) {
        for idx in 0..self.amps.len() {
            if idx & bit == 0 {
                self.amps.swap(idx, idx | bit);
            }
        }
    }

    fn flip_controlled(&mut self, controls: usize, bit: usize) {
        for idx in 0..self.amps.len() {
            if idx & bit == 0 && idx & controls == controls {
                self.amps.swap(idx, idx | bit);
            }
        }
    }

    /// Applies the oracle unitary `U_f |x>|0^m>|0> = |x>|z_x>|f(x)>`.
    ///
    /// Requires every occupied component to have all-zero dust and answer
    /// qubits, and the oracle shape to match the register.
    pub fn apply_oracle(&mut self, spec: &OracleSpec) -> Result<()> {
        let expected = spec.n() + spec.dust_qubits() + 1;
        if expected != self.qubit_count() || spec.n() != self.n {
            return Err(Error::OracleSizeMismatch {
                expected,
                actual: self.qubit_count(),
            });
        }
        for (idx, amp) in self.amps.iter().enumerate() {
            if idx >> self.n != 0 && amp.norm_sqr() > AMPLITUDE_THRESHOLD * AMPLITUDE_THRESHOLD {
                return Err(Error::OracleInputNotClean { index: idx });
            }
        }
        match spec.backend() {
            OracleBackend::TruthTable(_) | OracleBackend::Expression(_) => {
                let answer = 1usize << (self.qubit_count() - 1);
                for x in 0..(1usize << self.n) {
                    if spec.eval_value(x as u64) {
                        self.amps.swap(x, x | answer);
                    }
                }
            }
            OracleBackend::Compiled(c) => {
                for gate in c.gates() {
                    match *gate {
                        RevGate::X { target } => self.flip(1 << (target - 1)),
                        RevGate::Cnot { control, target } => {
                            self.flip_controlled(1 << (control - 1), 1 << (target - 1));
                        }
                        RevGate::Toffoli { c1, c2, target } => {
                            self.flip_controlled(
                                (1 << (c1 - 1)) | (1 << (c2 - 1)),
                                1 << (target - 1),
                            );
                        }
                    }
                }
                self.log.elementary_gate_count += c.t_uf();
            }
        }
        self.log.oracle_count += 1;
        Ok(())
    }

    /// Partial trace over everything except the answer qubit, normalized by
    /// its trace so that residual norm drift cannot leak into the weight.
    pub fn reduce_last_qubit(&self) -> Result<QubitDensity> {
        let norm_sq = self.norm_sq();
        if (norm_sq - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NormViolation { norm_sq });
        }
        let answer = 1usize << (self.qubit_count() - 1);
        let mut rho00 = 0.0f64;
        let mut rho11 = 0.0f64;
        let mut rho01 = Complex64::new(0.0, 0.0);
        for idx in 0..answer {
            let low = self.amps[idx];
            let high = self.amps[idx | answer];
            rho00 += low.norm_sqr();
            rho11 += high.norm_sqr();
            rho01 += low * high.conj();
        }
        Ok(QubitDensity::from_parts(rho00, rho01, rho11))
    }
}

/// 2x2 density operator of the answer qubit, i.e.
/// `(I + s sigma_3)/2 + coherences`.
///
/// The carrier is the sigma_3 expectation `s` itself, so feeding the
/// operator through the amplification channel reproduces the scalar
/// iteration bit for bit — the logistic map's sensitivity would blow any
/// per-step re-encoding error past every tolerance. Hermiticity and unit
/// trace are structural; the diagonal entries are derived views.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitDensity {
    sigma3: f64,
    coherence: Complex64,
}

impl QubitDensity {
    /// Builds from raw matrix entries, normalizing by the trace. The trace
    /// must be positive.
    pub fn from_parts(rho00: f64, rho01: Complex64, rho11: f64) -> Self {
        let trace = rho00 + rho11;
        debug_assert!(trace > 0.0);
        QubitDensity {
            sigma3: (rho00 - rho11) / trace,
            coherence: rho01 / trace,
        }
    }

    /// Diagonal density `(1 - p)|0><0| + p|1><1|`.
    pub fn from_population(p: f64) -> Self {
        QubitDensity {
            sigma3: 1.0 - 2.0 * p,
            coherence: Complex64::new(0.0, 0.0),
        }
    }

    /// Density `(I + x sigma_3) / 2` carrying the scalar `x` exactly.
    pub fn from_sigma3(x: f64) -> Self {
        QubitDensity {
            sigma3: x,
            coherence: Complex64::new(0.0, 0.0),
        }
    }

    pub fn rho00(&self) -> Complex64 {
        Complex64::new((1.0 + self.sigma3) / 2.0, 0.0)
    }

    pub fn rho01(&self) -> Complex64 {
        self.coherence
    }

    pub fn rho10(&self) -> Complex64 {
        self.coherence.conj()
    }

    pub fn rho11(&self) -> Complex64 {
        Complex64::new((1.0 - self.sigma3) / 2.0, 0.0)
    }

    pub fn trace(&self) -> f64 {
        self.rho00().re + self.rho11().re
    }

    /// Weight on `|1><1|`, the `p` of the reduction.
    pub fn excited_population(&self) -> f64 {
        (1.0 - self.sigma3) / 2.0
    }

    /// `tr(rho sigma_3) = rho00 - rho11`, the exact stored carrier.
    pub fn sigma3_expectation(&self) -> f64 {
        self.sigma3
    }

    pub fn off_diagonal_magnitude(&self) -> f64 {
        libm::sqrt(self.coherence.norm_sqr())
    }

    /// Checks trace 1 and eigenvalues above `-tol`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        if (self.trace() - 1.0).abs() > tol {
            return Err(Error::DomainViolation {
                name: "trace",
                value: self.trace(),
            });
        }
        let det = self.rho00().re * self.rho11().re - self.coherence.norm_sqr();
        let disc = libm::sqrt((0.25 - det).max(0.0));
        let eig_min = 0.5 - disc;
        if eig_min < -tol {
            return Err(Error::DomainViolation {
                name: "min eigenvalue",
                value: eig_min,
            });
        }
        Ok(())
    }
}
