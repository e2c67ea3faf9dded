//! The objective function `f : {0, ..., 2^n - 1} -> {0, 1}` behind three
//! interchangeable backends, plus the classical linear-scan reference
//! machine that the quantum driver is checked against.

pub mod circuit;
pub mod expr;

use alloc::vec;
use alloc::vec::Vec;

use crate::bits::BitString;
use crate::error::{Error, Result};

pub use circuit::{
    compile_reversible, compile_reversible_capped, RevGate, ReversibleCircuit, DEFAULT_ANCILLA_CAP,
};
pub use expr::{parse_expression, print_expression, BoolExpr, ParseError, ParseErrorKind};

/// Default cap on `n` for dense truth-table construction.
pub const DEFAULT_TABLE_BITS_CAP: usize = 20;

/// How `f` is realized.
#[derive(Debug, Clone, PartialEq)]
pub enum OracleBackend {
    /// Dense table, `table[x] = f(x)`.
    TruthTable(Vec<bool>),
    /// Expression tree evaluated per input.
    Expression(BoolExpr),
    /// Compiled reversible gate list.
    Compiled(ReversibleCircuit),
}

/// The search problem's objective function over `n`-bit inputs.
///
/// The target value is fixed to 1: a general target in `{0, 1}` reduces to
/// this by complementing `f`.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleSpec {
    n: usize,
    backend: OracleBackend,
    y_target: bool,
}

impl OracleSpec {
    /// Truth-table oracle; the table must have exactly `2^n` entries.
    pub fn from_table(n: usize, table: Vec<bool>) -> Result<Self> {
        Self::from_table_capped(n, table, DEFAULT_TABLE_BITS_CAP)
    }

    pub fn from_table_capped(n: usize, table: Vec<bool>, cap: usize) -> Result<Self> {
        if n > cap {
            return Err(Error::BitCountExceedsCap { n, cap });
        }
        let expected = 1usize << n;
        if table.len() != expected {
            return Err(Error::TableLength {
                expected,
                actual: table.len(),
            });
        }
        Ok(OracleSpec {
            n,
            backend: OracleBackend::TruthTable(table),
            y_target: true,
        })
    }

    /// Truth-table oracle with `f(x) = 1` exactly on the listed minterms.
    pub fn from_minterms(n: usize, minterms: &[u64]) -> Result<Self> {
        Self::from_minterms_capped(n, minterms, DEFAULT_TABLE_BITS_CAP)
    }

    pub fn from_minterms_capped(n: usize, minterms: &[u64], cap: usize) -> Result<Self> {
        if n > cap {
            return Err(Error::BitCountExceedsCap { n, cap });
        }
        let mut table = vec![false; 1usize << n];
        for &x in minterms {
            if n >= 64 || x >> n != 0 {
                return Err(Error::MintermOutOfRange { minterm: x, n });
            }
            table[x as usize] = true;
        }
        Ok(OracleSpec {
            n,
            backend: OracleBackend::TruthTable(table),
            y_target: true,
        })
    }

    /// Expression-backed oracle.
    pub fn from_expr(n: usize, expr: BoolExpr) -> Result<Self> {
        expr.validate(n)?;
        Ok(OracleSpec {
            n,
            backend: OracleBackend::Expression(expr),
            y_target: true,
        })
    }

    /// Compiled-circuit oracle.
    pub fn from_circuit(circuit: ReversibleCircuit) -> Self {
        OracleSpec {
            n: circuit.input_qubits(),
            backend: OracleBackend::Compiled(circuit),
            y_target: true,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn backend(&self) -> &OracleBackend {
        &self.backend
    }

    /// Target value `y`; always 1 in this artifact.
    pub fn y_target(&self) -> bool {
        self.y_target
    }

    /// Dust qubits the oracle unitary needs: the compiled ancilla count, or
    /// zero for the abstract backends.
    pub fn dust_qubits(&self) -> usize {
        match &self.backend {
            OracleBackend::Compiled(c) => c.dust_qubits(),
            _ => 0,
        }
    }

    /// `T(U_f)` when this oracle carries a compiled circuit.
    pub fn t_uf(&self) -> Option<u64> {
        match &self.backend {
            OracleBackend::Compiled(c) => Some(c.t_uf()),
            _ => None,
        }
    }

    /// `f(x)` for `x` given as an integer below `2^n`.
    pub fn eval_value(&self, x: u64) -> bool {
        debug_assert!(self.n >= 64 || x >> self.n == 0);
        match &self.backend {
            OracleBackend::TruthTable(table) => table[x as usize],
            OracleBackend::Expression(expr) => {
                let assignment: Vec<bool> = (0..self.n).map(|k| (x >> k) & 1 == 1).collect();
                expr.eval(&assignment)
            }
            OracleBackend::Compiled(c) => c.eval(x),
        }
    }

    /// `f(x)` for a bit-string input of length `n`.
    pub fn eval_f(&self, x: &BitString) -> Result<bool> {
        if x.len() != self.n {
            return Err(Error::BitLengthMismatch {
                expected: self.n,
                actual: x.len(),
            });
        }
        Ok(self.eval_value(x.value()))
    }

    /// Whether `x` solves the search problem, i.e. `f(x) = y`.
    pub fn is_solution(&self, x: u64) -> bool {
        self.eval_value(x) == self.y_target
    }

    /// Materializes the backend as a dense table.
    pub fn to_truth_table(&self) -> Vec<bool> {
        match &self.backend {
            OracleBackend::TruthTable(table) => table.clone(),
            _ => (0..(1u64 << self.n)).map(|x| self.eval_value(x)).collect(),
        }
    }

    /// Number of solutions of `f(x) = 1`.
    pub fn solution_count(&self) -> u64 {
        (0..(1u64 << self.n))
            .filter(|&x| self.is_solution(x))
            .count() as u64
    }
}

/// Outcome of the classical linear scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScanVerdict {
    Found(BitString),
    Reject,
}

/// Scan result with the exact number of `f` evaluations performed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanResult {
    pub verdict: ScanVerdict,
    pub calls: u64,
}

impl ScanResult {
    pub fn found(&self) -> bool {
        matches!(self.verdict, ScanVerdict::Found(_))
    }
}

/// Reference machine: tests `x = 0, 1, ...` in order, returning the first
/// solution or rejecting after all `2^n` inputs.
pub fn classical_scan(spec: &OracleSpec) -> ScanResult {
    let mut calls = 0u64;
    for x in 0..(1u64 << spec.n()) {
        calls += 1;
        if spec.is_solution(x) {
            let bits = BitString::from_value(x, spec.n()).expect("x < 2^n");
            return ScanResult {
                verdict: ScanVerdict::Found(bits),
                calls,
            };
        }
    }
    ScanResult {
        verdict: ScanVerdict::Reject,
        calls,
    }
}

/// Builds a truth-table oracle from an expression.
pub fn build_truth_table(expr: &BoolExpr, n: usize) -> Result<OracleSpec> {
    build_truth_table_capped(expr, n, DEFAULT_TABLE_BITS_CAP)
}

pub fn build_truth_table_capped(expr: &BoolExpr, n: usize, cap: usize) -> Result<OracleSpec> {
    expr.validate(n)?;
    if n > cap {
        return Err(Error::BitCountExceedsCap { n, cap });
    }
    let table = (0..(1u64 << n))
        .map(|x| {
            let assignment: Vec<bool> = (0..n).map(|k| (x >> k) & 1 == 1).collect();
            expr.eval(&assignment)
        })
        .collect();
    OracleSpec::from_table_capped(n, table, cap)
}
