use core::fmt;

use crate::oracle::expr::ParseError;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Expression text failed to parse.
    Parse(ParseError),
    /// A minterm index does not fit in `n` bits.
    MintermOutOfRange { minterm: u64, n: usize },
    /// Requested bit count exceeds the dense-table cap.
    BitCountExceedsCap { n: usize, cap: usize },
    /// Truth table length is not `2^n`.
    TableLength { expected: usize, actual: usize },
    /// A bit string has the wrong length for the operation.
    BitLengthMismatch { expected: usize, actual: usize },
    /// The expression is structurally invalid (bad variable index or arity).
    MalformedExpr { reason: &'static str },
    /// The reversible compiler ran out of ancilla lines.
    AncillaBudgetExceeded { needed: usize, cap: usize },
    /// A circuit gate touches a qubit outside the register or targets an input line.
    InvalidGate {
        gate_index: usize,
        reason: &'static str,
    },
    /// Register would exceed the dense-simulation qubit cap.
    QubitCapExceeded { qubits: usize, cap: usize },
    /// Gate addressed to a qubit outside `1..=qubit_count`.
    QubitOutOfRange { qubit: usize, qubit_count: usize },
    /// Oracle register shape does not match the state register.
    OracleSizeMismatch { expected: usize, actual: usize },
    /// Oracle applied to a state whose dust/answer qubits are not all-zero.
    OracleInputNotClean { index: usize },
    /// State norm drifted past the reduction tolerance.
    NormViolation { norm_sq: f64 },
    /// Density matrix has off-diagonal weight where a diagonal one is required.
    NonDiagonalDensity { off_diag: f64 },
    /// A real argument left its documented domain.
    DomainViolation { name: &'static str, value: f64 },
    /// Stage index outside `1..=n`.
    StageOutOfRange { i: usize, n: usize },
    /// `n_lo..=n_hi` range is empty or starts below 1.
    InvalidRange { lo: usize, hi: usize },
    /// Report and cost model were built for different bit counts.
    ReconcileMismatch { report_n: usize, model_n: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse(e) => write!(f, "{e}"),
            Error::MintermOutOfRange { minterm, n } => {
                write!(f, "minterm {minterm} does not fit in {n} bits")
            }
            Error::BitCountExceedsCap { n, cap } => {
                write!(f, "bit count {n} exceeds the table cap of {cap}")
            }
            Error::TableLength { expected, actual } => {
                write!(f, "truth table must have {expected} entries, got {actual}")
            }
            Error::BitLengthMismatch { expected, actual } => {
                write!(f, "bit string has length {actual}, expected {expected}")
            }
            Error::MalformedExpr { reason } => write!(f, "malformed expression: {reason}"),
            Error::AncillaBudgetExceeded { needed, cap } => {
                write!(f, "compilation needs {needed} ancilla qubits, cap is {cap}")
            }
            Error::InvalidGate { gate_index, reason } => {
                write!(f, "invalid gate at position {gate_index}: {reason}")
            }
            Error::QubitCapExceeded { qubits, cap } => {
                write!(f, "register of {qubits} qubits exceeds the cap of {cap}")
            }
            Error::QubitOutOfRange { qubit, qubit_count } => {
                write!(f, "qubit {qubit} outside register of {qubit_count} qubits")
            }
            Error::OracleSizeMismatch { expected, actual } => {
                write!(
                    f,
                    "oracle expects a {expected}-qubit register, state has {actual}"
                )
            }
            Error::OracleInputNotClean { index } => {
                write!(
                    f,
                    "oracle input has nonzero dust/answer amplitude at index {index}"
                )
            }
            Error::NormViolation { norm_sq } => {
                write!(f, "state norm^2 = {norm_sq} violates normalization")
            }
            Error::NonDiagonalDensity { off_diag } => {
                write!(f, "density has off-diagonal magnitude {off_diag}")
            }
            Error::DomainViolation { name, value } => {
                write!(f, "{name} = {value} outside its domain")
            }
            Error::StageOutOfRange { i, n } => write!(f, "stage {i} outside 1..={n}"),
            Error::InvalidRange { lo, hi } => write!(f, "invalid range {lo}..={hi}"),
            Error::ReconcileMismatch { report_n, model_n } => {
                write!(
                    f,
                    "report has n = {report_n} but cost model has n = {model_n}"
                )
            }
        }
    }
}

impl core::error::Error for Error {}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}

pub type Result<T> = core::result::Result<T, Error>;
