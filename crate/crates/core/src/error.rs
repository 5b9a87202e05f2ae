use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Errors raised by circuit construction, simulation, and parsing.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Basis index does not fit the requested register width.
    IndexOutOfRange { index: u64, dimension: u64 },
    /// Requested qubit count exceeds the configured statevector cap.
    QubitCapExceeded { requested: usize, cap: usize },
    /// A gate references a qubit outside the circuit or state.
    QubitOutOfRange { qubit: usize, qubit_count: usize },
    /// A qubit appears more than once among a gate's controls and targets.
    OverlappingControlTarget { qubit: usize },
    /// A multi-controlled X was built with no targets.
    EmptyTargets,
    /// Circuit and state qubit counts disagree.
    DimensionMismatch { expected: usize, actual: usize },
    /// A register value does not fit the register width.
    ValueOutOfRange { value: u64, width: usize },
    /// Dense-matrix extraction requested above the matrix qubit cap.
    MatrixCapExceeded { qubit_count: usize, cap: usize },
    /// Malformed QASM input.
    ParseError { line: usize, message: String },
    /// QASM input uses a gate outside the supported subset.
    UnsupportedGate { line: usize, gate: String },
    /// Database body does not contain exactly 2^n records.
    WrongRecordCount { expected: usize, actual: usize },
    /// Database record contains a character other than 0 or 1.
    BadBitChar { line: usize, ch: char },
    /// Database header is not `n m`.
    BadHeader { line: usize },
    /// Database record line width differs from the declared m.
    RecordWidthMismatch { expected: usize, actual: usize },
    /// Layout dimensions do not match the database.
    LayoutMismatch,
    /// A fixed qubit is driven by a gate that cannot be folded classically.
    NotClassicallyFoldable { qubit: usize },
    /// Iteration scheduling asked for a search with no solutions.
    ZeroMultiplicity,
    /// Statevector norm drifted beyond tolerance; indicates a kernel bug.
    NormDrift { norm_sqr: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::IndexOutOfRange { index, dimension } => {
                write!(f, "basis index {index} out of range for dimension {dimension}")
            }
            Error::QubitCapExceeded { requested, cap } => {
                write!(f, "qubit count {requested} exceeds cap {cap}")
            }
            Error::QubitOutOfRange { qubit, qubit_count } => {
                write!(f, "qubit {qubit} out of range for {qubit_count}-qubit system")
            }
            Error::OverlappingControlTarget { qubit } => {
                write!(f, "qubit {qubit} appears more than once in one gate")
            }
            Error::EmptyTargets => write!(f, "multi-controlled X needs at least one target"),
            Error::DimensionMismatch { expected, actual } => {
                write!(f, "expected {expected} qubits, got {actual}")
            }
            Error::ValueOutOfRange { value, width } => {
                write!(f, "value {value} does not fit in {width} bits")
            }
            Error::MatrixCapExceeded { qubit_count, cap } => {
                write!(f, "dense matrix for {qubit_count} qubits exceeds cap of {cap}")
            }
            Error::ParseError { line, message } => write!(f, "line {line}: {message}"),
            Error::UnsupportedGate { line, gate } => {
                write!(f, "line {line}: unsupported gate `{gate}`")
            }
            Error::WrongRecordCount { expected, actual } => {
                write!(f, "expected {expected} records, found {actual}")
            }
            Error::BadBitChar { line, ch } => {
                write!(f, "line {line}: invalid bit character {ch:?}")
            }
            Error::BadHeader { line } => write!(f, "line {line}: header must be `n m`"),
            Error::RecordWidthMismatch { expected, actual } => {
                write!(f, "record width {actual} does not match declared m = {expected}")
            }
            Error::LayoutMismatch => write!(f, "qubit layout does not match database dimensions"),
            Error::NotClassicallyFoldable { qubit } => {
                write!(f, "fixed qubit {qubit} is driven quantumly and cannot be folded")
            }
            Error::ZeroMultiplicity => write!(f, "no iteration count for zero solutions"),
            Error::NormDrift { norm_sqr } => {
                write!(f, "statevector norm drifted: |psi|^2 = {norm_sqr}")
            }
        }
    }
}

impl core::error::Error for Error {}
