//! Error type shared by every module in the crate.

use thiserror::Error;

/// Errors produced by the matrix kernel, Hamiltonian builders, schedule
/// construction, circuit synthesis and experiment drivers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("expected {expected} entries for a {dim}x{dim} matrix, got {got}")]
    EntryCount {
        dim: usize,
        expected: usize,
        got: usize,
    },

    #[error("matrix entries must be finite")]
    NonFiniteEntries,

    #[error("matrix exponential would overflow: input norm {norm:.3e} exceeds {limit:.3e}")]
    ExpmOverflow { norm: f64, limit: f64 },

    #[error("Hamiltonian needs at least one term")]
    EmptyHamiltonian,

    #[error("term list must not be empty")]
    EmptyTermList,

    #[error("all terms must act on {expected} qubits, found one on {got}")]
    MixedTermWidth { expected: usize, got: usize },

    #[error("all terms must share dimension {expected}, found {got}")]
    MixedDimensions { expected: usize, got: usize },

    #[error("time must be positive, got {0}")]
    NonPositiveTime(f64),

    #[error("chain needs at least 2 sites, got {0}")]
    ChainTooShort(usize),

    #[error("{n} qubits exceeds the dense realization cap of {cap}")]
    DenseCap { n: usize, cap: usize },

    #[error("schedule needs at least one term")]
    ZeroTermCount,

    #[error("formula order must be even and >= 2, got {0}")]
    InvalidOrder(u32),

    #[error("coefficient index k must be >= 2, got {0}")]
    CoefficientIndex(u32),

    #[error("split count r must be >= 3, got {0}")]
    SplitCount(u32),

    #[error("no real splitting coefficient exists for even exponent k = {0}")]
    EvenRootExponent(u32),

    #[error("outside validity window: {0}")]
    ValidityWindow(String),

    #[error("schedule addresses {schedule} terms but the term list has {terms}")]
    TermCountMismatch { schedule: usize, terms: usize },

    #[error("circuit width {n} exceeds the dense evaluation cap of {cap}")]
    WidthCap { n: usize, cap: usize },

    #[error("qubit index {q} out of range for {n} qubits")]
    QubitIndex { q: usize, n: usize },

    #[error("control and target must differ, both are {0}")]
    SelfControl(usize),

    #[error("identity Pauli string with a nonzero effective angle has no exact realization in the gate set")]
    GlobalPhase,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid input: {0}")]
    BadInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
