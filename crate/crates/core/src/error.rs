use thiserror::Error;

/// Errors raised by constructors and operation preconditions.
///
/// Every message names the violated invariant; callers (notably the CLI)
/// surface these verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("undefined for empty composition")]
    EmptyComposition,
    #[error("invalid split point: {point} not in 1..={max}")]
    InvalidSplitPoint { point: usize, max: usize },
    #[error("incomparable sizes: composition of {0} vs composition of {1}")]
    IncomparableSizes(usize, usize),
    #[error("indices not ordered: need i < j, got i = {i}, j = {j}")]
    IndicesNotOrdered { i: usize, j: usize },
    #[error("index out of range: {index} not in 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("invalid subset: {0}")]
    InvalidSubset(String),
    #[error("composition parts must be positive")]
    NonPositivePart,
    #[error("not a permutation of {{1..n}}: {0}")]
    NotAPermutation(String),
    #[error("not surjective onto [m]: {0}")]
    NotPacked(String),
    #[error("not a parking function: {0}")]
    NotAParkingFunction(String),
    #[error("not a Dyck path: {0}")]
    NotADyckPath(String),
    #[error("increasing-run violation: {0}")]
    IncreasingRunViolation(String),
    #[error("not a QSS of the target: {0}")]
    NotAQuasiShuffle(String),
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("cancellation-free formula unproven for this species: {0}")]
    UnprovenForSpecies(&'static str),
    #[error("invalid notation: {0}")]
    InvalidNotation(String),
    #[error("species mismatch: expected {expected}, got {got}")]
    SpeciesMismatch {
        expected: &'static str,
        got: String,
    },
}
