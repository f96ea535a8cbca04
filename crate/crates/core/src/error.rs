use thiserror::Error;

use crate::pauli::Qubit;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PauliError {
    #[error("qubit {0} is assigned two different letters")]
    DuplicateIndex(Qubit),
    #[error("negative qubit index {0}")]
    NegativeIndex(i64),
    #[error("qubit index {0} does not fit in 32 bits")]
    IndexOutOfRange(i64),
    #[error("identity letter stored as an explicit entry")]
    IdentityEntry,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("string of weight {weight} exceeds the weight cap {cap}")]
    WeightCapExceeded { weight: usize, cap: usize },
    #[error("pattern count overflow after {inserted} insertions")]
    CountOverflow { inserted: u64 },
    #[error("table corrupted: inserted={inserted} and zeta={zeta} have different parity")]
    ParityViolation { inserted: u64, zeta: i128 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BatchError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("string {index} reported {count} anticommuting predecessors but none was found")]
    InternalInconsistency { index: usize, count: u64 },
}

impl BatchError {
    /// Index of the string being processed when a table error occurred.
    pub fn with_index(self, index: usize) -> IndexedBatchError {
        IndexedBatchError { index, source: self }
    }
}

/// A batch error tagged with the input position that triggered it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("string {index}: {source}")]
pub struct IndexedBatchError {
    pub index: usize,
    #[source]
    pub source: BatchError,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BaselineError {
    #[error("{m} strings exceed the edge-listing limit {max_m}")]
    TooLarge { m: usize, max_m: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character {found:?} at position {position}")]
    BadCharacter { position: usize, found: char },
    #[error("empty line")]
    EmptyLine,
    #[error("malformed token {token:?}")]
    BadToken { token: String },
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("line {line}: {source}")]
    Parse {
        line: usize,
        #[source]
        source: ParseError,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WorkloadError {
    #[error("invalid instance spec: {0}")]
    InvalidSpec(String),
    #[error("qubit {index} does not fit in a dense string of length {n}")]
    IndexOutOfRange { index: Qubit, n: usize },
}
