//! Exact anticommutation counting, commutation certification and witness
//! finding for collections of sparse k-local Pauli strings.
//!
//! The [`zeta::PatternCountTable`] stores counts of every labeled sub-pattern
//! of the strings inserted so far and answers "how many of them anticommute
//! with `P`" with `3^wt(P)` lookups. [`batch`] streams a list through one
//! table, which makes counting linear in the number of strings for bounded
//! weight. [`baseline`] is the quadratic pairwise check used as an oracle.

pub mod baseline;
pub mod batch;
pub mod bench;
pub mod error;
pub mod pauli;
pub mod workload;
pub mod zeta;

pub use batch::{BatchEngine, BatchReport};
pub use error::{BatchError, IndexedBatchError, PauliError, TableError};
pub use pauli::{anticommutes, conflict_set, PauliLetter, Qubit, SparsePauliString, SymplecticPair};
pub use zeta::{LabeledPattern, OpCounters, PatternCountTable};
