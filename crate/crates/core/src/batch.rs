//! Streaming batch procedures: query each string against its predecessors,
//! then insert it.

use std::time::{Duration, Instant};

use crate::error::{BatchError, IndexedBatchError};
use crate::pauli::{anticommutes, SparsePauliString};
use crate::zeta::{OpCounters, PatternCountTable, DEFAULT_WEIGHT_CAP};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BatchReport {
    /// Number of strings processed. In certify mode this stops at the
    /// violating string.
    pub m: usize,
    pub total_anti_pairs: u64,
    /// `(i, j)` with `i < j`, 0-based.
    pub witness: Option<(usize, usize)>,
    pub counters: OpCounters,
    pub elapsed: Duration,
}

impl BatchReport {
    /// Equality ignoring `elapsed`.
    pub fn same_result(&self, other: &BatchReport) -> bool {
        self.m == other.m
            && self.total_anti_pairs == other.total_anti_pairs
            && self.witness == other.witness
            && self.counters == other.counters
    }
}

const RESERVE_WEIGHT_LIMIT: usize = 16;
const RESERVE_KEY_LIMIT: usize = 1 << 24;

/// Runs the streaming loop over one table.
#[derive(Clone, Copy, Debug)]
pub struct BatchEngine {
    weight_cap: usize,
}

impl Default for BatchEngine {
    fn default() -> Self {
        Self {
            weight_cap: DEFAULT_WEIGHT_CAP,
        }
    }
}

impl BatchEngine {
    pub fn new(weight_cap: usize) -> Self {
        Self { weight_cap }
    }

    pub fn weight_cap(&self) -> usize {
        self.weight_cap
    }

    /// Empty table sized for the sub-patterns of `strings`.
    fn table_for(&self, strings: &[SparsePauliString]) -> PatternCountTable {
        let mut table = PatternCountTable::with_weight_cap(self.weight_cap);
        // distinct keys never exceed the sum of 2^w; skip strings over the cap,
        // they fail on insert anyway
        let bound: usize = strings
            .iter()
            .filter(|p| p.weight() <= self.weight_cap.min(RESERVE_WEIGHT_LIMIT))
            .map(|p| 1usize << p.weight())
            .sum();
        table.reserve(bound.min(RESERVE_KEY_LIMIT));
        table
    }

    /// Total number of anticommuting unordered pairs.
    pub fn count_all_anticommuting_pairs(
        &self,
        strings: &[SparsePauliString],
    ) -> Result<BatchReport, IndexedBatchError> {
        let start = Instant::now();
        let mut table = self.table_for(strings);
        let mut total = 0u64;
        for (i, p) in strings.iter().enumerate() {
            total += step(&mut table, p, i)?;
        }
        Ok(BatchReport {
            m: strings.len(),
            total_anti_pairs: total,
            witness: None,
            counters: table.counters(),
            elapsed: start.elapsed(),
        })
    }

    /// Per-string anticommutation counts against the preceding strings.
    pub fn anti_degree_profile(
        &self,
        strings: &[SparsePauliString],
    ) -> Result<Vec<u64>, IndexedBatchError> {
        let mut table = PatternCountTable::with_weight_cap(self.weight_cap);
        strings
            .iter()
            .enumerate()
            .map(|(i, p)| step(&mut table, p, i))
            .collect()
    }

    /// Decide whether all strings commute pairwise.
    ///
    /// Stops at the first string with an anticommuting predecessor and
    /// reports `(j, i)` for the smallest such predecessor `j`. Without a
    /// violation the report has no witness and a zero total.
    pub fn certify(&self, strings: &[SparsePauliString]) -> Result<BatchReport, IndexedBatchError> {
        let start = Instant::now();
        let mut table = PatternCountTable::with_weight_cap(self.weight_cap);
        for (i, p) in strings.iter().enumerate() {
            let count = table
                .anti_count(p)
                .map_err(|e| BatchError::from(e).with_index(i))?
                .count;
            if count > 0 {
                let j = strings[..i]
                    .iter()
                    .position(|q| anticommutes(q, p))
                    .ok_or(BatchError::InternalInconsistency { index: i, count }.with_index(i))?;
                return Ok(BatchReport {
                    m: i + 1,
                    total_anti_pairs: count,
                    witness: Some((j, i)),
                    counters: table.counters(),
                    elapsed: start.elapsed(),
                });
            }
            table
                .insert(p)
                .map_err(|e| BatchError::from(e).with_index(i))?;
        }
        Ok(BatchReport {
            m: strings.len(),
            total_anti_pairs: 0,
            witness: None,
            counters: table.counters(),
            elapsed: start.elapsed(),
        })
    }
}

fn step(table: &mut PatternCountTable, p: &SparsePauliString, i: usize) -> Result<u64, IndexedBatchError> {
    let count = table
        .anti_count(p)
        .map_err(|e| BatchError::from(e).with_index(i))?
        .count;
    table
        .insert(p)
        .map_err(|e| BatchError::from(e).with_index(i))?;
    Ok(count)
}

/// [`BatchEngine::count_all_anticommuting_pairs`] with the default weight cap.
pub fn count_all_anticommuting_pairs(
    strings: &[SparsePauliString],
) -> Result<BatchReport, IndexedBatchError> {
    BatchEngine::default().count_all_anticommuting_pairs(strings)
}

/// [`BatchEngine::certify`] with the default weight cap.
pub fn certify(strings: &[SparsePauliString]) -> Result<BatchReport, IndexedBatchError> {
    BatchEngine::default().certify(strings)
}

/// [`BatchEngine::anti_degree_profile`] with the default weight cap.
pub fn anti_degree_profile(strings: &[SparsePauliString]) -> Result<Vec<u64>, IndexedBatchError> {
    BatchEngine::default().anti_degree_profile(strings)
}
