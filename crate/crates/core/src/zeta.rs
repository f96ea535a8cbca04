//! Labeled-pattern count table with subset-zeta anticommutation queries.
//!
//! Inserting a string of weight `w` increments the count of each of its `2^w`
//! labeled sub-patterns. A query for `P` sums, for every subset `A` of
//! `supp(P)`, the counts of the patterns on `A` that disagree with `P` on every
//! position. Weighting those sums by `(-2)^|A|` gives `Z`, and the number of
//! inserted strings anticommuting with `P` is `(N - Z) / 2`.

use std::sync::atomic::{AtomicU64, Ordering};

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::error::TableError;
use crate::pauli::{PauliLetter, Qubit, SparsePauliString};

/// Default weight cap. A weight-20 query already costs `3^20` lookups.
pub const DEFAULT_WEIGHT_CAP: usize = 20;

/// Largest accepted weight cap. Keeps subset masks in a `u64` and the
/// signed zeta accumulator inside `i128`.
pub const MAX_WEIGHT_CAP: usize = 40;

/// Upper bound on the number of inserted strings, `2^62`.
pub const MAX_INSERTED: u64 = 1 << 62;

/// A set of qubit positions with a non-identity letter on each.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledPattern {
    pairs: Vec<(Qubit, PauliLetter)>,
}

impl LabeledPattern {
    pub fn empty() -> Self {
        Self::default()
    }

    /// `None` unless the pairs are strictly ascending and identity-free.
    pub fn new(pairs: Vec<(Qubit, PauliLetter)>) -> Option<Self> {
        let ascending = pairs.windows(2).all(|w| w[0].0 < w[1].0);
        let non_identity = pairs.iter().all(|&(_, l)| !l.is_identity());
        (ascending && non_identity).then_some(Self { pairs })
    }

    pub fn pairs(&self) -> &[(Qubit, PauliLetter)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn positions(&self) -> Vec<Qubit> {
        self.pairs.iter().map(|&(q, _)| q).collect()
    }

    /// Whether `q` contains this pattern: every position carries the same letter.
    pub fn contained_in(&self, q: &SparsePauliString) -> bool {
        self.pairs.iter().all(|&(j, l)| q.letter(j) == l)
    }

    fn key(&self) -> Vec<u64> {
        self.pairs.iter().map(|&(q, l)| pack(q, l)).collect()
    }
}

/// Packed pattern key, stored inline up to four entries.
type Key = SmallVec<[u64; 4]>;

/// One key word per pattern entry: the 32-bit qubit index above a 2-bit letter code.
#[inline]
fn pack(qubit: Qubit, letter: PauliLetter) -> u64 {
    (u64::from(qubit) << 2) | u64::from(letter.code())
}

/// Snapshot of the table's operation counters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCounters {
    pub dict_updates: u64,
    pub dict_lookups: u64,
}

impl std::ops::Sub for OpCounters {
    type Output = OpCounters;

    fn sub(self, rhs: OpCounters) -> OpCounters {
        OpCounters {
            dict_updates: self.dict_updates - rhs.dict_updates,
            dict_lookups: self.dict_lookups - rhs.dict_lookups,
        }
    }
}

/// Result of one query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QueryResult {
    /// Number of inserted strings anticommuting with the query.
    pub count: u64,
    /// The zeta sum `Z`; equals `inserted - 2 * count`.
    pub zeta: i64,
}

/// A query with its per-subset intermediate sums, for inspection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueryTrace {
    /// `(A, F(A))` for every subset `A` of the query support, in subset-mask order.
    pub subset_sums: Vec<(Vec<Qubit>, u64)>,
    pub result: QueryResult,
}

/// Counts of labeled patterns over a multiset of inserted strings.
///
/// Insertion needs `&mut self`; queries take `&self` and only touch the
/// atomic lookup counter, so a table that is no longer being filled can be
/// queried from several threads.
#[derive(Debug)]
pub struct PatternCountTable {
    counts: FxHashMap<Key, u64>,
    inserted: u64,
    weight_cap: usize,
    dict_updates: AtomicU64,
    dict_lookups: AtomicU64,
}

impl Default for PatternCountTable {
    fn default() -> Self {
        Self::new()
    }
}

impl Clone for PatternCountTable {
    fn clone(&self) -> Self {
        Self {
            counts: self.counts.clone(),
            inserted: self.inserted,
            weight_cap: self.weight_cap,
            dict_updates: AtomicU64::new(self.dict_updates.load(Ordering::Relaxed)),
            dict_lookups: AtomicU64::new(self.dict_lookups.load(Ordering::Relaxed)),
        }
    }
}

impl PartialEq for PatternCountTable {
    /// Tables are equal when they hold the same counts; counters are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.inserted == other.inserted && self.counts == other.counts
    }
}

impl PatternCountTable {
    pub fn new() -> Self {
        Self::with_weight_cap(DEFAULT_WEIGHT_CAP)
    }

    /// # Panics
    /// If `weight_cap` exceeds [`MAX_WEIGHT_CAP`].
    pub fn with_weight_cap(weight_cap: usize) -> Self {
        assert!(
            weight_cap <= MAX_WEIGHT_CAP,
            "weight cap {weight_cap} exceeds {MAX_WEIGHT_CAP}"
        );
        Self {
            counts: FxHashMap::default(),
            inserted: 0,
            weight_cap,
            dict_updates: AtomicU64::new(0),
            dict_lookups: AtomicU64::new(0),
        }
    }

    /// Reserve room for `additional` more distinct patterns.
    pub fn reserve(&mut self, additional: usize) {
        self.counts.reserve(additional);
    }

    pub fn weight_cap(&self) -> usize {
        self.weight_cap
    }

    /// `N`, the number of inserted strings.
    pub fn inserted(&self) -> u64 {
        self.inserted
    }

    /// Number of distinct stored patterns.
    pub fn distinct_patterns(&self) -> usize {
        self.counts.len()
    }

    pub fn counters(&self) -> OpCounters {
        OpCounters {
            dict_updates: self.dict_updates.load(Ordering::Relaxed),
            dict_lookups: self.dict_lookups.load(Ordering::Relaxed),
        }
    }

    /// Stored count for a pattern; zero when never inserted. Not counted as a lookup.
    pub fn count(&self, pattern: &LabeledPattern) -> u64 {
        self.counts.get(pattern.key().as_slice()).copied().unwrap_or(0)
    }

    /// All stored patterns and their counts, in unspecified order.
    pub fn iter(&self) -> impl Iterator<Item = (LabeledPattern, u64)> + '_ {
        self.counts.iter().map(|(key, &c)| {
            let pairs = key
                .iter()
                .map(|&w| {
                    let letter = PauliLetter::from_code((w & 0b11) as u8).expect("2-bit code");
                    ((w >> 2) as Qubit, letter)
                })
                .collect();
            (LabeledPattern { pairs }, c)
        })
    }

    fn check_weight(&self, p: &SparsePauliString) -> Result<(), TableError> {
        if p.weight() > self.weight_cap {
            return Err(TableError::WeightCapExceeded {
                weight: p.weight(),
                cap: self.weight_cap,
            });
        }
        Ok(())
    }

    /// Increment the count of every labeled sub-pattern of `q`.
    ///
    /// Performs exactly `2^wt(q)` dictionary updates. The table is unchanged
    /// on error.
    pub fn insert(&mut self, q: &SparsePauliString) -> Result<(), TableError> {
        self.check_weight(q)?;
        if self.inserted >= MAX_INSERTED {
            return Err(TableError::CountOverflow {
                inserted: self.inserted,
            });
        }
        let words: Vec<u64> = q.entries().iter().map(|&(j, l)| pack(j, l)).collect();
        let subsets = 1u64 << words.len();
        let mut key = Vec::with_capacity(words.len());
        for mask in 0..subsets {
            key.clear();
            key.extend(
                words
                    .iter()
                    .enumerate()
                    .filter(|&(bit, _)| mask >> bit & 1 == 1)
                    .map(|(_, &w)| w),
            );
            match self.counts.get_mut(key.as_slice()) {
                // counts never exceed `inserted` < 2^62
                Some(c) => *c += 1,
                None => {
                    self.counts.insert(Key::from_slice(&key), 1);
                }
            }
        }
        self.inserted += 1;
        self.dict_updates.fetch_add(subsets, Ordering::Relaxed);
        Ok(())
    }

    /// Number of inserted strings anticommuting with `p`, via the zeta sum.
    ///
    /// Performs exactly `3^wt(p)` dictionary lookups.
    pub fn anti_count(&self, p: &SparsePauliString) -> Result<QueryResult, TableError> {
        self.query(p, None)
    }

    /// As [`anti_count`](Self::anti_count), also recording `F(A)` per subset.
    pub fn anti_count_traced(&self, p: &SparsePauliString) -> Result<QueryTrace, TableError> {
        let mut subset_sums = Vec::with_capacity(1 << p.weight().min(20));
        let result = self.query(p, Some(&mut subset_sums))?;
        Ok(QueryTrace {
            subset_sums,
            result,
        })
    }

    fn query(
        &self,
        p: &SparsePauliString,
        mut trace: Option<&mut Vec<(Vec<Qubit>, u64)>>,
    ) -> Result<QueryResult, TableError> {
        self.check_weight(p)?;
        let entries = p.entries();
        // The two conflicting key words per support position.
        let alternatives: Vec<[u64; 2]> = entries
            .iter()
            .map(|&(j, l)| {
                let [a, b] = l.others().expect("canonical strings have no identity entries");
                [pack(j, a), pack(j, b)]
            })
            .collect();

        let mut zeta: i128 = 0;
        let mut lookups: u64 = 0;
        let mut chosen: Vec<usize> = Vec::with_capacity(entries.len());
        let mut key: Vec<u64> = Vec::with_capacity(entries.len());
        for mask in 0..(1u64 << entries.len()) {
            chosen.clear();
            chosen.extend((0..entries.len()).filter(|&bit| mask >> bit & 1 == 1));
            let size = chosen.len();
            let mut f: u64 = 0;
            for choice in 0..(1u64 << size) {
                key.clear();
                key.extend(
                    chosen
                        .iter()
                        .enumerate()
                        .map(|(t, &pos)| alternatives[pos][(choice >> t & 1) as usize]),
                );
                f += self.counts.get(key.as_slice()).copied().unwrap_or(0);
            }
            lookups += 1 << size;
            // (-2)^size
            let weight = if size % 2 == 0 { 1i128 } else { -1i128 } << size;
            zeta += weight * i128::from(f);
            if let Some(trace) = trace.as_deref_mut() {
                trace.push((chosen.iter().map(|&pos| entries[pos].0).collect(), f));
            }
        }
        self.dict_lookups.fetch_add(lookups, Ordering::Relaxed);

        let n = i128::from(self.inserted);
        let diff = n - zeta;
        if diff.rem_euclid(2) != 0 || diff < 0 || diff > 2 * n {
            return Err(TableError::ParityViolation {
                inserted: self.inserted,
                zeta,
            });
        }
        Ok(QueryResult {
            count: (diff / 2) as u64,
            zeta: zeta as i64,
        })
    }
}

/// The `2^|A|` patterns on `subset` whose letters all differ from `p`'s.
///
/// Returns `None` unless `subset` is an ascending list of positions in
/// `supp(p)`. Patterns are produced with the first position varying fastest.
pub fn conflicting_assignments(p: &SparsePauliString, subset: &[Qubit]) -> Option<Vec<LabeledPattern>> {
    if !subset.windows(2).all(|w| w[0] < w[1]) {
        return None;
    }
    let choices: Vec<(Qubit, [PauliLetter; 2])> = subset
        .iter()
        .map(|&j| p.letter(j).others().map(|o| (j, o)))
        .collect::<Option<_>>()?;
    let out = (0..(1u64 << choices.len()))
        .map(|choice| LabeledPattern {
            pairs: choices
                .iter()
                .enumerate()
                .map(|(t, &(j, o))| (j, o[(choice >> t & 1) as usize]))
                .collect(),
        })
        .collect();
    Some(out)
}

/// `sum_{t=0..r} C(r,t) (-2)^t`, by direct summation.
///
/// # Panics
/// If `r > 20`.
pub fn zeta_identity_check(r: u32) -> i64 {
    assert!(r <= 20, "zeta identity check is limited to r <= 20");
    let mut binom: i64 = 1;
    let mut sum: i64 = 0;
    for t in 0..=r {
        sum += binom * (-2i64).pow(t);
        binom = binom * i64::from(r - t) / i64::from(t + 1);
    }
    sum
}
