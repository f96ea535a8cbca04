//! Head-to-head runs of the pattern table against the pairwise baseline.
//!
//! Rows are rendered as space-separated `key=value` records. Operation
//! counters are exact; timings are whatever the machine gives.

use std::fmt;
use std::ops::Range;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::baseline::pairwise_count_instrumented;
use crate::batch::BatchEngine;
use crate::error::{IndexedBatchError, WorkloadError};
use crate::pauli::SparsePauliString;
use crate::workload::{generate, InstanceSpec, WeightDist};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    Zeta,
    Baseline,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Zeta => "zeta",
            Algorithm::Baseline => "baseline",
        })
    }
}

/// One algorithm run on one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub algorithm: Algorithm,
    pub m: usize,
    pub n: u64,
    pub k: usize,
    pub weight_dist: WeightDist,
    pub seed: u64,
    pub total_anti_pairs: u64,
    pub elapsed: Duration,
    pub dict_updates: u64,
    pub dict_lookups: u64,
    pub pair_tests: u64,
}

impl fmt::Display for BenchRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dist = match self.weight_dist {
            WeightDist::Fixed => "fixed",
            WeightDist::Uniform => "uniform",
        };
        write!(
            f,
            "algorithm={} m={} n={} k={} weight_dist={} seed={} T={} elapsed_ns={} dict_updates={} dict_lookups={} pair_tests={}",
            self.algorithm,
            self.m,
            self.n,
            self.k,
            dist,
            self.seed,
            self.total_anti_pairs,
            self.elapsed.as_nanos(),
            self.dict_updates,
            self.dict_lookups,
            self.pair_tests,
        )
    }
}

fn row(spec: &InstanceSpec, algorithm: Algorithm) -> BenchRow {
    BenchRow {
        algorithm,
        m: spec.m,
        n: spec.n,
        k: spec.k,
        weight_dist: spec.weight_dist,
        seed: spec.seed,
        total_anti_pairs: 0,
        elapsed: Duration::ZERO,
        dict_updates: 0,
        dict_lookups: 0,
        pair_tests: 0,
    }
}

/// Run the streaming counter `repeat` times (at least once) and keep the fastest.
pub fn run_zeta(
    spec: &InstanceSpec,
    strings: &[SparsePauliString],
    engine: BatchEngine,
    repeat: usize,
) -> Result<BenchRow, IndexedBatchError> {
    let mut out = row(spec, Algorithm::Zeta);
    out.elapsed = Duration::MAX;
    for _ in 0..repeat.max(1) {
        let report = engine.count_all_anticommuting_pairs(strings)?;
        out.total_anti_pairs = report.total_anti_pairs;
        out.dict_updates = report.counters.dict_updates;
        out.dict_lookups = report.counters.dict_lookups;
        out.elapsed = out.elapsed.min(report.elapsed);
    }
    Ok(out)
}

/// Run the pairwise baseline `repeat` times (at least once) and keep the fastest.
pub fn run_baseline(spec: &InstanceSpec, strings: &[SparsePauliString], repeat: usize) -> BenchRow {
    let mut out = row(spec, Algorithm::Baseline);
    out.elapsed = Duration::MAX;
    for _ in 0..repeat.max(1) {
        let start = Instant::now();
        let result = pairwise_count_instrumented(strings);
        out.elapsed = out.elapsed.min(start.elapsed());
        out.total_anti_pairs = result.total_anti_pairs;
        out.pair_tests = result.pair_tests;
    }
    out
}

/// Seed of trial `t` in a run started from `seed`.
pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed.wrapping_add(trial as u64)
}

/// Outcome of one comparison trial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialRecord {
    pub trial: usize,
    pub zeta: BenchRow,
    pub baseline: BenchRow,
    /// Smallest checked index range on which the two counts still differ.
    pub reproducer: Option<Range<usize>>,
}

impl TrialRecord {
    pub fn agree(&self) -> bool {
        self.zeta.total_anti_pairs == self.baseline.total_anti_pairs
    }
}

/// A pair-counting routine under test.
pub type PairCounter = dyn Fn(&[SparsePauliString]) -> Result<u64, IndexedBatchError> + Sync;

/// Generate `trials` instances (seeds `seed, seed+1, ...`) and count each with
/// both algorithms. Records come back in trial order.
pub fn compare(base: &InstanceSpec, trials: usize, engine: BatchEngine) -> Result<Vec<TrialRecord>, CompareError> {
    let zeta = move |s: &[SparsePauliString]| {
        engine
            .count_all_anticommuting_pairs(s)
            .map(|r| r.total_anti_pairs)
    };
    compare_with(base, trials, engine, &zeta)
}

/// [`compare`] with the candidate counter used for mismatch minimization
/// supplied by the caller.
pub fn compare_with(
    base: &InstanceSpec,
    trials: usize,
    engine: BatchEngine,
    candidate: &PairCounter,
) -> Result<Vec<TrialRecord>, CompareError> {
    base.validate()?;
    (0..trials)
        .into_par_iter()
        .map(|trial| {
            let spec = InstanceSpec {
                seed: trial_seed(base.seed, trial),
                ..*base
            };
            let strings = generate(&spec)?;
            let mut zeta = run_zeta(&spec, &strings, engine, 1)?;
            zeta.total_anti_pairs = candidate(&strings)?;
            let baseline = run_baseline(&spec, &strings, 1);
            let reproducer = if zeta.total_anti_pairs == baseline.total_anti_pairs {
                None
            } else {
                Some(minimize_mismatch(&strings, candidate)?)
            };
            Ok(TrialRecord {
                trial,
                zeta,
                baseline,
                reproducer,
            })
        })
        .collect()
}

#[derive(Debug, thiserror::Error)]
pub enum CompareError {
    #[error(transparent)]
    Workload(#[from] WorkloadError),
    #[error(transparent)]
    Batch(#[from] IndexedBatchError),
}

/// Shrink a mismatching input to a smaller index range that still mismatches.
///
/// Binary-searches the end, then the start; every candidate range is checked,
/// so the returned range always reproduces the disagreement.
pub fn minimize_mismatch(
    strings: &[SparsePauliString],
    candidate: &PairCounter,
) -> Result<Range<usize>, IndexedBatchError> {
    let differs = |range: Range<usize>| -> Result<bool, IndexedBatchError> {
        let slice = &strings[range];
        Ok(candidate(slice)? != pairwise_count_instrumented(slice).total_anti_pairs)
    };
    let (mut lo, mut hi) = (0, strings.len());
    // smallest end that still differs
    let (mut a, mut b) = (lo, hi);
    while a < b {
        let mid = a + (b - a) / 2;
        if differs(lo..mid)? {
            b = mid;
        } else {
            a = mid + 1;
        }
    }
    if a <= hi && differs(lo..a)? {
        hi = a;
    }
    // largest start that still differs
    let (mut a, mut b) = (lo, hi);
    while a < b {
        let mid = a + (b - a).div_ceil(2);
        if differs(mid..hi)? {
            a = mid;
        } else {
            b = mid - 1;
        }
    }
    if differs(a..hi)? {
        lo = a;
    }
    Ok(lo..hi)
}

/// Sweep parameters for [`sweep`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sweep {
    pub ms: Vec<usize>,
    pub ks: Vec<usize>,
    pub n: u64,
    pub weight_dist: WeightDist,
    pub seed: u64,
    /// Largest `m` on which the baseline is run.
    pub baseline_max_m: usize,
    pub repeat: usize,
}

/// Rows over the `m x k` grid, zeta first then baseline per cell, in grid order.
pub fn sweep(plan: &Sweep, engine: BatchEngine) -> Result<Vec<BenchRow>, CompareError> {
    let mut rows = Vec::new();
    for &k in &plan.ks {
        for &m in &plan.ms {
            let spec = InstanceSpec {
                m,
                n: plan.n,
                k,
                weight_dist: plan.weight_dist,
                seed: plan.seed,
            };
            let strings = generate(&spec)?;
            let zeta = run_zeta(&spec, &strings, engine, plan.repeat)?;
            rows.push(zeta);
            if m <= plan.baseline_max_m {
                rows.push(run_baseline(&spec, &strings, plan.repeat));
            }
        }
    }
    Ok(rows)
}
