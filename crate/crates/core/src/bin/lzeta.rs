//! `lzeta`: count, certify, compare and benchmark over Pauli string corpora.
//!
//! Exit codes: 0 success or all-commute, 1 witness found or algorithm
//! mismatch, 2 input or parse error, 3 weight-cap violation, 4 internal
//! consistency failure.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use locality_zeta::bench::{self, Sweep};
use locality_zeta::error::{BatchError, CorpusError, TableError};
use locality_zeta::workload::{
    self, Corpus, FormatChoice, InstanceSpec, LineFormat, WeightDist,
};
use locality_zeta::zeta::{DEFAULT_WEIGHT_CAP, MAX_WEIGHT_CAP};
use locality_zeta::{BatchEngine, IndexedBatchError};

const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

/// Exact anticommutation counting for sparse k-local Pauli strings.
///
/// Qubit indices are 0-based: in dense files the first character is qubit 0,
/// in sparse files `X0` names qubit 0.
#[derive(Parser, Debug)]
#[command(name = "lzeta", version, after_help = EXIT_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

const EXIT_HELP: &str = "Exit codes:
  0  success / all strings commute
  1  witness found (certify) or algorithm mismatch (compare)
  2  unreadable input or parse error
  3  a string exceeds the weight cap
  4  internal consistency failure";

#[derive(Subcommand, Debug)]
enum Command {
    /// Count anticommuting unordered pairs in a corpus file.
    Count(InputArgs),
    /// Check that all strings commute pairwise; print a witness pair if not.
    Certify(InputArgs),
    /// Run both algorithms on random instances and check they agree.
    Compare(CompareArgs),
    /// Sweep m and k, reporting timings and exact operation counters.
    Bench(BenchArgs),
    /// Write a random corpus.
    Gen(GenArgs),
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Corpus file, one string per line.
    input: PathBuf,
    /// Line format: dense, sparse or auto.
    #[arg(long, default_value = "auto")]
    format: FormatChoice,
    /// Largest accepted string weight.
    #[arg(long, default_value_t = DEFAULT_WEIGHT_CAP, value_parser = weight_cap)]
    weight_cap: usize,
}

#[derive(Args, Debug, Clone)]
struct InstanceArgs {
    /// Number of strings.
    #[arg(long, default_value_t = 1000)]
    m: usize,
    /// Qubit index range 0..n.
    #[arg(long, default_value_t = 64)]
    n: u64,
    /// Maximum string weight.
    #[arg(long, default_value_t = 4)]
    k: usize,
    /// fixed (every weight is k) or uniform (weights 1..=k).
    #[arg(long, default_value = "fixed")]
    weight_dist: WeightDist,
    /// ChaCha8 seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl InstanceArgs {
    fn spec(&self) -> InstanceSpec {
        InstanceSpec {
            m: self.m,
            n: self.n,
            k: self.k,
            weight_dist: self.weight_dist,
            seed: self.seed,
        }
    }
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Number of instances; trial t uses seed + t.
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = DEFAULT_WEIGHT_CAP, value_parser = weight_cap)]
    weight_cap: usize,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Comma-separated string counts.
    #[arg(long, value_delimiter = ',', default_value = "1000,10000")]
    m_list: Vec<usize>,
    /// Comma-separated weights.
    #[arg(long, value_delimiter = ',', default_value = "4")]
    k_list: Vec<usize>,
    #[arg(long, default_value_t = 1024)]
    n: u64,
    #[arg(long, default_value = "fixed")]
    weight_dist: WeightDist,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// The baseline is skipped for larger m.
    #[arg(long, default_value_t = 20_000)]
    baseline_max_m: usize,
    /// Runs per cell; the fastest is reported.
    #[arg(long, default_value_t = 1)]
    repeat: usize,
    #[arg(long, default_value_t = DEFAULT_WEIGHT_CAP, value_parser = weight_cap)]
    weight_cap: usize,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Output line format: dense (n characters per line) or sparse.
    #[arg(long, default_value = "sparse", value_parser = ["dense", "sparse"])]
    format: String,
    /// Fix one letter per qubit so the family commutes pairwise.
    #[arg(long)]
    commuting: bool,
    /// Output path; standard output when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn weight_cap(s: &str) -> Result<usize, String> {
    let cap: usize = s.parse().map_err(|e| format!("{e}"))?;
    if cap > MAX_WEIGHT_CAP {
        return Err(format!("weight cap must be at most {MAX_WEIGHT_CAP}"));
    }
    Ok(cap)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Count(args) => count(&args),
        Command::Certify(args) => certify(&args),
        Command::Compare(args) => compare(&args),
        Command::Bench(args) => run_bench(&args),
        Command::Gen(args) => gen(&args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

struct Failure(u8, String);

type CmdResult = Result<u8, Failure>;

fn io_failure(e: io::Error) -> Failure {
    Failure(EXIT_INPUT, e.to_string())
}

fn load(args: &InputArgs) -> Result<Corpus, Failure> {
    let corpus = workload::read_corpus(&args.input, args.format).map_err(|e| match e {
        CorpusError::Parse { line, source } => Failure(
            EXIT_INPUT,
            format!("{}:{line}: {source}", args.input.display()),
        ),
        CorpusError::Io(e) => Failure(EXIT_INPUT, format!("{}: {e}", args.input.display())),
    })?;
    if let Some(i) = corpus.strings.iter().position(|p| p.weight() > args.weight_cap) {
        return Err(cap_failure(&args.input, &corpus, i, args.weight_cap));
    }
    Ok(corpus)
}

fn cap_failure(path: &Path, corpus: &Corpus, index: usize, cap: usize) -> Failure {
    Failure(
        EXIT_CAP,
        format!(
            "{}:{}: string of weight {} exceeds the weight cap {cap}",
            path.display(),
            corpus.lines[index],
            corpus.strings[index].weight()
        ),
    )
}

fn batch_failure(path: &Path, corpus: &Corpus, err: IndexedBatchError) -> Failure {
    match err.source {
        BatchError::Table(TableError::WeightCapExceeded { cap, .. }) => {
            cap_failure(path, corpus, err.index, cap)
        }
        other => Failure(
            EXIT_INTERNAL,
            format!("{}:{}: {other}", path.display(), corpus.lines[err.index]),
        ),
    }
}

fn count(args: &InputArgs) -> CmdResult {
    let corpus = load(args)?;
    let report = BatchEngine::new(args.weight_cap)
        .count_all_anticommuting_pairs(&corpus.strings)
        .map_err(|e| batch_failure(&args.input, &corpus, e))?;
    println!(
        "m={} T={} dict_updates={} dict_lookups={} elapsed_ns={}",
        report.m,
        report.total_anti_pairs,
        report.counters.dict_updates,
        report.counters.dict_lookups,
        report.elapsed.as_nanos()
    );
    eprintln!(
        "{} strings, {} anticommuting pairs ({:.3} ms)",
        report.m,
        report.total_anti_pairs,
        report.elapsed.as_secs_f64() * 1e3
    );
    Ok(0)
}

fn certify(args: &InputArgs) -> CmdResult {
    let corpus = load(args)?;
    let report = BatchEngine::new(args.weight_cap)
        .certify(&corpus.strings)
        .map_err(|e| batch_failure(&args.input, &corpus, e))?;
    match report.witness {
        None => {
            println!("ALL-COMMUTE");
            eprintln!("{} strings commute pairwise", report.m);
            Ok(0)
        }
        Some((i, j)) => {
            println!("WITNESS {i} {j}");
            eprintln!(
                "lines {} and {} anticommute: {} / {}",
                corpus.lines[i], corpus.lines[j], corpus.strings[i], corpus.strings[j]
            );
            Ok(EXIT_VIOLATION)
        }
    }
}

fn compare(args: &CompareArgs) -> CmdResult {
    let spec = args.instance.spec();
    let records = bench::compare(&spec, args.trials, BatchEngine::new(args.weight_cap))
        .map_err(|e| Failure(EXIT_INPUT, e.to_string()))?;
    let mut out = io::stdout().lock();
    let mut mismatches = 0;
    for r in &records {
        writeln!(
            out,
            "trial={} seed={} m={} n={} k={} zeta_T={} baseline_T={} agree={} zeta_elapsed_ns={} baseline_elapsed_ns={} dict_updates={} dict_lookups={} pair_tests={}",
            r.trial,
            r.zeta.seed,
            r.zeta.m,
            r.zeta.n,
            r.zeta.k,
            r.zeta.total_anti_pairs,
            r.baseline.total_anti_pairs,
            r.agree(),
            r.zeta.elapsed.as_nanos(),
            r.baseline.elapsed.as_nanos(),
            r.zeta.dict_updates,
            r.zeta.dict_lookups,
            r.baseline.pair_tests,
        )
        .map_err(io_failure)?;
        if let Some(range) = &r.reproducer {
            mismatches += 1;
            writeln!(
                out,
                "MISMATCH trial={} seed={} start={} end={}",
                r.trial, r.zeta.seed, range.start, range.end
            )
            .map_err(io_failure)?;
        }
    }
    eprintln!(
        "{} of {} trials agree",
        records.len() - mismatches,
        records.len()
    );
    Ok(if mismatches == 0 { 0 } else { EXIT_VIOLATION })
}

fn run_bench(args: &BenchArgs) -> CmdResult {
    let plan = Sweep {
        ms: args.m_list.clone(),
        ks: args.k_list.clone(),
        n: args.n,
        weight_dist: args.weight_dist,
        seed: args.seed,
        baseline_max_m: args.baseline_max_m,
        repeat: args.repeat,
    };
    let rows = bench::sweep(&plan, BatchEngine::new(args.weight_cap))
        .map_err(|e| Failure(EXIT_INPUT, e.to_string()))?;
    let mut out = io::stdout().lock();
    for r in &rows {
        writeln!(out, "{r}").map_err(io_failure)?;
    }
    for r in &rows {
        eprintln!(
            "{:>8} m={:<8} k={:<2} {:>12.3} ms  T={}",
            r.algorithm.to_string(),
            r.m,
            r.k,
            r.elapsed.as_secs_f64() * 1e3,
            r.total_anti_pairs
        );
    }
    Ok(0)
}

fn gen(args: &GenArgs) -> CmdResult {
    let spec = args.instance.spec();
    let strings = if args.commuting {
        workload::generate_commuting(&spec)
    } else {
        workload::generate(&spec)
    }
    .map_err(|e| Failure(EXIT_INPUT, e.to_string()))?;
    let format = if args.format == "dense" {
        LineFormat::Dense {
            n: usize::try_from(spec.n).map_err(|e| Failure(EXIT_INPUT, e.to_string()))?,
        }
    } else {
        LineFormat::Sparse
    };
    let written = match &args.output {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| Failure(EXIT_INPUT, format!("{}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            workload::write_corpus(&mut w, &strings, format).and_then(|_| w.flush())
        }
        None => {
            let mut w = BufWriter::new(io::stdout().lock());
            workload::write_corpus(&mut w, &strings, format).and_then(|_| w.flush())
        }
    };
    written.map_err(io_failure)?;
    Ok(0)
}
