//! Corpus files and reproducible random instances.
//!
//! A corpus holds one Pauli string per line, either dense (`XIZY`, character
//! position = qubit) or sparse (`X0 Z2 Y3`). Lines starting with `#` are
//! comments and whitespace-only lines are skipped. When the format is not
//! given it is taken from the first data line: sparse iff it contains a digit.
//!
//! An optional global phase prefix (`+`, `-`, `i`, `+i`, `-i`) is accepted
//! and discarded.
//!
//! Random instances use ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64`, and draw bounded integers by rejection from raw 64-bit
//! outputs, so a seed names the same instance on every platform.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::Path;
use std::str::FromStr;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CorpusError, ParseError, WorkloadError};
use crate::pauli::{PauliLetter, Qubit, SparsePauliString};

fn strip_phase(text: &str) -> &str {
    for prefix in ["+i", "-i", "+", "-", "i"] {
        if let Some(rest) = text.strip_prefix(prefix) {
            return rest;
        }
    }
    text
}

/// Parse a dense line such as `XIZ`; position `p` carries the letter for qubit `p`.
pub fn parse_dense_line(text: &str) -> Result<SparsePauliString, ParseError> {
    let trimmed = text.trim();
    let body = strip_phase(trimmed);
    if body.is_empty() {
        return Err(ParseError::EmptyLine);
    }
    let offset = trimmed.len() - body.len();
    let mut entries = Vec::new();
    for (p, c) in body.chars().enumerate() {
        let letter = PauliLetter::from_char(c).ok_or(ParseError::BadCharacter {
            position: offset + p,
            found: c,
        })?;
        if !letter.is_identity() {
            let qubit = Qubit::try_from(p).map_err(|_| ParseError::BadToken {
                token: "dense line longer than 2^32 characters".into(),
            })?;
            entries.push((qubit, letter));
        }
    }
    Ok(SparsePauliString::from_sorted(entries).expect("positions ascend"))
}

/// Parse a sparse line such as `X0 Z3`. An empty line or a lone `I` is the
/// weight-0 string.
pub fn parse_sparse_line(text: &str) -> Result<SparsePauliString, ParseError> {
    let mut tokens = text.split_whitespace().peekable();
    if let Some(&first) = tokens.peek() {
        if matches!(first, "+" | "-" | "i" | "+i" | "-i") {
            tokens.next();
        }
    }
    let mut raw = Vec::new();
    for token in tokens {
        if token == "I" {
            continue;
        }
        let bad = || ParseError::BadToken {
            token: token.to_string(),
        };
        let mut chars = token.chars();
        let letter = chars.next().and_then(PauliLetter::from_char).ok_or_else(bad)?;
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let index: i64 = digits.parse().map_err(|_| bad())?;
        raw.push((index, letter));
    }
    Ok(SparsePauliString::normalize(raw)?)
}

/// Line format of a corpus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorpusFormat {
    Dense,
    Sparse,
}

/// Requested input format; `Auto` detects from the first data line.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FormatChoice {
    Dense,
    Sparse,
    #[default]
    Auto,
}

impl FromStr for FormatChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dense" => Ok(FormatChoice::Dense),
            "sparse" => Ok(FormatChoice::Sparse),
            "auto" => Ok(FormatChoice::Auto),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

/// Output rendering for [`serialize`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LineFormat {
    /// Dense over `n` qubits.
    Dense { n: usize },
    Sparse,
}

/// Render one string. Dense output needs `n > max index`.
pub fn serialize(p: &SparsePauliString, format: LineFormat) -> Result<String, WorkloadError> {
    match format {
        LineFormat::Dense { n } => {
            if let Some(max) = p.max_index() {
                if max as usize >= n {
                    return Err(WorkloadError::IndexOutOfRange { index: max, n });
                }
            }
            let mut line = vec!['I'; n];
            for &(q, l) in p.entries() {
                line[q as usize] = l.as_char();
            }
            Ok(line.into_iter().collect())
        }
        LineFormat::Sparse => {
            let mut line = String::new();
            for (pos, &(q, l)) in p.entries().iter().enumerate() {
                if pos > 0 {
                    line.push(' ');
                }
                write!(line, "{l}{q}").expect("write to String");
            }
            Ok(line)
        }
    }
}

/// Parsed corpus with the 1-based source line of every string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corpus {
    pub format: CorpusFormat,
    pub strings: Vec<SparsePauliString>,
    pub lines: Vec<usize>,
}

pub fn parse_corpus(text: &str, choice: FormatChoice) -> Result<Corpus, CorpusError> {
    let data = text
        .lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'));
    let format = match choice {
        FormatChoice::Dense => CorpusFormat::Dense,
        FormatChoice::Sparse => CorpusFormat::Sparse,
        FormatChoice::Auto => match data.clone().next() {
            Some((_, line)) if line.bytes().any(|b| b.is_ascii_digit()) => CorpusFormat::Sparse,
            _ => CorpusFormat::Dense,
        },
    };
    let mut corpus = Corpus {
        format,
        strings: Vec::new(),
        lines: Vec::new(),
    };
    for (line_no, line) in data {
        let parsed = match format {
            CorpusFormat::Dense => parse_dense_line(line),
            CorpusFormat::Sparse => parse_sparse_line(line),
        };
        let p = parsed.map_err(|source| CorpusError::Parse {
            line: line_no,
            source,
        })?;
        corpus.strings.push(p);
        corpus.lines.push(line_no);
    }
    Ok(corpus)
}

pub fn read_corpus(path: &Path, choice: FormatChoice) -> Result<Corpus, CorpusError> {
    let text = std::fs::read_to_string(path)?;
    parse_corpus(&text, choice)
}

/// Write one string per line with LF endings. In sparse output the weight-0
/// string is written as `I` so the line is not skipped on read.
pub fn write_corpus<W: Write>(
    mut out: W,
    strings: &[SparsePauliString],
    format: LineFormat,
) -> io::Result<()> {
    for p in strings {
        let line = serialize(p, format).map_err(|e| io::Error::new(io::ErrorKind::InvalidInput, e))?;
        if line.is_empty() {
            writeln!(out, "I")?;
        } else {
            writeln!(out, "{line}")?;
        }
    }
    Ok(())
}

/// How string weights are drawn.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WeightDist {
    /// Every string has weight exactly `k`.
    #[default]
    Fixed,
    /// Weight uniform on `1..=k`.
    Uniform,
}

impl FromStr for WeightDist {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fixed" | "fixed-k" => Ok(WeightDist::Fixed),
            "uniform" | "uniform-1-to-k" => Ok(WeightDist::Uniform),
            other => Err(format!("unknown weight distribution {other:?}")),
        }
    }
}

/// Parameters of a random instance. Letters are uniform over `{X, Y, Z}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InstanceSpec {
    pub m: usize,
    /// Qubit indices are drawn from `0..n`.
    pub n: u64,
    pub k: usize,
    pub weight_dist: WeightDist,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn validate(&self) -> Result<(), WorkloadError> {
        if self.k == 0 {
            return Err(WorkloadError::InvalidSpec("k must be at least 1".into()));
        }
        if self.k as u64 > self.n {
            return Err(WorkloadError::InvalidSpec(format!(
                "k={} exceeds n={}",
                self.k, self.n
            )));
        }
        if self.n > 1 << 32 {
            return Err(WorkloadError::InvalidSpec(format!(
                "n={} exceeds the 32-bit qubit range",
                self.n
            )));
        }
        Ok(())
    }
}

struct Sampler(ChaCha8Rng);

impl Sampler {
    fn new(seed: u64) -> Self {
        Sampler(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform on `0..bound` by rejection.
    fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let x = self.0.next_u64();
            if x < zone {
                return x % bound;
            }
        }
    }

    fn letter(&mut self) -> PauliLetter {
        PauliLetter::NON_IDENTITY[self.below(3) as usize]
    }

    fn weight(&mut self, spec: &InstanceSpec) -> usize {
        match spec.weight_dist {
            WeightDist::Fixed => spec.k,
            WeightDist::Uniform => 1 + self.below(spec.k as u64) as usize,
        }
    }

    /// Uniform `w`-subset of `0..n`, ascending (Floyd's algorithm).
    fn support(&mut self, n: u64, w: usize) -> Vec<Qubit> {
        let mut chosen: Vec<Qubit> = Vec::with_capacity(w);
        for j in (n - w as u64)..n {
            let t = self.below(j + 1) as Qubit;
            if chosen.contains(&t) {
                chosen.push(j as Qubit);
            } else {
                chosen.push(t);
            }
        }
        chosen.sort_unstable();
        chosen
    }
}

/// Random instance; identical for identical specs.
pub fn generate(spec: &InstanceSpec) -> Result<Vec<SparsePauliString>, WorkloadError> {
    spec.validate()?;
    let mut rng = Sampler::new(spec.seed);
    Ok((0..spec.m)
        .map(|_| {
            let w = rng.weight(spec);
            let entries = rng
                .support(spec.n, w)
                .into_iter()
                .map(|q| (q, rng.letter()))
                .collect();
            SparsePauliString::from_sorted(entries).expect("support is ascending")
        })
        .collect())
}

/// Random pairwise-commuting family: one letter is fixed per qubit and every
/// string uses that letter on its support.
pub fn generate_commuting(spec: &InstanceSpec) -> Result<Vec<SparsePauliString>, WorkloadError> {
    spec.validate()?;
    let mut rng = Sampler::new(spec.seed);
    let letters: Vec<PauliLetter> = (0..spec.n).map(|_| rng.letter()).collect();
    Ok((0..spec.m)
        .map(|_| {
            let w = rng.weight(spec);
            let entries = rng
                .support(spec.n, w)
                .into_iter()
                .map(|q| (q, letters[q as usize]))
                .collect();
            SparsePauliString::from_sorted(entries).expect("support is ascending")
        })
        .collect())
}
