//! C ABI over the locality-zeta counter.
//!
//! All functions return an [`LzStatus`]; on failure a message is available
//! from [`lz_last_error_message`] on the same thread. Handles are opaque and
//! must be released with their matching `*_free` function.
//!
//! Letters are passed as 2-bit codes: `0 = I`, `1 = X`, `2 = Z`, `3 = Y`.
//! Qubit indices are 0-based `uint32_t`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::slice;

use locality_zeta::baseline::pairwise_count;
use locality_zeta::error::{BatchError, CorpusError, PauliError, TableError};
use locality_zeta::workload::{self, FormatChoice};
use locality_zeta::zeta::{DEFAULT_WEIGHT_CAP, MAX_WEIGHT_CAP};
use locality_zeta::{BatchEngine, BatchReport, IndexedBatchError, PatternCountTable, PauliLetter, SparsePauliString};

pub const LZ_LETTER_I: u8 = 0;
pub const LZ_LETTER_X: u8 = 1;
pub const LZ_LETTER_Z: u8 = 2;
pub const LZ_LETTER_Y: u8 = 3;

/// Weight cap used when `0` is passed for a cap argument.
pub const LZ_DEFAULT_WEIGHT_CAP: usize = 20;
const _: () = assert!(LZ_DEFAULT_WEIGHT_CAP == DEFAULT_WEIGHT_CAP);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LzStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidLetter = 3,
    DuplicateIndex = 4,
    WeightCapExceeded = 5,
    CountOverflow = 6,
    ParseError = 7,
    IoError = 8,
    Internal = 9,
    Panic = 10,
}

/// Input format for [`lz_strings_read_file`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LzFormat {
    Auto = 0,
    Dense = 1,
    Sparse = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LzCounters {
    pub dict_updates: u64,
    pub dict_lookups: u64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LzBatchReport {
    /// Strings processed; certify stops at the first violating string.
    pub m: u64,
    pub total_anti_pairs: u64,
    pub has_witness: bool,
    pub witness_i: u64,
    pub witness_j: u64,
    pub counters: LzCounters,
    pub elapsed_ns: u64,
}

impl From<&BatchReport> for LzBatchReport {
    fn from(r: &BatchReport) -> Self {
        let (i, j) = r.witness.unwrap_or((0, 0));
        LzBatchReport {
            m: r.m as u64,
            total_anti_pairs: r.total_anti_pairs,
            has_witness: r.witness.is_some(),
            witness_i: i as u64,
            witness_j: j as u64,
            counters: LzCounters {
                dict_updates: r.counters.dict_updates,
                dict_lookups: r.counters.dict_lookups,
            },
            elapsed_ns: u64::try_from(r.elapsed.as_nanos()).unwrap_or(u64::MAX),
        }
    }
}

/// Opaque pattern-count table.
pub struct LzTable(PatternCountTable);

/// Opaque list of Pauli strings.
pub struct LzStringList(Vec<SparsePauliString>);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let message = message.into().replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(message).expect("nul removed"));
}

struct Failure(LzStatus, String);

impl Failure {
    fn null(what: &str) -> Self {
        Failure(LzStatus::NullPointer, format!("{what} is null"))
    }
}

impl From<TableError> for Failure {
    fn from(e: TableError) -> Self {
        let status = match e {
            TableError::WeightCapExceeded { .. } => LzStatus::WeightCapExceeded,
            TableError::CountOverflow { .. } => LzStatus::CountOverflow,
            TableError::ParityViolation { .. } => LzStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

impl From<PauliError> for Failure {
    fn from(e: PauliError) -> Self {
        let status = match e {
            PauliError::DuplicateIndex(_) => LzStatus::DuplicateIndex,
            _ => LzStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

impl From<IndexedBatchError> for Failure {
    fn from(e: IndexedBatchError) -> Self {
        let status = match &e.source {
            BatchError::Table(t) => Failure::from(t.clone()).0,
            BatchError::InternalInconsistency { .. } => LzStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

/// Runs `body`, records any failure message and converts panics.
fn guard<F>(body: F) -> LzStatus
where
    F: FnOnce() -> Result<(), Failure>,
{
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            LzStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("panic inside locality-zeta");
            LzStatus::Panic
        }
    }
}

fn cap_or_default(weight_cap: usize) -> Result<usize, Failure> {
    match weight_cap {
        0 => Ok(LZ_DEFAULT_WEIGHT_CAP),
        cap if cap <= MAX_WEIGHT_CAP => Ok(cap),
        cap => Err(Failure(
            LzStatus::InvalidArgument,
            format!("weight cap {cap} exceeds {MAX_WEIGHT_CAP}"),
        )),
    }
}

unsafe fn string_from_parts(
    qubits: *const u32,
    letters: *const u8,
    len: usize,
) -> Result<SparsePauliString, Failure> {
    if len == 0 {
        return Ok(SparsePauliString::identity());
    }
    if qubits.is_null() || letters.is_null() {
        return Err(Failure::null("qubits/letters"));
    }
    let qubits = slice::from_raw_parts(qubits, len);
    let letters = slice::from_raw_parts(letters, len);
    let mut raw = Vec::with_capacity(len);
    for (pos, (&q, &code)) in qubits.iter().zip(letters).enumerate() {
        let letter = PauliLetter::from_code(code).ok_or_else(|| {
            Failure(
                LzStatus::InvalidLetter,
                format!("letter code {code} at entry {pos} is not in 0..=3"),
            )
        })?;
        raw.push((i64::from(q), letter));
    }
    Ok(SparsePauliString::normalize(raw)?)
}

unsafe fn c_str<'a>(text: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if text.is_null() {
        return Err(Failure::null(what));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|e| Failure(LzStatus::InvalidArgument, format!("{what}: {e}")))
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn lz_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn lz_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Create an empty table. `weight_cap == 0` selects the default cap.
#[no_mangle]
pub unsafe extern "C" fn lz_table_new(weight_cap: usize, out: *mut *mut LzTable) -> LzStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        let table = PatternCountTable::with_weight_cap(cap_or_default(weight_cap)?);
        *out = Box::into_raw(Box::new(LzTable(table)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn lz_table_free(table: *mut LzTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Insert one string given as parallel arrays of qubits and letter codes.
#[no_mangle]
pub unsafe extern "C" fn lz_table_insert(
    table: *mut LzTable,
    qubits: *const u32,
    letters: *const u8,
    len: usize,
) -> LzStatus {
    guard(|| {
        let table = table.as_mut().ok_or_else(|| Failure::null("table"))?;
        let p = string_from_parts(qubits, letters, len)?;
        table.0.insert(&p)?;
        Ok(())
    })
}

/// Number of inserted strings anticommuting with the given string.
#[no_mangle]
pub unsafe extern "C" fn lz_table_anti_count(
    table: *const LzTable,
    qubits: *const u32,
    letters: *const u8,
    len: usize,
    out_count: *mut u64,
) -> LzStatus {
    guard(|| {
        let table = table.as_ref().ok_or_else(|| Failure::null("table"))?;
        if out_count.is_null() {
            return Err(Failure::null("out_count"));
        }
        let p = string_from_parts(qubits, letters, len)?;
        *out_count = table.0.anti_count(&p)?.count;
        Ok(())
    })
}

/// Number of strings inserted so far; 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn lz_table_inserted(table: *const LzTable) -> u64 {
    table.as_ref().map_or(0, |t| t.0.inserted())
}

#[no_mangle]
pub unsafe extern "C" fn lz_table_counters(table: *const LzTable, out: *mut LzCounters) -> LzStatus {
    guard(|| {
        let table = table.as_ref().ok_or_else(|| Failure::null("table"))?;
        let out = out.as_mut().ok_or_else(|| Failure::null("out"))?;
        let c = table.0.counters();
        *out = LzCounters {
            dict_updates: c.dict_updates,
            dict_lookups: c.dict_lookups,
        };
        Ok(())
    })
}

/// Create an empty string list.
#[no_mangle]
pub extern "C" fn lz_strings_new() -> *mut LzStringList {
    Box::into_raw(Box::new(LzStringList(Vec::new())))
}

#[no_mangle]
pub unsafe extern "C" fn lz_strings_free(list: *mut LzStringList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

/// Number of strings; 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn lz_strings_len(list: *const LzStringList) -> usize {
    list.as_ref().map_or(0, |l| l.0.len())
}

#[no_mangle]
pub unsafe extern "C" fn lz_strings_push(
    list: *mut LzStringList,
    qubits: *const u32,
    letters: *const u8,
    len: usize,
) -> LzStatus {
    guard(|| {
        let list = list.as_mut().ok_or_else(|| Failure::null("list"))?;
        list.0.push(string_from_parts(qubits, letters, len)?);
        Ok(())
    })
}

/// Append one line in dense (`XIZ`) or sparse (`X0 Z2`) notation.
#[no_mangle]
pub unsafe extern "C" fn lz_strings_push_line(
    list: *mut LzStringList,
    line: *const c_char,
    format: LzFormat,
) -> LzStatus {
    guard(|| {
        let list = list.as_mut().ok_or_else(|| Failure::null("list"))?;
        let text = c_str(line, "line")?;
        let sparse = match format {
            LzFormat::Dense => false,
            LzFormat::Sparse => true,
            LzFormat::Auto => text.bytes().any(|b| b.is_ascii_digit()),
        };
        let parsed = if sparse {
            workload::parse_sparse_line(text)
        } else {
            workload::parse_dense_line(text)
        };
        let p = parsed.map_err(|e| Failure(LzStatus::ParseError, e.to_string()))?;
        list.0.push(p);
        Ok(())
    })
}

/// Read a corpus file into a new list.
#[no_mangle]
pub unsafe extern "C" fn lz_strings_read_file(
    path: *const c_char,
    format: LzFormat,
    out: *mut *mut LzStringList,
) -> LzStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        let path = c_str(path, "path")?;
        let choice = match format {
            LzFormat::Auto => FormatChoice::Auto,
            LzFormat::Dense => FormatChoice::Dense,
            LzFormat::Sparse => FormatChoice::Sparse,
        };
        let corpus = workload::read_corpus(Path::new(path), choice).map_err(|e| match e {
            CorpusError::Io(io) => Failure(LzStatus::IoError, format!("{path}: {io}")),
            parse => Failure(LzStatus::ParseError, format!("{path}: {parse}")),
        })?;
        *out = Box::into_raw(Box::new(LzStringList(corpus.strings)));
        Ok(())
    })
}

fn run_batch(
    list: *const LzStringList,
    weight_cap: usize,
    out: *mut LzBatchReport,
    run: impl FnOnce(BatchEngine, &[SparsePauliString]) -> Result<BatchReport, IndexedBatchError>,
) -> LzStatus {
    guard(|| {
        let list = unsafe { list.as_ref() }.ok_or_else(|| Failure::null("list"))?;
        let out = unsafe { out.as_mut() }.ok_or_else(|| Failure::null("out"))?;
        let engine = BatchEngine::new(cap_or_default(weight_cap)?);
        *out = LzBatchReport::from(&run(engine, &list.0)?);
        Ok(())
    })
}

/// Count all anticommuting unordered pairs. `weight_cap == 0` selects the default.
#[no_mangle]
pub unsafe extern "C" fn lz_count_pairs(
    list: *const LzStringList,
    weight_cap: usize,
    out: *mut LzBatchReport,
) -> LzStatus {
    run_batch(list, weight_cap, out, |e, s| e.count_all_anticommuting_pairs(s))
}

/// Certify pairwise commutation; a witness is reported in `out` if one exists.
#[no_mangle]
pub unsafe extern "C" fn lz_certify(
    list: *const LzStringList,
    weight_cap: usize,
    out: *mut LzBatchReport,
) -> LzStatus {
    run_batch(list, weight_cap, out, |e, s| e.certify(s))
}

/// Per-string anticommutation counts against the preceding strings.
/// `out_counts` must hold `lz_strings_len(list)` values.
#[no_mangle]
pub unsafe extern "C" fn lz_anti_degree_profile(
    list: *const LzStringList,
    weight_cap: usize,
    out_counts: *mut u64,
) -> LzStatus {
    guard(|| {
        let list = list.as_ref().ok_or_else(|| Failure::null("list"))?;
        if list.0.is_empty() {
            return Ok(());
        }
        if out_counts.is_null() {
            return Err(Failure::null("out_counts"));
        }
        let profile = BatchEngine::new(cap_or_default(weight_cap)?).anti_degree_profile(&list.0)?;
        slice::from_raw_parts_mut(out_counts, profile.len()).copy_from_slice(&profile);
        Ok(())
    })
}

/// Quadratic pairwise count, for cross-checking.
#[no_mangle]
pub unsafe extern "C" fn lz_baseline_count(list: *const LzStringList, out_count: *mut u64) -> LzStatus {
    guard(|| {
        let list = list.as_ref().ok_or_else(|| Failure::null("list"))?;
        let out = out_count.as_mut().ok_or_else(|| Failure::null("out_count"))?;
        *out = pairwise_count(&list.0);
        Ok(())
    })
}
