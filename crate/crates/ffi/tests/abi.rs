use std::ffi::{CStr, CString};
use std::io::Write;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use locality_zeta_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(lz_last_error_message()) }
        .to_str()
        .unwrap()
        .to_string()
}

fn push(list: *mut LzStringList, line: &str) -> LzStatus {
    let line = CString::new(line).unwrap();
    unsafe { lz_strings_push_line(list, line.as_ptr(), LzFormat::Auto) }
}

#[test]
fn table_round_trip() {
    unsafe {
        let mut table = ptr::null_mut();
        assert_eq!(lz_table_new(0, &mut table), LzStatus::Ok);
        let (q, xy, yz) = ([0u32, 1], [LZ_LETTER_X, LZ_LETTER_Y], [LZ_LETTER_Y, LZ_LETTER_Z]);
        assert_eq!(lz_table_insert(table, q.as_ptr(), xy.as_ptr(), 2), LzStatus::Ok);
        assert_eq!(lz_table_insert(table, q.as_ptr(), yz.as_ptr(), 2), LzStatus::Ok);
        let mut count = 0;
        let y = [LZ_LETTER_Y];
        assert_eq!(lz_table_anti_count(table, q.as_ptr(), y.as_ptr(), 1, &mut count), LzStatus::Ok);
        assert_eq!(count, 1);
        // weight-0 query needs no arrays
        assert_eq!(lz_table_anti_count(table, ptr::null(), ptr::null(), 0, &mut count), LzStatus::Ok);
        assert_eq!(count, 0);
        let mut c = LzCounters::default();
        assert_eq!(lz_table_counters(table, &mut c), LzStatus::Ok);
        assert_eq!(c, LzCounters { dict_updates: 8, dict_lookups: 4 });
        assert_eq!(lz_table_inserted(table), 2);
        lz_table_free(table);
    }
}

#[test]
fn table_errors() {
    unsafe {
        let mut table = ptr::null_mut();
        assert_eq!(lz_table_new(1000, &mut table), LzStatus::InvalidArgument);
        assert!(table.is_null());
        assert_eq!(lz_table_new(2, ptr::null_mut()), LzStatus::NullPointer);
        assert_eq!(lz_table_new(2, &mut table), LzStatus::Ok);

        let q = [0u32, 1, 2];
        let l = [LZ_LETTER_X, LZ_LETTER_Y, LZ_LETTER_Z];
        assert_eq!(lz_table_insert(table, q.as_ptr(), l.as_ptr(), 3), LzStatus::WeightCapExceeded);
        assert!(last_error().contains("weight cap"));
        let dup = [4u32, 4];
        assert_eq!(lz_table_insert(table, dup.as_ptr(), l.as_ptr(), 2), LzStatus::DuplicateIndex);
        let bad = [9u8];
        assert_eq!(lz_table_insert(table, q.as_ptr(), bad.as_ptr(), 1), LzStatus::InvalidLetter);
        assert_eq!(lz_table_insert(table, ptr::null(), l.as_ptr(), 1), LzStatus::NullPointer);
        assert_eq!(lz_table_insert(ptr::null_mut(), q.as_ptr(), l.as_ptr(), 1), LzStatus::NullPointer);
        // successful call clears the message
        assert_eq!(lz_table_insert(table, q.as_ptr(), l.as_ptr(), 1), LzStatus::Ok);
        assert_eq!(last_error(), "");
        assert_eq!(lz_table_inserted(table), 1);
        lz_table_free(table);
        lz_table_free(ptr::null_mut());
    }
}

#[test]
fn batch_calls() {
    unsafe {
        let list = lz_strings_new();
        for line in ["XY", "YZ", "YI"] {
            assert_eq!(push(list, line), LzStatus::Ok);
        }
        assert_eq!(push(list, "X0 X0 Z0"), LzStatus::ParseError);
        assert_eq!(lz_strings_len(list), 3);

        let mut report = LzBatchReport::default();
        assert_eq!(lz_count_pairs(list, 0, &mut report), LzStatus::Ok);
        assert_eq!(report.m, 3);
        assert_eq!(report.total_anti_pairs, 1);
        assert!(!report.has_witness);
        assert_eq!(report.counters, LzCounters { dict_updates: 10, dict_lookups: 21 });

        assert_eq!(lz_certify(list, 0, &mut report), LzStatus::Ok);
        assert!(report.has_witness);
        assert_eq!((report.witness_i, report.witness_j), (0, 2));

        let mut profile = [u64::MAX; 3];
        assert_eq!(lz_anti_degree_profile(list, 0, profile.as_mut_ptr()), LzStatus::Ok);
        assert_eq!(profile, [0, 0, 1]);

        let mut count = 0;
        assert_eq!(lz_baseline_count(list, &mut count), LzStatus::Ok);
        assert_eq!(count, 1);

        assert_eq!(lz_count_pairs(list, 1, &mut report), LzStatus::WeightCapExceeded);
        assert!(last_error().starts_with("string 0"), "{}", last_error());
        assert_eq!(lz_count_pairs(ptr::null(), 0, &mut report), LzStatus::NullPointer);
        assert_eq!(lz_certify(list, 0, ptr::null_mut()), LzStatus::NullPointer);
        lz_strings_free(list);
    }
}

#[test]
fn certify_commuting_list() {
    unsafe {
        let list = lz_strings_new();
        for line in ["XX", "XX", "ZZ"] {
            assert_eq!(push(list, line), LzStatus::Ok);
        }
        let mut report = LzBatchReport::default();
        assert_eq!(lz_certify(list, 0, &mut report), LzStatus::Ok);
        assert!(!report.has_witness);
        assert_eq!(report.total_anti_pairs, 0);
        lz_strings_free(list);
    }
}

#[test]
fn read_file() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# sparse corpus\nX0 Y1\nY0 Z1\nY0").unwrap();
    let path = CString::new(file.path().to_str().unwrap()).unwrap();
    unsafe {
        let mut list = ptr::null_mut();
        assert_eq!(lz_strings_read_file(path.as_ptr(), LzFormat::Auto, &mut list), LzStatus::Ok);
        assert_eq!(lz_strings_len(list), 3);
        let mut count = 0;
        assert_eq!(lz_baseline_count(list, &mut count), LzStatus::Ok);
        assert_eq!(count, 1);
        lz_strings_free(list);

        let mut list = ptr::null_mut();
        assert_eq!(lz_strings_read_file(path.as_ptr(), LzFormat::Dense, &mut list), LzStatus::ParseError);
        assert!(last_error().contains("line 2"), "{}", last_error());
        let missing = CString::new("/nonexistent/corpus.txt").unwrap();
        assert_eq!(lz_strings_read_file(missing.as_ptr(), LzFormat::Auto, &mut list), LzStatus::IoError);
        assert_eq!(lz_strings_read_file(ptr::null(), LzFormat::Auto, &mut list), LzStatus::NullPointer);
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(lz_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

fn target_dir() -> PathBuf {
    // target/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

// Compiles a C program against the generated header and links the static library.
#[test]
fn c_program_links_and_runs() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("liblocality_zeta_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let out_dir = tempfile::tempdir().unwrap();
    let exe = out_dir.path().join("smoke");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(&cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(crate_dir.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&exe)
        .status()
        .unwrap_or_else(|e| panic!("failed to run {cc}: {e}"));
    assert!(status.success(), "C compilation failed");
    let run = Command::new(&exe).output().unwrap();
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
}
