//! Acceptance suite. Runs every criterion in order, prints one PASS/FAIL line
//! per criterion and exits non-zero if any fails.

use std::time::Instant;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use locality_zeta::baseline::{pairwise_count, pairwise_count_instrumented};
use locality_zeta::batch::{anti_degree_profile, certify, count_all_anticommuting_pairs};
use locality_zeta::bench::run_zeta;
use locality_zeta::error::{BatchError, TableError};
use locality_zeta::pauli::{conflict_set, PauliLetter, SparsePauliString};
use locality_zeta::workload::{generate, generate_commuting, parse_dense_line, InstanceSpec, WeightDist};
use locality_zeta::zeta::{zeta_identity_check, PatternCountTable};
use locality_zeta::{BatchEngine, IndexedBatchError};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn parity_fired(e: &IndexedBatchError) -> bool {
    matches!(e.source, BatchError::Table(TableError::ParityViolation { .. }))
}

fn worked() -> Vec<SparsePauliString> {
    ["XY", "YZ", "YI"]
        .iter()
        .map(|s| parse_dense_line(s).unwrap())
        .collect()
}

// 1. Worked example: intermediate sums and totals, exact.
fn golden() -> Outcome {
    let strings = worked();
    let mut table = PatternCountTable::new();
    table.insert(&strings[0]).map_err(|e| e.to_string())?;
    table.insert(&strings[1]).map_err(|e| e.to_string())?;
    let trace = table.anti_count_traced(&strings[2]).map_err(|e| e.to_string())?;
    let f_empty = trace.subset_sums.iter().find(|(a, _)| a.is_empty()).map(|x| x.1);
    let f_zero = trace.subset_sums.iter().find(|(a, _)| a == &[0]).map(|x| x.1);
    check(trace.subset_sums.len() == 2, || format!("{} subsets", trace.subset_sums.len()))?;
    check(f_empty == Some(2), || format!("F(empty)={f_empty:?}"))?;
    check(f_zero == Some(1), || format!("F({{0}})={f_zero:?}"))?;
    check(trace.result.zeta == 0, || format!("Z={}", trace.result.zeta))?;
    check(trace.result.count == 1, || format!("count={}", trace.result.count))?;
    let total = count_all_anticommuting_pairs(&strings)
        .map_err(|e| e.to_string())?
        .total_anti_pairs;
    check(total == 1, || format!("T={total}"))?;
    Ok("F(empty)=2 F({0})=1 Z=0 count=1 T=1".into())
}

struct ParamRng(ChaCha8Rng);

impl ParamRng {
    fn new(seed: u64) -> Self {
        ParamRng(ChaCha8Rng::seed_from_u64(seed))
    }

    fn range(&mut self, lo: u64, hi: u64) -> u64 {
        lo + self.0.next_u64() % (hi - lo + 1)
    }
}

fn random_spec(rng: &mut ParamRng, i: usize) -> InstanceSpec {
    // first instances pin the corners of the parameter box
    let corners: [(usize, u64, usize); 6] = [
        (1, 4, 1),
        (2000, 128, 8),
        (2000, 4, 4),
        (1, 128, 8),
        (2000, 8, 8),
        (2, 4, 1),
    ];
    let (m, n, k) = match corners.get(i / 2) {
        Some(&c) => c,
        None => {
            let n = rng.range(4, 128);
            let k = rng.range(1, 8.min(n)) as usize;
            (rng.range(1, 2000) as usize, n, k)
        }
    };
    InstanceSpec {
        m,
        n,
        k: k.min(n as usize),
        weight_dist: if i % 2 == 0 { WeightDist::Fixed } else { WeightDist::Uniform },
        seed: rng.0.next_u64(),
    }
}

// 2. Oracle equivalence over 1000 random instances.
fn oracle_equivalence(parity_checks: &mut u64) -> Outcome {
    let start = Instant::now();
    let mut rng = ParamRng::new(0x5EED_0002);
    let instances = 1000;
    let (mut max_m, mut min_n, mut max_n, mut max_k) = (0, u64::MAX, 0, 0);
    let mut dists = [0usize; 2];
    for i in 0..instances {
        let spec = random_spec(&mut rng, i);
        let strings = generate(&spec).map_err(|e| e.to_string())?;
        let report = match count_all_anticommuting_pairs(&strings) {
            Ok(r) => r,
            Err(e) if parity_fired(&e) => return Err(format!("parity assertion fired: {e}")),
            Err(e) => return Err(e.to_string()),
        };
        *parity_checks += spec.m as u64;
        let oracle = pairwise_count(&strings);
        check(report.total_anti_pairs == oracle, || {
            format!("instance {i} {spec:?}: zeta={} oracle={oracle}", report.total_anti_pairs)
        })?;
        max_m = max_m.max(spec.m);
        min_n = min_n.min(spec.n);
        max_n = max_n.max(spec.n);
        max_k = max_k.max(spec.k);
        dists[(spec.weight_dist == WeightDist::Uniform) as usize] += 1;
    }
    let secs = start.elapsed().as_secs_f64();
    check(secs < 300.0, || format!("took {secs:.1}s, budget 300s"))?;
    Ok(format!(
        "{instances} instances agree (m<={max_m}, n in {min_n}..={max_n}, k<={max_k}, fixed={} uniform={}) in {secs:.1}s",
        dists[0], dists[1]
    ))
}

// 3. dict_updates == m 2^w and dict_lookups == m 3^w for fixed weight w.
fn operation_counts() -> Outcome {
    let m = 500usize;
    for w in 1..=8usize {
        let spec = InstanceSpec {
            m,
            n: 64,
            k: w,
            weight_dist: WeightDist::Fixed,
            seed: 300 + w as u64,
        };
        let strings = generate(&spec).map_err(|e| e.to_string())?;
        let row = run_zeta(&spec, &strings, BatchEngine::default(), 1).map_err(|e| e.to_string())?;
        let updates = m as u64 * 2u64.pow(w as u32);
        let lookups = m as u64 * 3u64.pow(w as u32);
        check(row.dict_updates == updates, || {
            format!("w={w}: dict_updates={} expected {updates}", row.dict_updates)
        })?;
        check(row.dict_lookups == lookups, || {
            format!("w={w}: dict_lookups={} expected {lookups}", row.dict_lookups)
        })?;
    }
    Ok(format!("w=1..8, m={m}: updates=m*2^w, lookups=m*3^w exactly"))
}

fn certify_one(strings: &[SparsePauliString], label: &str) -> Result<bool, String> {
    let report = certify(strings).map_err(|e| format!("{label}: {e}"))?;
    let oracle = pairwise_count(strings);
    match report.witness {
        Some((i, j)) => {
            check(oracle > 0, || format!("{label}: witness ({i},{j}) but oracle count 0"))?;
            check(i < j, || format!("{label}: witness ({i},{j}) not ordered"))?;
            let odd = conflict_set(&strings[i], &strings[j]).len() % 2 == 1;
            check(odd, || format!("{label}: witness ({i},{j}) commutes"))?;
            Ok(true)
        }
        None => {
            check(oracle == 0, || format!("{label}: no witness but oracle count {oracle}"))?;
            check(report.total_anti_pairs == 0, || format!("{label}: nonzero total"))?;
            Ok(false)
        }
    }
}

// 4. Certification soundness and completeness.
fn certification() -> Outcome {
    let mut rng = ParamRng::new(0x5EED_0004);
    let (mut witnessed, mut clean) = (0, 0);
    for i in 0..500 {
        let n = rng.range(8, 256);
        let spec = InstanceSpec {
            m: rng.range(1, 60) as usize,
            n,
            k: rng.range(1, 4) as usize,
            weight_dist: if i % 2 == 0 { WeightDist::Fixed } else { WeightDist::Uniform },
            seed: rng.0.next_u64(),
        };
        let strings = generate(&spec).map_err(|e| e.to_string())?;
        if certify_one(&strings, &format!("random {i}"))? {
            witnessed += 1;
        } else {
            clean += 1;
        }
    }
    check(witnessed > 0 && clean > 0, || {
        format!("random instances did not exercise both outcomes ({witnessed}/{clean})")
    })?;
    for i in 0..100 {
        let spec = InstanceSpec {
            m: rng.range(1, 1500) as usize,
            n: rng.range(8, 128),
            k: rng.range(1, 8) as usize,
            weight_dist: WeightDist::Uniform,
            seed: rng.0.next_u64(),
        };
        let strings = generate_commuting(&spec).map_err(|e| e.to_string())?;
        check(!certify_one(&strings, &format!("commuting {i}"))?, || {
            format!("commuting family {i} produced a witness")
        })?;
    }
    Ok(format!(
        "500 random ({witnessed} witnessed, {clean} all-commute) + 100 commuting families"
    ))
}

// 5. Binomial identity for r = 0..20.
fn zeta_identity() -> Outcome {
    for r in 0..=20u32 {
        let expected = if r % 2 == 0 { 1 } else { -1 };
        let got = zeta_identity_check(r);
        check(got == expected, || format!("r={r}: {got}"))?;
    }
    Ok("sum_t C(r,t)(-2)^t == (-1)^r for r=0..20".into())
}

// 6. Linear zeta growth against quadratic baseline pair tests, k = 4.
fn scaling() -> Outcome {
    let ms = [10_000usize, 20_000, 40_000, 80_000];
    let mut zeta_times = Vec::new();
    let mut pair_tests = Vec::new();
    let mut summary = Vec::new();
    for &m in &ms {
        let spec = InstanceSpec {
            m,
            n: 1024,
            k: 4,
            weight_dist: WeightDist::Fixed,
            seed: 6,
        };
        let strings = generate(&spec).map_err(|e| e.to_string())?;
        let zeta = run_zeta(&spec, &strings, BatchEngine::default(), 5).map_err(|e| e.to_string())?;
        let start = Instant::now();
        let base = pairwise_count_instrumented(&strings);
        let base_time = start.elapsed();
        check(zeta.total_anti_pairs == base.total_anti_pairs, || {
            format!("m={m}: zeta T={} baseline T={}", zeta.total_anti_pairs, base.total_anti_pairs)
        })?;
        let expected_tests = (m as u64) * (m as u64 - 1) / 2;
        check(base.pair_tests == expected_tests, || {
            format!("m={m}: pair_tests={} expected {expected_tests}", base.pair_tests)
        })?;
        zeta_times.push(zeta.elapsed.as_secs_f64());
        pair_tests.push(base.pair_tests);
        if m <= 20_000 {
            summary.push(format!(
                "m={m}: zeta {:.1}ms baseline {:.1}ms",
                zeta.elapsed.as_secs_f64() * 1e3,
                base_time.as_secs_f64() * 1e3
            ));
        }
    }
    let mut ratios = Vec::new();
    for d in 1..ms.len() {
        let ratio = zeta_times[d] / zeta_times[d - 1];
        check(ratio <= 3.0, || format!("zeta time grew {ratio:.2}x from m={} to m={}", ms[d - 1], ms[d]))?;
        ratios.push(format!("{ratio:.2}"));
        // m(m-1)/2 doubles to 2m(2m-1)/2: a factor 4 up to the (2m-1)/(2m-2) correction
        let m = ms[d - 1] as u64;
        check(pair_tests[d] * (m - 1) == pair_tests[d - 1] * 2 * (2 * m - 1), || {
            format!("pair_tests {} -> {} is not the doubling of m(m-1)/2", pair_tests[d - 1], pair_tests[d])
        })?;
        let growth = pair_tests[d] as f64 / pair_tests[d - 1] as f64;
        check((growth - 4.0).abs() < 1e-3, || format!("pair_tests grew {growth:.5}x"))?;
    }
    Ok(format!(
        "zeta time ratios per doubling [{}] <= 3.0; baseline pair_tests x4 per doubling; {}",
        ratios.join(", "),
        summary.join("; ")
    ))
}

// 7. Weight-0 strings, duplicates and single strings through the oracle suite.
fn edge_cases(parity_checks: &mut u64) -> Outcome {
    let mut rng = ParamRng::new(0x5EED_0007);
    let identity = SparsePauliString::identity();
    let mut cases: Vec<(String, Vec<SparsePauliString>)> = vec![
        ("single identity".into(), vec![identity.clone()]),
        ("all identity".into(), vec![identity.clone(); 50]),
        ("single weight-3".into(), vec![parse_dense_line("XYZ").unwrap()]),
        (
            "duplicated anticommuting pair".into(),
            [vec![parse_dense_line("X").unwrap(); 20], vec![parse_dense_line("Z").unwrap(); 30]].concat(),
        ),
    ];
    for i in 0..200 {
        let spec = InstanceSpec {
            m: rng.range(1, 300) as usize,
            n: rng.range(4, 32),
            k: rng.range(1, 4) as usize,
            weight_dist: WeightDist::Uniform,
            seed: rng.0.next_u64(),
        };
        let mut strings = generate(&spec).map_err(|e| e.to_string())?;
        // interleave identities and duplicates of earlier strings
        let extra = strings.len() / 3 + 1;
        for _ in 0..extra {
            let pos = rng.range(0, strings.len() as u64) as usize;
            if rng.range(0, 1) == 0 {
                strings.insert(pos, identity.clone());
            } else {
                let dup = strings[rng.range(0, strings.len() as u64 - 1) as usize].clone();
                strings.insert(pos, dup);
            }
        }
        cases.push((format!("mixed {i}"), strings));
    }
    for (label, strings) in &cases {
        let report = count_all_anticommuting_pairs(strings).map_err(|e| {
            if parity_fired(&e) {
                format!("{label}: parity assertion fired: {e}")
            } else {
                format!("{label}: {e}")
            }
        })?;
        *parity_checks += strings.len() as u64;
        let oracle = pairwise_count(strings);
        check(report.total_anti_pairs == oracle, || {
            format!("{label}: zeta={} oracle={oracle}", report.total_anti_pairs)
        })?;
        let profile = anti_degree_profile(strings).map_err(|e| format!("{label}: {e}"))?;
        check(profile.iter().sum::<u64>() == oracle, || format!("{label}: profile sum"))?;
        certify_one(strings, label)?;
    }
    let xz = cases
        .iter()
        .find(|(l, _)| l == "duplicated anticommuting pair")
        .map(|(_, s)| pairwise_count(s));
    check(xz == Some(600), || format!("X*20 + Z*30 gave {xz:?}"))?;
    check(
        PauliLetter::X.conflicts_with(PauliLetter::Z),
        || "letter table".into(),
    )?;
    Ok(format!("{} edge-case inputs agree with the oracle", cases.len()))
}

fn main() {
    let mut parity_checks = 0u64;
    let mut results: Vec<(&str, Outcome)> = Vec::new();
    let mut run = |name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(detail) => println!("PASS  {name}  ({secs:.1}s)  {detail}"),
            Err(why) => println!("FAIL  {name}  ({secs:.1}s)  {why}"),
        }
        results.push((name, outcome));
    };
    run("[1] worked example golden values", &mut golden);
    run("[2] oracle equivalence", &mut || oracle_equivalence(&mut parity_checks));
    run("[3] operation-count identities", &mut operation_counts);
    run("[4] certification contract", &mut certification);
    run("[5] zeta binomial identity", &mut zeta_identity);
    run("[6] scaling separation", &mut scaling);
    run("[7] edge cases and parity assertion", &mut || edge_cases(&mut parity_checks));
    println!("parity assertion checked on {parity_checks} queries without firing");

    let failed = results.iter().filter(|(_, o)| o.is_err()).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
