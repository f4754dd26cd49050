//! Acceptance suite. One PASS/FAIL line per criterion; exits non-zero if
//! any criterion fails. Set `INTCX_EXTENDED=1` to also run the large tier
//! (DP builds at 10^7 and 4·10^8).

use std::process::ExitCode;
use std::time::Instant;

use intcomplexity::analysis::{
    backward_chain, chain_scan, check_defect_rank, check_e_closed, check_pow2_plus1,
    check_products, collapse_scan, derive_sequences, first_operation_scan, fit_values,
    mersenne_table, top_log_complexity, CollapseStatus, FirstOp, ProductKind, SequenceSet,
};
use intcomplexity::{
    build_dp, build_sieve, e2_closed, e_closed, format, load, resume_dp, save, ComplexityTable,
    DpOptions, Oracle,
};

const N: u64 = 2_000_000;
const LOGC_TOL: f64 = 5e-4;
const SLOPE_RANGE: (f64, f64) = (0.27, 0.33);

const FIRST_FIFTEEN: [u32; 15] = [1, 2, 3, 4, 5, 5, 6, 6, 6, 7, 8, 7, 8, 8, 8];

/// `(n, ‖n‖, ‖n‖_log to three places, rank)`
const TOP_LOG: [(u64, u32, f64, u32); 16] = [
    (1439, 26, 3.928, 9),
    (23, 11, 3.854, 5),
    (719, 23, 3.841, 7),
    (179, 18, 3.812, 7),
    (4283, 29, 3.809, 7),
    (1438, 25, 3.777, 8),
    (59, 14, 3.772, 5),
    (6299, 30, 3.767, 7),
    (15287, 33, 3.763, 9),
    (107, 16, 3.762, 5),
    (347, 20, 3.756, 7),
    (1499, 25, 3.756, 7),
    (467, 21, 3.754, 5),
    (11807, 32, 3.749, 7),
    (263, 19, 3.746, 5),
    (21599, 34, 3.743, 7),
];

/// `e(1..=89)`
const E_SMALLEST: [u64; 89] = [
    1, 2, 3, 4, 5, 7, 10, 11, 17, 22, 23, 41, 47, 59, 89, 107, 167, 179, 263, 347, 467, 683, 719,
    1223, 1438, 1439, 2879, 3767, 4283, 6299, 10079, 11807, 15287, 21599, 33599, 45197, 56039,
    81647, 98999, 163259, 203999, 241883, 371447, 540539, 590399, 907199, 1081079, 1851119,
    2041199, 3243239, 3840479, 6562079, 8206559, 11696759, 14648759, 22312799, 27494879,
    41746319, 52252199, 78331679, 108606959, 142990559, 203098319, 273985919, 382021919,
    495437039, 681327359, 1006290359, 1406394359, 1857794399, 2728424159, 3743197919,
    5008227839, 6872690159, 9839491199, 13485479039, 16724776319, 24679458719, 35524698479,
    44211625919, 62391692159, 93753213119, 121551917759, 163539961199, 250585241759,
    320429329919, 424847520719, 630371064959, 872573642639,
];

/// `A(1..=39) = ‖2^n − 1‖ − 2n`
const MERSENNE_A: [i64; 39] = [
    -1, -1, 0, 0, 1, 0, 1, 1, 1, 2, 3, 1, 2, 2, 2, 2, 3, 1, 2, 2, 2, 3, 4, 2, 3, 3, 2, 3, 4, 3, 4,
    3, 4, 4, 4, 2, 2, 2, 3,
];

/// `r(1..=19)`
const R_SMALLEST: [u64; 19] = [
    2, 6, 7, 14, 23, 86, 179, 538, 1439, 9566, 21383, 122847, 777419, 1965374, 6803099, 19860614,
    26489579, 269998838, 477028439,
];

#[derive(Clone, Copy)]
enum Collapse {
    At(u32),
    /// Not known to collapse below this power.
    Above(u32),
    /// Collapses at or below this power.
    AtMost(u32),
    Never,
}

/// `(p, collapse, ‖p‖, rank(p), ‖p‖_log to three places)` for primes below 1000.
const COLLAPSE: [(u64, Collapse, u32, u32, f64); 41] = [
    (3, Collapse::Never, 3, 1, 3.000),
    (2, Collapse::Above(39), 2, 1, 3.170),
    (487, Collapse::Above(4), 18, 3, 3.196),
    (163, Collapse::Above(5), 15, 3, 3.235),
    (433, Collapse::Above(4), 18, 3, 3.257),
    (109, Collapse::Above(5), 14, 3, 3.278),
    (811, Collapse::Above(4), 20, 3, 3.280),
    (577, Collapse::Above(4), 19, 3, 3.283),
    (769, Collapse::At(3), 20, 3, 3.307),
    (757, Collapse::AtMost(6), 20, 5, 3.314),
    (541, Collapse::Above(4), 19, 3, 3.317),
    (739, Collapse::Above(4), 20, 5, 3.326),
    (73, Collapse::At(6), 13, 3, 3.329),
    (379, Collapse::Above(4), 18, 5, 3.331),
    (733, Collapse::Above(4), 20, 5, 3.331),
    (271, Collapse::At(4), 17, 3, 3.334),
    (193, Collapse::At(4), 16, 3, 3.340),
    (991, Collapse::AtMost(12), 21, 5, 3.344),
    (37, Collapse::At(5), 11, 3, 3.347),
    (977, Collapse::At(2), 21, 5, 3.351),
    (19, Collapse::At(6), 9, 3, 3.358),
    (97, Collapse::At(6), 14, 3, 3.362),
    (257, Collapse::AtMost(6), 17, 3, 3.366),
    (937, Collapse::At(3), 21, 5, 3.372),
    (673, Collapse::At(3), 20, 5, 3.374),
    (919, Collapse::At(3), 21, 5, 3.381),
    (181, Collapse::At(3), 16, 3, 3.381),
    (661, Collapse::At(3), 20, 5, 3.384),
    (7, Collapse::At(9), 6, 3, 3.387),
    (653, Collapse::At(2), 20, 5, 3.390),
    (337, Collapse::At(3), 18, 5, 3.398),
    (641, Collapse::At(4), 20, 3, 3.400),
    (883, Collapse::At(3), 21, 5, 3.401),
    (127, Collapse::At(2), 15, 5, 3.402),
    (881, Collapse::At(2), 21, 5, 3.402),
    (877, Collapse::At(3), 21, 5, 3.405),
    (241, Collapse::At(3), 17, 3, 3.405),
    (631, Collapse::At(2), 20, 5, 3.408),
    (457, Collapse::At(3), 19, 5, 3.408),
    (331, Collapse::At(3), 18, 5, 3.408),
    (5, Collapse::At(6), 5, 1, 3.413),
];

/// `n ≤ 89` whose `e(n)` ends a backward chain of length exactly 4, and of
/// length at least 5.
const CHAIN4: [u32; 19] = [11, 23, 34, 49, 51, 60, 61, 65, 66, 67, 70, 72, 73, 74, 77, 84, 86, 87, 89];
const CHAIN5: [u32; 4] = [13, 26, 27, 80];

type Outcome = Result<String, String>;

struct Suite {
    failed: usize,
    known: usize,
}

impl Suite {
    fn run(&mut self, id: &str, title: &str, f: impl FnOnce() -> Outcome) {
        let t0 = Instant::now();
        let out = f();
        let secs = t0.elapsed().as_secs_f64();
        match out {
            Ok(note) => println!("PASS  {id:<4} {title} ({note}; {secs:.1}s)"),
            Err(why) => {
                self.failed += 1;
                println!("FAIL  {id:<4} {title}: {why} ({secs:.1}s)");
            }
        }
    }

    /// Like `run`, but a failure whose message is exactly `known` is a
    /// documented discrepancy in the reference data and does not fail the
    /// suite.
    fn run_known(&mut self, id: &str, title: &str, known: &str, f: impl FnOnce() -> Outcome) {
        let t0 = Instant::now();
        let out = f();
        let secs = t0.elapsed().as_secs_f64();
        match out {
            Ok(note) => println!("PASS  {id:<4} {title} ({note}; {secs:.1}s)"),
            Err(why) if why == known => {
                self.known += 1;
                println!("FAIL  {id:<4} {title}: {why} [known discrepancy] ({secs:.1}s)");
            }
            Err(why) => {
                self.failed += 1;
                println!("FAIL  {id:<4} {title}: {why} ({secs:.1}s)");
            }
        }
    }

    fn skip(&self, id: &str, title: &str, why: &str) {
        println!("SKIP  {id:<4} {title}: {why}");
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn report_ok(r: &intcomplexity::Report) -> Result<(), String> {
    ensure(r.holds(), || {
        let first = &r.counterexamples[0];
        format!("{}: {} counterexamples, first n = {}: {}", r.check, r.counterexamples.len(), first.n, first.detail)
    })
}

fn c1(t: &ComplexityTable) -> Outcome {
    let got: Vec<u32> = (1..=15).map(|n| t.get(n).unwrap()).collect();
    ensure(got == FIRST_FIFTEEN, || format!("got {got:?}"))?;
    Ok("n = 1..15".into())
}

fn c2() -> Outcome {
    let oracle = Oracle::new(5000).map_err(|e| e.to_string())?;
    let sieve = build_sieve(5000, true).map_err(|e| e.to_string())?;
    let dp = build_dp(5000, &DpOptions::default()).map_err(|e| e.to_string())?;
    for n in 1..=5000 {
        let c = oracle.complexity(n);
        ensure(c == sieve.get(n) && c == dp.get(n), || {
            format!("n = {n}: oracle {c:?}, sieve {:?}, dp {:?}", sieve.get(n), dp.get(n))
        })?;
    }
    for n in 1..=2000 {
        ensure(oracle.min_height(n) == sieve.rank(n), || {
            format!("n = {n}: min height {:?}, rank {:?}", oracle.min_height(n), sieve.rank(n))
        })?;
    }
    Ok("complexity n ≤ 5000, rank n ≤ 2000".into())
}

fn c3(t: &ComplexityTable, s: &SequenceSet) -> Outcome {
    report_ok(&check_e_closed(t, s))?;
    let hi = s.e_max_reliable_up_to().ok_or("no reliable E")?;
    for k in 1..=hi {
        let got = s.e_max(k).ok_or(format!("E({k}) missing"))?.value as u128;
        ensure(got == e_closed(k).unwrap(), || format!("E({k}) = {got}"))?;
        if k >= 8 {
            let got2 = s.e2_max(k).ok_or(format!("E2({k}) missing"))?.value as u128;
            let e = e_closed(k).unwrap();
            ensure(got2 == e2_closed(k).unwrap() && got2 * 9 == e * 8, || {
                format!("E2({k}) = {got2}")
            })?;
        }
    }
    ensure(hi >= 39, || format!("reliable only up to {hi}"))?;
    Ok(format!("E and E2 reliable up to {hi}"))
}

fn c4(s: &SequenceSet, need: u32) -> Outcome {
    let mut hi = 0;
    for x in s.reliable_e() {
        let want = E_SMALLEST.get(x.index as usize - 1).copied().ok_or("index past table")?;
        ensure(x.value == want, || format!("e({}) = {} != {want}", x.index, x.value))?;
        hi = x.index;
    }
    ensure(hi >= need, || format!("reliable only up to {hi}"))?;
    Ok(format!("e(1..={hi})"))
}

fn c5(s: &SequenceSet) -> Outcome {
    let r = s.r().map_err(|e| e.to_string())?;
    for (i, &want) in R_SMALLEST.iter().take(14).enumerate() {
        let k = i as u32 + 1;
        let got = r.iter().find(|x| x.index == k).ok_or(format!("r({k}) not found"))?;
        ensure(got.reliable && got.value == want, || format!("r({k}) = {}", got.value))?;
    }
    Ok("r(1..=14)".into())
}

fn c6(t: &ComplexityTable) -> Outcome {
    let top = top_log_complexity(t, 16);
    ensure(top.len() == 16, || format!("{} rows", top.len()))?;
    let mut issues = Vec::new();
    for (row, &(n, c, logc, rank)) in top.iter().zip(&TOP_LOG) {
        if row.n != n || row.complexity != c || row.rank != Some(rank) {
            issues.push(format!(
                "expected {n} ({c}, rank {rank}), got {} ({}, rank {:?})",
                row.n, row.complexity, row.rank
            ));
        } else if (row.logc - logc).abs() > LOGC_TOL {
            issues.push(format!("{n}: logc {:.5} vs printed {logc:.3}", row.logc));
        }
    }
    ensure(issues.is_empty(), || issues.join("; "))?;
    Ok(format!("top 16, logc tolerance {LOGC_TOL}"))
}

fn c7(t: &ComplexityTable) -> Outcome {
    let mut checked = 0;
    for kind in [ProductKind::Pow2, ProductKind::Pow3, ProductKind::Pow235] {
        let r = check_products(t, kind);
        report_ok(&r)?;
        checked += r.checked;
    }
    let r = check_pow2_plus1(t);
    report_ok(&r)?;
    checked += r.checked;
    ensure(t.get(1 << 20) == Some(40), || "‖2^20‖ != 40".into())?;
    Ok(format!("{checked} values"))
}

fn c8(t: &ComplexityTable) -> Outcome {
    let m = mersenne_table(t);
    report_ok(&m.report)?;
    for row in &m.rows {
        let want = MERSENNE_A[row.n as usize - 1];
        ensure(row.a == want, || format!("A({}) = {} != {want}", row.n, row.a))?;
    }
    let hi = m.rows.last().map_or(0, |r| r.n);
    ensure(hi >= 20, || format!("only n ≤ {hi}"))?;
    Ok(format!("A(1..={hi}), bound and recurrences"))
}

fn c9(t: &ComplexityTable) -> Outcome {
    let r = check_defect_rank(t).map_err(|e| e.to_string())?;
    report_ok(&r)?;
    Ok(format!("{} values, min slack {}", r.checked, r.stats["min_slack"]))
}

fn c10(t: &ComplexityTable) -> Outcome {
    ensure(t.get(15625) == Some(29) && t.get(121) == Some(15), || "‖5^6‖ or ‖11^2‖".into())?;
    let recs = collapse_scan(t, 1000);
    ensure(recs.len() == 168, || format!("{} primes below 1000", recs.len()))?;
    let status = |p: u64| recs.iter().find(|r| r.p == p).unwrap();
    let lim = t.limit();
    let in_range = |p: u64, k: u32| p.checked_pow(k).is_some_and(|v| v <= lim);
    let mut compared = 0;
    for &(p, want, c, rank, logc) in &COLLAPSE {
        let r = status(p);
        ensure(r.complexity == c && r.rank == Some(rank), || format!("{p}: ‖p‖ or rank"))?;
        ensure((r.logc - logc).abs() <= LOGC_TOL, || format!("{p}: logc {}", r.logc))?;
        let ok = match (want, r.status) {
            (Collapse::At(k), CollapseStatus::CollapsesAt(j)) => j == k,
            (Collapse::At(k), CollapseStatus::OpenAbove(j)) => !in_range(p, k) && j < k,
            (Collapse::AtMost(k), CollapseStatus::CollapsesAt(j)) => j <= k,
            (Collapse::AtMost(_), CollapseStatus::OpenAbove(_)) => true,
            (Collapse::Above(_), CollapseStatus::OpenAbove(_)) => true,
            (Collapse::Above(k), CollapseStatus::CollapsesAt(j)) => j > k,
            (Collapse::Never, s) => matches!(s, CollapseStatus::OpenAbove(_)),
        };
        ensure(ok, || format!("{p}: {}", r.status))?;
        if matches!(want, Collapse::At(k) if in_range(p, k)) {
            compared += 1;
        }
    }
    let at2 = recs.iter().filter(|r| r.status == CollapseStatus::CollapsesAt(2)).count();
    ensure(at2 == 120, || format!("{at2} primes collapse at 2, expected 120"))?;
    for r in recs.iter().filter(|r| !COLLAPSE.iter().any(|x| x.0 == r.p)) {
        let ok = match r.status {
            CollapseStatus::CollapsesAt(k) => k <= 3,
            CollapseStatus::OpenAbove(k) => k == 2 && !in_range(r.p, 3),
        };
        ensure(ok, || format!("{} outside the table: {}", r.p, r.status))?;
    }
    Ok(format!("{compared} exact powers in range, 120 collapse at 2"))
}

fn c11(t: &ComplexityTable) -> Outcome {
    let hits = first_operation_scan(t);
    let bad: Vec<_> = hits
        .iter()
        .filter(|r| matches!(r.classification, FirstOp::Sub6 | FirstOp::Sub8 | FirstOp::Sub9))
        .collect();
    ensure(bad.is_empty(), || format!("first hit {} ({})", bad[0].n, bad[0].classification))?;
    Ok(format!("n ≤ {}, {} other non-product/+1 cases", t.limit(), hits.len()))
}

fn c11_extended() -> Outcome {
    let t = build_dp(400_000_000, &DpOptions::default()).map_err(|e| e.to_string())?;
    let hits = first_operation_scan(&t);
    let first = hits.first().ok_or("no hit")?;
    let p = 353_942_783;
    ensure(first.n == p, || format!("first hit {}", first.n))?;
    let (c, c1) = (t.get(p).unwrap(), 1 + t.get(p - 1).unwrap());
    ensure((c, c1) == (63, 64), || format!("‖p‖ = {c}, 1 + ‖p − 1‖ = {c1}"))?;
    Ok(format!("first hit {p} ({})", first.classification))
}

fn c12(s: &SequenceSet) -> Outcome {
    ensure(s.e(13).map(|x| x.value) == Some(47) && backward_chain(47).len() == 5, || "e(13)".into())?;
    ensure(backward_chain(1439).len() >= 5, || "e(26)".into())?;
    ensure(backward_chain(2879).len() == 6, || "e(27)".into())?;
    let recs = chain_scan(s);
    let hi = recs.last().map_or(0, |r| r.n);
    let four: Vec<u32> = recs.iter().filter(|r| r.length == 4).map(|r| r.n).collect();
    let five: Vec<u32> = recs.iter().filter(|r| r.length >= 5).map(|r| r.n).collect();
    let want4: Vec<u32> = CHAIN4.iter().copied().filter(|&n| n <= hi).collect();
    let want5: Vec<u32> = CHAIN5.iter().copied().filter(|&n| n <= hi).collect();
    ensure(four == want4, || format!("length 4 at {four:?}, expected {want4:?}"))?;
    ensure(five == want5, || format!("length ≥ 5 at {five:?}, expected {want5:?}"))?;
    Ok(format!("e(n) for n ≤ {hi}: length 4 at {four:?}"))
}

fn c13(s: &SequenceSet) -> Outcome {
    let golden: Vec<(u32, u64)> = (10..=44).map(|n| (n, E_SMALLEST[n as usize - 1])).collect();
    let fit = fit_values(&golden).map_err(|e| e.to_string())?;
    let derived: Vec<(u32, u64)> = s
        .reliable_e()
        .filter(|x| (10..=44).contains(&x.index))
        .map(|x| (x.index, x.value))
        .collect();
    ensure(derived == golden, || "derived e(10..=44) differs from the table".into())?;
    ensure(fit.slope >= SLOPE_RANGE.0 && fit.slope <= SLOPE_RANGE.1, || {
        format!("slope {:.4} outside {SLOPE_RANGE:?}", fit.slope)
    })?;
    Ok(format!("slope {:.4}, intercept {:.4}", fit.slope, fit.intercept))
}

fn c14(t: &ComplexityTable) -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("sieve.icx");
    save(t, &path).map_err(|e| e.to_string())?;
    let back = load(&path).map_err(|e| e.to_string())?;
    ensure(back.complexity_bytes() == t.complexity_bytes() && back.rank_bytes() == t.rank_bytes(), || {
        "roundtrip differs".into()
    })?;
    let bytes = std::fs::read(&path).map_err(|e| e.to_string())?;
    save(&back, &path).map_err(|e| e.to_string())?;
    ensure(std::fs::read(&path).map_err(|e| e.to_string())? == bytes, || "resave differs".into())?;

    let whole = build_dp(N, &DpOptions::default()).map_err(|e| e.to_string())?;
    ensure(whole.complexity_bytes() == t.complexity_bytes(), || "dp differs from sieve".into())?;
    let ckpt = dir.path().join("ckpt.icx");
    let prefix = build_dp(N / 2 + 12_345, &DpOptions::default()).map_err(|e| e.to_string())?;
    format::save_partial(&ckpt, prefix.complexity_bytes(), N).map_err(|e| e.to_string())?;
    let out = dir.path().join("dp.icx");
    let opts = DpOptions { checkpoint_every: Some(250_000), out: Some(out.clone()), scan_from: 6 };
    let resumed = resume_dp(&ckpt, N, &opts).map_err(|e| e.to_string())?;
    ensure(resumed.complexity_bytes() == whole.complexity_bytes(), || "resumed table differs".into())?;
    let on_disk = load(&out).map_err(|e| e.to_string())?;
    ensure(on_disk.complexity_bytes() == whole.complexity_bytes(), || "saved resume differs".into())?;
    Ok(format!("roundtrip with ranks, resume from {} at N = {N}", prefix.limit()))
}

fn main() -> ExitCode {
    let extended = std::env::var("INTCX_EXTENDED").is_ok_and(|v| v == "1");
    let mut suite = Suite { failed: 0, known: 0 };
    let t0 = Instant::now();
    let table = build_sieve(N, true).expect("sieve build");
    println!("sieve with ranks, N = {N}: {:.1}s", t0.elapsed().as_secs_f64());
    let seq = derive_sequences(&table);

    suite.run("1", "first values", || c1(&table));
    suite.run("2", "oracle, sieve and dp agree", c2);
    suite.run("3", "E and E2 closed forms", || c3(&table, &seq));
    suite.run("4", "e(n) golden values", || c4(&seq, 44));
    if extended {
        suite.run("4x", "e(n) golden values at 10^7", || {
            let t = build_dp(10_000_000, &DpOptions::default()).map_err(|e| e.to_string())?;
            c4(&derive_sequences(&t), 50)
        });
    } else {
        suite.skip("4x", "e(n) golden values at 10^7", "set INTCX_EXTENDED=1");
    }
    suite.run("5", "r(n) golden values", || c5(&seq));
    // 29 / log3(4283) = 3.80988 is printed as 3.809
    suite.run_known(
        "6",
        "top logarithmic complexity",
        "4283: logc 3.80988 vs printed 3.809",
        || c6(&table),
    );
    suite.run("7", "power hypotheses", || c7(&table));
    suite.run("8", "Mersenne excesses", || c8(&table));
    suite.run("9", "defect-rank inequality", || c9(&table));
    suite.run("10", "collapse powers", || c10(&table));
    suite.run("11", "first-operation scan", || c11(&table));
    if extended {
        suite.run("11x", "first-operation scan at 4·10^8", c11_extended);
    } else {
        suite.skip("11x", "first-operation scan at 4·10^8", "set INTCX_EXTENDED=1");
    }
    suite.run("12", "Cunningham chains of e(n)", || c12(&seq));
    suite.run("13", "e(n) asymptote fit", || c13(&seq));
    suite.run("14", "persistence and resume", || c14(&table));
    println!(
        "NOTE  15   not reproducible at this scale: verifications to 10^12, the 21360 numbers \
         needing 6/8/9, the three subtraction-of-8 cases near 10^11-10^12, the 119 \
         subtraction-of-9 cases"
    );

    if suite.known > 0 {
        println!("{} known discrepancies in the reference data", suite.known);
    }
    if suite.failed == 0 {
        println!("no unexpected failures");
        ExitCode::SUCCESS
    } else {
        println!("{} criteria failed", suite.failed);
        ExitCode::FAILURE
    }
}
