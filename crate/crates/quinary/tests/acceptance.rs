//! The acceptance gate: nine exact criteria, one test per criterion, each
//! with a wall-clock budget pinned in code. Every check is zero-tolerance
//! integer equality; independent oracles (coefficient-box enumeration, the
//! two theta routes, MacWilliams) guard the derived values.
//!
//! Run with `cargo test --test acceptance -- --test-threads=1 --nocapture`
//! to see one ACCEPTANCE line per criterion with timings.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;

use quinary::algebra::{FpMatrix, ZMatrix};
use quinary::codes::{
    hamming_enumerator, hamming_weight, macwilliams_transform, random_self_dual, singleton_bound,
    sweep_compositions, LinearCode, WeightKind,
};
use quinary::construction_a::{construction_a, support_grouped_codes, theta_from_compositions};
use quinary::io::{parse_code, write_code};
use quinary::lattices::{
    decompose, dn_plus, kissing_number, minimum_norm, short_vectors, theta_series,
};
use quinary::pipeline::{refute_candidate, search, Conclusion, RefutationReport, Verdict};

fn gate(n: u32, budget: Duration, body: fn()) {
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(body);
    let elapsed = start.elapsed();
    let ok = outcome.is_ok() && elapsed <= budget;
    println!(
        "ACCEPTANCE {n}: {} ({elapsed:.2?}, budget {budget:?})",
        if ok { "PASS" } else { "FAIL" }
    );
    if let Err(panic) = outcome {
        std::panic::resume_unwind(panic);
    }
    assert!(elapsed <= budget, "criterion {n} exceeded its budget: {elapsed:?} > {budget:?}");
}

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fixture_codes() -> Vec<(String, LinearCode)> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(fixtures_dir()).expect("fixtures directory") {
        let path = entry.expect("dir entry").path();
        if path.extension().and_then(|e| e.to_str()) == Some("code") {
            let text = std::fs::read_to_string(&path).expect("readable fixture");
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            out.push((name, parse_code(&text).expect("valid fixture")));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    assert!(!out.is_empty(), "no code fixtures found");
    out
}

/// Independent oracle: enumerate every coefficient vector in the exact box
/// |x_i|^2 <= bound * minor_ii / det and tally norms. No pruning, no float.
fn box_counts(gram: &ZMatrix, bound: i64) -> BTreeMap<i64, u64> {
    let n = gram.rows();
    let det = gram.det().unwrap();
    assert!(det > BigInt::zero());
    let mut radius = vec![0i64; n];
    for i in 0..n {
        let mut entries = Vec::new();
        for r in 0..n {
            for c in 0..n {
                if r != i && c != i {
                    entries.push(gram.get(r, c));
                }
            }
        }
        let minor = ZMatrix::new(n - 1, n - 1, entries).unwrap().det().unwrap();
        let cap = BigInt::from(bound) * minor;
        let mut r = 0i64;
        while BigInt::from((r + 1) * (r + 1)) * &det <= cap {
            r += 1;
        }
        radius[i] = r;
    }
    let mut counts = BTreeMap::new();
    let mut x: Vec<i64> = radius.iter().map(|r| -r).collect();
    'outer: loop {
        let mut norm = 0i64;
        for i in 0..n {
            for j in 0..n {
                norm += x[i] * gram.get(i, j) * x[j];
            }
        }
        if norm > 0 && norm <= bound {
            *counts.entry(norm).or_insert(0) += 1;
        }
        for i in 0..n {
            if x[i] < radius[i] {
                x[i] += 1;
                continue 'outer;
            }
            x[i] = -radius[i];
        }
        break;
    }
    counts
}

fn criterion_1_body() {
    // A5 of the (1,2) code is Z^2 in disguise
    let c = LinearCode::from_generator(&FpMatrix::new(5, 1, 2, vec![1, 2]).unwrap());
    let built = construction_a(&c).unwrap();
    let lat = built.lattice();
    assert_eq!(lat.determinant(), BigInt::from(1));
    assert_eq!(minimum_norm(lat).unwrap(), 1);
    assert_eq!(kissing_number(lat).unwrap(), 4);
    let report = short_vectors(lat, 3).unwrap();
    assert_eq!(report.counts_by_norm(), &box_counts(lat.gram(), 3));

    // A5 of [I2 | 2 I2] is Z^4 in disguise
    let g = FpMatrix::new(5, 2, 4, vec![1, 0, 2, 0, 0, 1, 0, 2]).unwrap();
    let c = LinearCode::from_generator(&g);
    let built = construction_a(&c).unwrap();
    let lat = built.lattice();
    assert_eq!(lat.determinant(), BigInt::from(1));
    assert_eq!(minimum_norm(lat).unwrap(), 1);
    assert_eq!(kissing_number(lat).unwrap(), 8);
    let report = short_vectors(lat, 2).unwrap();
    assert_eq!(report.counts_by_norm(), &box_counts(lat.gram(), 2));
}

#[test]
fn criterion_1_construction_a_sanity() {
    gate(1, Duration::from_secs(1), criterion_1_body);
}

fn criterion_2_body() {
    let d12p = dn_plus(12).unwrap();
    assert!(d12p.is_unimodular());
    assert!(!d12p.is_even());
    assert_eq!(minimum_norm(&d12p).unwrap(), 2);
    assert_eq!(kissing_number(&d12p).unwrap(), 264);

    let d8p = dn_plus(8).unwrap();
    assert!(d8p.is_unimodular());
    assert!(d8p.is_even());
    assert_eq!(minimum_norm(&d8p).unwrap(), 2);
    assert_eq!(kissing_number(&d8p).unwrap(), 240);
}

#[test]
fn criterion_2_dn_plus_invariants() {
    gate(2, Duration::from_secs(10), criterion_2_body);
}

fn criterion_3_body() {
    let d12p = dn_plus(12).unwrap();
    let sum = d12p.direct_sum(&d12p);
    assert_eq!(minimum_norm(&sum).unwrap(), 2);
    assert_eq!(kissing_number(&sum).unwrap(), 528);
    let comps = decompose(&sum).unwrap();
    assert_eq!(comps.len(), 2);
    for comp in &comps {
        assert_eq!(comp.dim(), 12);
        assert_eq!(kissing_number(comp).unwrap(), 264);
        // indecomposable: splitting again returns the component whole
        assert_eq!(decompose(comp).unwrap().len(), 1);
    }
}

#[test]
fn criterion_3_doubled_lattice_identification() {
    gate(3, Duration::from_secs(30), criterion_3_body);
}

fn criterion_4_body() {
    assert_eq!(singleton_bound(12, 6), 7);
    assert!(singleton_bound(12, 6) < 10);
    for seed in 0..120u64 {
        let c = random_self_dual(12, seed).unwrap();
        let w = c.minimum_weight(WeightKind::Hamming).unwrap();
        assert!(w <= 7, "seed {seed} produced minimum weight {w} > 7");
    }
}

#[test]
fn criterion_4_singleton_cap_on_components() {
    gate(4, Duration::from_secs(10), criterion_4_body);
}

fn criterion_5_body() {
    let mut checked = 0;
    for (name, code) in fixture_codes() {
        if !(code.p() == 5 && code.is_self_dual() && code.len() <= 12) {
            continue;
        }
        let table = sweep_compositions(&code).unwrap();
        let from_census = theta_from_compositions(&table, 5).unwrap();
        let built = construction_a(&code).unwrap();
        let from_lattice = theta_series(built.lattice(), 5).unwrap();
        assert_eq!(from_census, from_lattice, "theta routes disagree on {name}");
        checked += 1;
    }
    assert!(checked >= 6, "fixture set too thin: {checked} self-dual codes of length <= 12");
}

#[test]
fn criterion_5_theta_two_routes() {
    gate(5, Duration::from_secs(60), criterion_5_body);
}

fn criterion_6_body() {
    let mut checked = 0;
    for (name, code) in fixture_codes() {
        if !(code.p() == 5 && code.is_self_dual()) {
            continue;
        }
        let table = sweep_compositions(&code).unwrap();
        let w = hamming_enumerator(&table);
        let transformed = macwilliams_transform(&w, code.dim(), 5).unwrap();
        assert_eq!(transformed, w, "MacWilliams moved the enumerator of {name}");
        checked += 1;
    }
    assert!(checked >= 7, "fixture set too thin: {checked} self-dual codes");
}

#[test]
fn criterion_6_macwilliams_fixed_point() {
    gate(6, Duration::from_secs(5), criterion_6_body);
}

fn criterion_7_body() {
    let pairs = [(2usize, 4usize, 5u64), (4, 6, 21), (6, 8, 33), (8, 8, 47), (2, 8, 59)];
    for (n1, n2, seed) in pairs {
        let c1 = random_self_dual(n1, seed).unwrap();
        let c2 = random_self_dual(n2, seed + 1).unwrap();
        let joint = c1.direct_sum(&c2).unwrap();
        let built = construction_a(&joint).unwrap();
        let groups = support_grouped_codes(&built).unwrap();
        // reassemble each original block from the groups it split into
        let mut rows: [Vec<i64>; 2] = [Vec::new(), Vec::new()];
        let mut covered: Vec<usize> = Vec::new();
        for (support, code) in &groups {
            let block = usize::from(support[0] >= n1);
            let offset = if block == 0 { 0 } else { n1 };
            let width = if block == 0 { n1 } else { n2 };
            assert!(
                support.iter().all(|&c| c >= offset && c < offset + width),
                "support {support:?} straddles the blocks ({n1},{n2})"
            );
            covered.extend_from_slice(support);
            for row in code.generator().rows_iter() {
                let mut embedded = vec![0i64; width];
                for (&col, &v) in support.iter().zip(row) {
                    embedded[col - offset] = v as i64;
                }
                rows[block].extend_from_slice(&embedded);
            }
        }
        covered.sort_unstable();
        assert_eq!(covered, (0..n1 + n2).collect::<Vec<_>>());
        let back1 = LinearCode::from_generator(
            &FpMatrix::new(5, rows[0].len() / n1, n1, rows[0].clone()).unwrap(),
        );
        let back2 = LinearCode::from_generator(
            &FpMatrix::new(5, rows[1].len() / n2, n2, rows[1].clone()).unwrap(),
        );
        assert_eq!(back1, c1, "block 1 not recovered for ({n1},{n2},{seed})");
        assert_eq!(back2, c2, "block 2 not recovered for ({n1},{n2},{seed})");
    }
}

#[test]
fn criterion_7_direct_sum_roundtrip() {
    gate(7, Duration::from_secs(60), criterion_7_body);
}

fn criterion_8_body() {
    // one full census of 5^12 codewords
    let code = random_self_dual(24, 77).unwrap();
    let table = sweep_compositions(&code).unwrap();
    assert_eq!(table.total(), 5u64.pow(12));

    // randomized search at full length: 10 is unreachable
    let summary = search(100, 424_242, 24, None).unwrap();
    let measured: u64 = summary.histogram.values().sum();
    assert_eq!(measured + summary.truncated_trials, summary.trials);
    if summary.best_weight >= 10 {
        let path = Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("../../counterexample-acceptance.code");
        let best = summary.best_code().unwrap();
        std::fs::write(&path, write_code(&best)).unwrap();
        panic!(
            "search found minimum weight {} at length 24; generator saved to {}",
            summary.best_weight,
            path.display()
        );
    }
    assert!(summary.best_weight <= 9);
}

#[test]
fn criterion_8_sweep_scale_and_search() {
    gate(8, Duration::from_secs(600), criterion_8_body);
}

const STAGE_ORDER: [&str; 7] = [
    "shape-and-duality",
    "minimum-weight",
    "kissing-number",
    "lattice-decomposition",
    "unit-vector-split",
    "component-codes",
    "final-contradiction",
];

/// Structural invariants every refutation report must satisfy: fixed stage
/// order, contiguous pass prefix, at most one fail, nothing after it
/// reached, and the conclusion determined by the first fail. A report with
/// no fail must be a complete pass ending in contradiction-derived: there is
/// no silent third outcome.
fn check_report_shape(report: &RefutationReport) {
    assert_eq!(report.stages.len(), 7);
    for (stage, name) in report.stages.iter().zip(STAGE_ORDER) {
        assert_eq!(stage.name, name);
    }
    let first_fail = report.stages.iter().position(|s| s.verdict == Verdict::Fail);
    match first_fail {
        None => {
            assert!(report.stages.iter().all(|s| s.verdict == Verdict::Pass));
            assert_eq!(report.conclusion, Conclusion::ContradictionDerived);
        }
        Some(i) => {
            assert!(report.stages[..i].iter().all(|s| s.verdict == Verdict::Pass));
            assert!(report.stages[i + 1..].iter().all(|s| s.verdict == Verdict::NotReached));
            let expected = match i {
                0 => Conclusion::NotSelfDual,
                1 => {
                    let cert = report.stages[1].certificate.as_ref().unwrap();
                    if cert["minimum_weight"].as_u64().unwrap() < 10 {
                        Conclusion::MinWeightBelow10
                    } else {
                        Conclusion::ForcedStepDivergence
                    }
                }
                _ => Conclusion::ForcedStepDivergence,
            };
            assert_eq!(report.conclusion, expected);
        }
    }
}

/// Re-validate every certificate the report carries against the code it
/// was issued for, using independent recomputation.
fn revalidate_certificates(code: &LinearCode, report: &RefutationReport) {
    for stage in &report.stages {
        let Some(cert) = stage.certificate.as_ref() else { continue };
        match stage.name.as_str() {
            "shape-and-duality" => {
                assert_eq!(cert["q"].as_u64().unwrap(), u64::from(code.p()));
                assert_eq!(cert["n"].as_u64().unwrap() as usize, code.len());
                assert_eq!(cert["k"].as_u64().unwrap() as usize, code.dim());
            }
            "minimum-weight" => {
                let claimed = cert["minimum_weight"].as_u64().unwrap() as u32;
                if let Some(witness) = cert.get("witness") {
                    let word: Vec<u8> = serde_json::from_value(witness.clone()).unwrap();
                    assert!(code.contains(&word).unwrap(), "witness not in code");
                    assert_eq!(hamming_weight(&word), claimed, "witness weight mismatch");
                }
                assert_eq!(code.minimum_weight(WeightKind::Hamming).unwrap(), claimed);
            }
            "kissing-number" => {
                // independent route: enumerate the lattice directly
                let built = construction_a(code).unwrap();
                let min = minimum_norm(built.lattice()).unwrap();
                let kiss = kissing_number(built.lattice()).unwrap();
                assert_eq!(cert["minimum_norm"].as_i64().unwrap(), min);
                assert_eq!(cert["kissing"].as_u64().unwrap(), kiss);
            }
            _ => {}
        }
    }
}

fn criterion_9_body() {
    let mut seen = Vec::new();
    for (name, code) in fixture_codes() {
        let report = refute_candidate(&code).unwrap();
        check_report_shape(&report);
        revalidate_certificates(&code, &report);
        let text = serde_json::to_string(&report).unwrap();
        let back: RefutationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
        seen.push((name, report.conclusion));
    }
    // the committed candidates die exactly where they should
    let conclusion_of = |n: &str| {
        seen.iter().find(|(name, _)| name == n).map(|(_, c)| *c).unwrap()
    };
    assert_eq!(conclusion_of("c21.code"), Conclusion::NotSelfDual);
    assert_eq!(conclusion_of("not_self_dual24.code"), Conclusion::NotSelfDual);
    assert_eq!(conclusion_of("random24.code"), Conclusion::MinWeightBelow10);

    // fresh full-length candidates: the pipeline always terminates with a
    // verdict and re-validating certificates, never a silent pass
    for seed in 100..106u64 {
        let code = random_self_dual(24, seed).unwrap();
        let report = refute_candidate(&code).unwrap();
        check_report_shape(&report);
        revalidate_certificates(&code, &report);
        assert!(matches!(
            report.conclusion,
            Conclusion::MinWeightBelow10 | Conclusion::ForcedStepDivergence
        ));
    }
}

#[test]
fn criterion_9_refutation_end_to_end() {
    gate(9, Duration::from_secs(900), criterion_9_body);
}
