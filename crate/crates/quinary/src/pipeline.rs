//! The refutation pipeline: drive a candidate code through the fixed chain
//! of exact checks that a self-dual [24,12] code of minimum weight 10 would
//! have to survive, and report exactly where it dies.
//!
//! Stage order is total and fixed. A stage that contradicts a property the
//! theory forces (rather than one the candidate merely fails to have) is
//! reported as `forced-step-divergence`: on a genuine self-dual minimum-
//! weight-10 input that verdict would be remarkable, and the report is the
//! evidence trail. Reaching the final stage derives the contradiction that
//! refutes the candidate wholesale: its component codes would need minimum
//! weight 10 while no [12,6] code can exceed 7.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::codes::{
    find_codeword_with_hamming_weight, random_self_dual, singleton_bound, sweep_compositions,
    LinearCode, MinWeightScan, WeightKind,
};
use crate::construction_a::{component_code, construction_a, unit_vector_assignment};
use crate::error::{Error, Result};
use crate::lattices::{decompose, dn_plus, kissing_number, minimum_norm};

/// Verdict of a single stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotReached,
}

/// Where the pipeline ended up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Conclusion {
    /// Stage 1: the input is not a self-dual [24,12] code.
    #[serde(rename = "not-self-dual")]
    NotSelfDual,
    /// Stage 2: a witness codeword of Hamming weight below 10 exists.
    #[serde(rename = "min-weight-below-10")]
    MinWeightBelow10,
    /// All stages passed and the final Singleton comparison closed the trap.
    #[serde(rename = "contradiction-derived")]
    ContradictionDerived,
    /// A theory-forced step failed; the report documents which.
    #[serde(rename = "forced-step-divergence")]
    ForcedStepDivergence,
}

/// One pipeline stage: a fixed name, its verdict, and exact certificate
/// data that other modules can re-check independently.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageReport {
    pub name: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    #[serde(default)]
    pub certificate: Option<Value>,
}

impl StageReport {
    fn pass(name: &str, certificate: Value) -> StageReport {
        StageReport { name: name.into(), verdict: Verdict::Pass, certificate: Some(certificate) }
    }

    fn fail(name: &str, certificate: Value) -> StageReport {
        StageReport { name: name.into(), verdict: Verdict::Fail, certificate: Some(certificate) }
    }

    fn not_reached(name: &str) -> StageReport {
        StageReport { name: name.into(), verdict: Verdict::NotReached, certificate: None }
    }
}

/// Full trace of one refutation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RefutationReport {
    pub stages: Vec<StageReport>,
    pub conclusion: Conclusion,
}

const STAGE_NAMES: [&str; 7] = [
    "shape-and-duality",
    "minimum-weight",
    "kissing-number",
    "lattice-decomposition",
    "unit-vector-split",
    "component-codes",
    "final-contradiction",
];

fn finish(mut stages: Vec<StageReport>, conclusion: Conclusion) -> RefutationReport {
    for name in STAGE_NAMES.iter().skip(stages.len()) {
        stages.push(StageReport::not_reached(name));
    }
    RefutationReport { stages, conclusion }
}

/// Run the full stage chain on an arbitrary code.
///
/// Mathematical divergences become report verdicts; `Err` is reserved for
/// resource problems (a sweep beyond the supported dimension).
pub fn refute_candidate(code: &LinearCode) -> Result<RefutationReport> {
    let mut stages = Vec::new();

    // stage 1: shape and duality
    let shape_ok = code.p() == 5 && code.len() == 24 && code.dim() == 12 && code.is_self_dual();
    let cert = json!({
        "q": code.p(),
        "n": code.len(),
        "k": code.dim(),
        "self_dual": code.p() == 5 && code.is_self_dual(),
    });
    if !shape_ok {
        stages.push(StageReport::fail(STAGE_NAMES[0], cert));
        return Ok(finish(stages, Conclusion::NotSelfDual));
    }
    stages.push(StageReport::pass(STAGE_NAMES[0], cert));

    // stage 2: minimum Hamming weight must be exactly 10
    let table = sweep_compositions(code)?;
    let min_weight = table.minimum_weight(WeightKind::Hamming).ok_or(Error::ZeroCode)?;
    if min_weight < 10 {
        let witness = find_codeword_with_hamming_weight(code, min_weight)?
            .ok_or(Error::NotExhaustive)?;
        stages.push(StageReport::fail(
            STAGE_NAMES[1],
            json!({ "minimum_weight": min_weight, "witness": witness }),
        ));
        return Ok(finish(stages, Conclusion::MinWeightBelow10));
    }
    if min_weight > 10 {
        // Singleton allows up to 13, but exceeding 10 contradicts the
        // hypothesis under test in the other direction; surface it loudly.
        stages.push(StageReport::fail(
            STAGE_NAMES[1],
            json!({ "minimum_weight": min_weight, "expected": 10 }),
        ));
        return Ok(finish(stages, Conclusion::ForcedStepDivergence));
    }
    stages.push(StageReport::pass(STAGE_NAMES[1], json!({ "minimum_weight": 10 })));

    // stage 3: the lattice must have minimum norm 2, kissing number 528
    let (min_norm, kissing) = crate::construction_a::kissing_from_compositions(&table)?;
    let cert = json!({ "minimum_norm": min_norm, "kissing": kissing });
    if (min_norm, kissing) != (2, 528) {
        stages.push(StageReport::fail(STAGE_NAMES[2], cert));
        return Ok(finish(stages, Conclusion::ForcedStepDivergence));
    }
    stages.push(StageReport::pass(STAGE_NAMES[2], cert));

    // stage 4: the lattice must split into exactly two 12-dim summands
    let built = construction_a(code)?;
    let comps = decompose(built.lattice())?;
    let dims: Vec<usize> = comps.iter().map(|c| c.dim()).collect();
    let cert = json!({ "component_dimensions": dims });
    if dims != [12, 12] {
        stages.push(StageReport::fail(STAGE_NAMES[3], cert));
        return Ok(finish(stages, Conclusion::ForcedStepDivergence));
    }
    stages.push(StageReport::pass(STAGE_NAMES[3], cert));

    // stage 5: each scaled unit vector must land in exactly one summand,
    // twelve per side
    let owners = unit_vector_assignment(&comps, 24)?;
    let cert = json!({ "owners": owners });
    let clean = owners.iter().all(|o| o.len() == 1);
    let first_count = owners.iter().filter(|o| o.as_slice() == [0]).count();
    if !clean || first_count != 12 {
        stages.push(StageReport::fail(STAGE_NAMES[4], cert));
        return Ok(finish(stages, Conclusion::ForcedStepDivergence));
    }
    stages.push(StageReport::pass(STAGE_NAMES[4], cert));

    // stage 6: both component codes must be self-dual of length 12
    let mut codes = Vec::new();
    let mut summaries = Vec::new();
    for idx in 0..comps.len() {
        let support: Vec<usize> =
            (0..24).filter(|i| owners[*i].as_slice() == [idx]).collect();
        let comp_code = component_code(&comps[idx], &support)?;
        summaries.push(json!({
            "support": support,
            "n": comp_code.len(),
            "k": comp_code.dim(),
            "self_dual": comp_code.is_self_dual(),
            "generator": generator_rows(&comp_code),
        }));
        codes.push(comp_code);
    }
    let cert = Value::Array(summaries);
    if !codes.iter().all(|c| c.len() == 12 && c.is_self_dual()) {
        stages.push(StageReport::fail(STAGE_NAMES[5], cert));
        return Ok(finish(stages, Conclusion::ForcedStepDivergence));
    }
    stages.push(StageReport::pass(STAGE_NAMES[5], cert));

    // stage 7: components inherit minimum weight >= 10, but no [12,6] code
    // clears Singleton's cap of 7; measure both and close the trap
    let bound = singleton_bound(12, 6);
    let mut measured = Vec::new();
    let mut witnesses = Vec::new();
    for c in &codes {
        let w = c.minimum_weight(WeightKind::Hamming)?;
        witnesses.push(find_codeword_with_hamming_weight(c, w)?.ok_or(Error::NotExhaustive)?);
        measured.push(w);
    }
    let cert = json!({
        "required_minimum_weight": 10,
        "singleton_cap": bound,
        "measured": measured,
        "witnesses": witnesses,
    });
    if measured.iter().any(|&w| w >= 10) {
        stages.push(StageReport::fail(STAGE_NAMES[6], cert));
        return Ok(finish(stages, Conclusion::ForcedStepDivergence));
    }
    stages.push(StageReport::pass(STAGE_NAMES[6], cert));
    Ok(finish(stages, Conclusion::ContradictionDerived))
}

fn generator_rows(code: &LinearCode) -> Vec<Vec<u8>> {
    code.generator().rows_iter().map(|r| r.to_vec()).collect()
}

/// Report of the fixed-fact checks the refutation leans on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreliminaryReport {
    pub checks: Vec<StageReport>,
    pub all_pass: bool,
}

/// Verify the fixed facts: D12+ invariants, the doubled lattice's kissing
/// number and decomposition, the Singleton gap, and duality of direct sums
/// on randomized small codes.
pub fn verify_preliminaries() -> Result<PreliminaryReport> {
    let mut checks = Vec::new();

    // (a) D12+ is odd unimodular with minimum norm 2, kissing 264
    let d12p = dn_plus(12)?;
    let min = minimum_norm(&d12p)?;
    let kiss = kissing_number(&d12p)?;
    let a_ok = d12p.is_unimodular() && !d12p.is_even() && min == 2 && kiss == 264;
    let cert = json!({
        "unimodular": d12p.is_unimodular(),
        "even": d12p.is_even(),
        "minimum_norm": min,
        "kissing": kiss,
    });
    checks.push(if a_ok {
        StageReport::pass("d12-plus-invariants", cert)
    } else {
        StageReport::fail("d12-plus-invariants", cert)
    });

    // (b) the doubled lattice: minimum norm 2, kissing 528, and exactly two
    // 12-dimensional indecomposable summands
    let sum = d12p.direct_sum(&d12p);
    let min = minimum_norm(&sum)?;
    let kiss = kissing_number(&sum)?;
    let comps = decompose(&sum)?;
    let dims: Vec<usize> = comps.iter().map(|c| c.dim()).collect();
    let b_ok = min == 2 && kiss == 528 && dims == [12, 12];
    let cert = json!({ "minimum_norm": min, "kissing": kiss, "component_dimensions": dims });
    checks.push(if b_ok {
        StageReport::pass("d12-plus-doubled", cert)
    } else {
        StageReport::fail("d12-plus-doubled", cert)
    });

    // (c) the Singleton gap that powers the final stage
    let bound = singleton_bound(12, 6);
    let cert = json!({ "bound": bound, "required": 10 });
    checks.push(if bound == 7 {
        StageReport::pass("singleton-gap", cert)
    } else {
        StageReport::fail("singleton-gap", cert)
    });

    // (d) dual(C1 ⊕ C2) = dual(C1) ⊕ dual(C2) on randomized small codes,
    // plus the fixed self-dual instance of length 4
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut d_ok = true;
    let mut cases = 0u32;
    for _ in 0..6 {
        let (c1, c2) = (random_code(&mut rng), random_code(&mut rng));
        let lhs = c1.direct_sum(&c2)?.dual();
        let rhs = c1.dual().direct_sum(&c2.dual())?;
        d_ok &= lhs == rhs;
        cases += 1;
    }
    let fixed = crate::codes::LinearCode::from_generator(
        &crate::algebra::FpMatrix::new(5, 1, 2, vec![1, 2])?,
    );
    let lhs = fixed.direct_sum(&fixed)?.dual();
    let rhs = fixed.dual().direct_sum(&fixed.dual())?;
    d_ok &= lhs == rhs && lhs == fixed.direct_sum(&fixed)?;
    cases += 1;
    let cert = json!({ "cases": cases });
    checks.push(if d_ok {
        StageReport::pass("direct-sum-duality", cert)
    } else {
        StageReport::fail("direct-sum-duality", cert)
    });

    let all_pass = checks.iter().all(|c| c.verdict == Verdict::Pass);
    Ok(PreliminaryReport { checks, all_pass })
}

fn random_code(rng: &mut ChaCha8Rng) -> LinearCode {
    let n = 3 + (rng.next_u32() as usize) % 5;
    let k = 1 + (rng.next_u32() as usize) % 3.min(n);
    let entries: Vec<i64> = (0..k * n).map(|_| (rng.next_u32() % 5) as i64).collect();
    LinearCode::from_generator(
        &crate::algebra::FpMatrix::new(5, k, n, entries).expect("valid dims"),
    )
}

/// Outcome of a randomized search over self-dual codes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub trials: u64,
    pub seed: u64,
    pub length: usize,
    /// Largest exactly-measured minimum Hamming weight seen.
    pub best_weight: u32,
    /// Canonical generator of the best code, row by row.
    pub best_generator: Vec<Vec<u8>>,
    /// Trials whose exact minimum weight was measured, keyed by weight.
    pub histogram: BTreeMap<u32, u64>,
    /// Trials abandoned early because a codeword at or below the incumbent
    /// best weight turned up; their exact minima are unknown by design.
    pub truncated_trials: u64,
}

impl SearchSummary {
    /// Rebuild the best code from the stored generator rows.
    pub fn best_code(&self) -> Result<LinearCode> {
        let k = self.best_generator.len();
        let entries: Vec<i64> = self
            .best_generator
            .iter()
            .flat_map(|r| r.iter().map(|&v| v as i64))
            .collect();
        Ok(LinearCode::from_generator(&crate::algebra::FpMatrix::new(
            5,
            k,
            self.length,
            entries,
        )?))
    }
}

/// Randomized search for high-minimum-weight self-dual codes.
///
/// Deterministic given (trials, seed, length): per-trial seeds are drawn
/// from one seeded stream, and the early-exit scan's verdict never depends
/// on scheduling. A trial runs to an exact minimum only when no codeword at
/// or below the incumbent best appears; improving trials update the best.
pub fn search(
    trials: u64,
    seed: u64,
    length: usize,
    budget: Option<Duration>,
) -> Result<SearchSummary> {
    if trials == 0 {
        return Err(Error::DimensionMismatch("search needs at least one trial".into()));
    }
    let start = Instant::now();
    let mut stream = ChaCha8Rng::seed_from_u64(seed);
    let mut best_weight = 0u32;
    let mut best: Option<LinearCode> = None;
    let mut histogram = BTreeMap::new();
    let mut truncated = 0u64;
    for _ in 0..trials {
        if let Some(cap) = budget {
            if start.elapsed() > cap {
                return Err(Error::BudgetExceeded(cap.as_secs()));
            }
        }
        let trial_seed = stream.next_u64();
        let code = random_self_dual(length, trial_seed)?;
        match crate::codes::min_hamming_weight_early_exit(&code, best_weight)? {
            MinWeightScan::AtMost(_) => truncated += 1,
            MinWeightScan::Exact(w) => {
                *histogram.entry(w).or_insert(0u64) += 1;
                if w > best_weight || best.is_none() {
                    best_weight = w;
                    best = Some(code);
                }
            }
        }
    }
    let best = best.expect("first trial always measures exactly");
    Ok(SearchSummary {
        trials,
        seed,
        length,
        best_weight,
        best_generator: generator_rows(&best),
        histogram,
        truncated_trials: truncated,
    })
}
