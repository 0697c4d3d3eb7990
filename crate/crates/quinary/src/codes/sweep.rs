//! Exhaustive codeword census by Lee-weight composition.
//!
//! The sweep walks all 5^k codewords of an [n, k] code over F5 in base-5
//! reflected Gray order, so consecutive codewords differ by adding or
//! subtracting a single generator row. Codewords live one coordinate per
//! byte inside 64-bit words, and both the row update and the Lee-class
//! counting operate on eight coordinates per instruction:
//!
//! - add mod 5: t = a + b bytewise (sums stay below 16, so no carries cross
//!   byte lanes); a byte of t exceeds 4 exactly when t + 3 has bit 3 set,
//!   and subtracting (mask>>1)|(mask>>3) = 5 per flagged byte renormalizes.
//! - Lee classes: a residue in 0..=4 is nonzero iff bits 0..2 OR to 1, and
//!   has Lee weight 2 iff bit 1 is set (residues 2 and 3). Flag bits are
//!   summed with a 0x0101..01 multiply.
//!
//! The coefficient space is partitioned on the highest Gray digits into a
//! block count that depends only on k, never on worker count or feature
//! flags, and per-block results merge commutatively; census, minimum and
//! witness outputs are therefore identical sequentially and in parallel.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use super::{LinearCode, WeightKind};
use crate::error::{Error, Result};
use crate::par;

/// Largest dimension swept without an explicit override (5^12 codewords).
pub const DEFAULT_MAX_K: usize = 12;

/// Hard cap: 5^k must fit in u64 and the packed word layout caps n at 64.
const ABSOLUTE_MAX_K: usize = 26;
const MAX_N: usize = 64;

/// Exact census of the codewords of an [n, k] code over F5 by Lee-weight
/// composition (n0, n1, n2): the number of coordinates of Lee weight 0, 1
/// and 2 respectively, n0 + n1 + n2 = n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionTable {
    n: usize,
    k: usize,
    counts: Vec<u64>, // indexed n1 * (n + 1) + n2
}

impl CompositionTable {
    pub fn length(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    /// Count of codewords with the given composition. Panics if the parts do
    /// not sum to the code length.
    pub fn count(&self, n0: usize, n1: usize, n2: usize) -> u64 {
        assert_eq!(n0 + n1 + n2, self.n, "composition parts must sum to n");
        self.counts[n1 * (self.n + 1) + n2]
    }

    /// All compositions with nonzero count, as ((n0, n1, n2), count).
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize, usize), u64)> + '_ {
        let np1 = self.n + 1;
        self.counts.iter().enumerate().filter(|(_, &c)| c > 0).map(move |(i, &c)| {
            let n1 = i / np1;
            let n2 = i % np1;
            ((self.n - n1 - n2, n1, n2), c)
        })
    }

    /// Total count over all compositions; always 5^k.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Smallest weight of the given kind over nonzero codewords, or None for
    /// the zero code.
    pub fn minimum_weight(&self, kind: WeightKind) -> Option<u32> {
        self.entries()
            .filter(|&((_, n1, n2), _)| n1 + n2 > 0)
            .map(|((_, n1, n2), _)| match kind {
                WeightKind::Hamming => (n1 + n2) as u32,
                WeightKind::Lee => (n1 + 2 * n2) as u32,
                WeightKind::Euclidean => (n1 + 4 * n2) as u32,
            })
            .min()
    }

    fn merge(mut tables: Vec<Vec<u64>>, n: usize, k: usize) -> CompositionTable {
        let mut counts = tables.pop().expect("at least one block");
        for t in &tables {
            for (dst, src) in counts.iter_mut().zip(t) {
                *dst += src;
            }
        }
        CompositionTable { n, k, counts }
    }
}

/// Outcome of an early-exit minimum-weight sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinWeightScan {
    /// Some codeword has Hamming weight at most the exit threshold; the
    /// sweep stopped without determining the exact minimum.
    AtMost(u32),
    /// No codeword at or below the threshold exists; this is the exact
    /// minimum Hamming weight, from a full sweep.
    Exact(u32),
}

/// Full composition census. Refuses k > 12 (5^13 codewords and up); use
/// [`sweep_compositions_unbounded`] to override deliberately.
pub fn sweep_compositions(code: &LinearCode) -> Result<CompositionTable> {
    if code.dim() > DEFAULT_MAX_K {
        return Err(Error::SweepBudget { k: code.dim(), max: DEFAULT_MAX_K });
    }
    sweep_compositions_unbounded(code)
}

/// Full composition census with the 5^12 budget guard lifted.
pub fn sweep_compositions_unbounded(code: &LinearCode) -> Result<CompositionTable> {
    let plan = Plan::new(code)?;
    let np1 = plan.n + 1;
    let tables = match plan.words {
        1 => par::run_indexed(plan.blocks, |b| census_block::<1>(&plan, b)),
        2 => par::run_indexed(plan.blocks, |b| census_block::<2>(&plan, b)),
        3 => par::run_indexed(plan.blocks, |b| census_block::<3>(&plan, b)),
        4 => par::run_indexed(plan.blocks, |b| census_block::<4>(&plan, b)),
        5 => par::run_indexed(plan.blocks, |b| census_block::<5>(&plan, b)),
        6 => par::run_indexed(plan.blocks, |b| census_block::<6>(&plan, b)),
        7 => par::run_indexed(plan.blocks, |b| census_block::<7>(&plan, b)),
        _ => par::run_indexed(plan.blocks, |b| census_block::<8>(&plan, b)),
    };
    debug_assert!(tables.iter().all(|t| t.len() == np1 * np1));
    Ok(CompositionTable::merge(tables, plan.n, plan.k))
}

/// Minimum Hamming weight with early exit: stops as soon as any codeword of
/// weight <= exit_below is seen, otherwise completes the sweep and returns
/// the exact minimum. Deterministic either way.
pub fn min_hamming_weight_early_exit(
    code: &LinearCode,
    exit_below: u32,
) -> Result<MinWeightScan> {
    if code.dim() == 0 {
        return Err(Error::ZeroCode);
    }
    if code.dim() > DEFAULT_MAX_K {
        return Err(Error::SweepBudget { k: code.dim(), max: DEFAULT_MAX_K });
    }
    let plan = Plan::new(code)?;
    let stop = AtomicBool::new(false);
    let minima = match plan.words {
        1 => par::run_indexed(plan.blocks, |b| min_block::<1>(&plan, b, exit_below, &stop)),
        2 => par::run_indexed(plan.blocks, |b| min_block::<2>(&plan, b, exit_below, &stop)),
        3 => par::run_indexed(plan.blocks, |b| min_block::<3>(&plan, b, exit_below, &stop)),
        4 => par::run_indexed(plan.blocks, |b| min_block::<4>(&plan, b, exit_below, &stop)),
        5 => par::run_indexed(plan.blocks, |b| min_block::<5>(&plan, b, exit_below, &stop)),
        6 => par::run_indexed(plan.blocks, |b| min_block::<6>(&plan, b, exit_below, &stop)),
        7 => par::run_indexed(plan.blocks, |b| min_block::<7>(&plan, b, exit_below, &stop)),
        _ => par::run_indexed(plan.blocks, |b| min_block::<8>(&plan, b, exit_below, &stop)),
    };
    if stop.load(Ordering::Relaxed) {
        Ok(MinWeightScan::AtMost(exit_below))
    } else {
        let min = minima.into_iter().min().expect("at least one block");
        debug_assert!(min > exit_below && min <= code.len() as u32);
        Ok(MinWeightScan::Exact(min))
    }
}

/// First codeword (in canonical sweep order) of exactly the given Hamming
/// weight, or None if the code has no such word. Deterministic under any
/// worker count.
pub fn find_codeword_with_hamming_weight(
    code: &LinearCode,
    weight: u32,
) -> Result<Option<Vec<u8>>> {
    if code.dim() > DEFAULT_MAX_K {
        return Err(Error::SweepBudget { k: code.dim(), max: DEFAULT_MAX_K });
    }
    let plan = Plan::new(code)?;
    if plan.k == 0 {
        return Ok(if weight == 0 { Some(vec![0; plan.n]) } else { None });
    }
    // lowest block index with a find so far; later blocks may abandon
    let best_block = AtomicUsize::new(usize::MAX);
    let finds = match plan.words {
        1 => par::run_indexed(plan.blocks, |b| witness_block::<1>(&plan, b, weight, &best_block)),
        2 => par::run_indexed(plan.blocks, |b| witness_block::<2>(&plan, b, weight, &best_block)),
        3 => par::run_indexed(plan.blocks, |b| witness_block::<3>(&plan, b, weight, &best_block)),
        4 => par::run_indexed(plan.blocks, |b| witness_block::<4>(&plan, b, weight, &best_block)),
        5 => par::run_indexed(plan.blocks, |b| witness_block::<5>(&plan, b, weight, &best_block)),
        6 => par::run_indexed(plan.blocks, |b| witness_block::<6>(&plan, b, weight, &best_block)),
        7 => par::run_indexed(plan.blocks, |b| witness_block::<7>(&plan, b, weight, &best_block)),
        _ => par::run_indexed(plan.blocks, |b| witness_block::<8>(&plan, b, weight, &best_block)),
    };
    Ok(finds.into_iter().flatten().next())
}

/// Precomputed sweep layout: packed row multiples and the fixed partition of
/// the top Gray digits into blocks.
struct Plan {
    n: usize,
    k: usize,
    words: usize,
    inner_k: usize,
    blocks: usize,
    // mult[j][c] = c * (generator row j), packed one residue per byte
    mult: Vec<[[u64; 8]; 5]>,
}

impl Plan {
    fn new(code: &LinearCode) -> Result<Plan> {
        if code.p() != 5 {
            return Err(Error::RequiresF5(code.p() as u32));
        }
        let (n, k) = (code.len(), code.dim());
        if n > MAX_N {
            return Err(Error::DimensionMismatch(format!(
                "sweep supports length <= {MAX_N}, got {n}"
            )));
        }
        if k > ABSOLUTE_MAX_K {
            return Err(Error::SweepBudget { k, max: ABSOLUTE_MAX_K });
        }
        let words = n.div_ceil(8).max(1);
        let mut mult = Vec::with_capacity(k);
        for row in code.generator().rows_iter() {
            let mut per_row = [[0u64; 8]; 5];
            for (c, packed) in per_row.iter_mut().enumerate() {
                for (i, &v) in row.iter().enumerate() {
                    let scaled = ((v as usize * c) % 5) as u64;
                    packed[i / 8] |= scaled << (8 * (i % 8));
                }
            }
            mult.push(per_row);
        }
        // blocks fixed by k alone so results never depend on worker count
        let t = match k {
            0 | 1 => 0,
            2 => 1,
            3 => 2,
            _ => 3,
        };
        Ok(Plan { n, k, words, inner_k: k - t, blocks: 5usize.pow(t as u32), mult })
    }

    /// Starting codeword of a block: the fixed top digits times their rows.
    fn base_word(&self, block: usize) -> [u64; 8] {
        let mut cur = [0u64; 8];
        let mut b = block;
        for j in self.inner_k..self.k {
            let d = b % 5;
            b /= 5;
            for w in 0..self.words {
                cur[w] = add5_word(cur[w], self.mult[j][d][w]);
            }
        }
        cur
    }

    fn rows<const W: usize>(&self) -> Vec<([u64; W], [u64; W])> {
        (0..self.inner_k)
            .map(|j| {
                let mut plus = [0u64; W];
                let mut minus = [0u64; W];
                plus.copy_from_slice(&self.mult[j][1][..W]);
                minus.copy_from_slice(&self.mult[j][4][..W]);
                (plus, minus)
            })
            .collect()
    }

    fn start<const W: usize>(&self, block: usize) -> [u64; W] {
        let full = self.base_word(block);
        let mut cur = [0u64; W];
        cur.copy_from_slice(&full[..W]);
        cur
    }
}

/// Loopless base-5 reflected Gray counter (mixed-radix, all radices 5).
/// Each step reports which digit changed and in which direction; over the
/// full run every one of the 5^k digit vectors is visited exactly once.
struct GrayCounter {
    digits: Vec<u8>,
    focus: Vec<usize>,
    dir: Vec<i8>,
}

impl GrayCounter {
    fn new(k: usize) -> GrayCounter {
        GrayCounter { digits: vec![0; k], focus: (0..=k).collect(), dir: vec![1; k] }
    }

    #[inline]
    fn next(&mut self) -> Option<(usize, i8)> {
        let j = self.focus[0];
        self.focus[0] = 0;
        if j == self.digits.len() {
            return None;
        }
        let d = self.dir[j];
        self.digits[j] = (self.digits[j] as i8 + d) as u8;
        if self.digits[j] == 0 || self.digits[j] == 4 {
            self.dir[j] = -d;
            self.focus[j] = self.focus[j + 1];
            self.focus[j + 1] = j + 1;
        }
        Some((j, d))
    }
}

const LSB: u64 = 0x0101_0101_0101_0101;

#[inline(always)]
fn add5_word(a: u64, b: u64) -> u64 {
    let t = a + b;
    let m = t.wrapping_add(0x0303_0303_0303_0303) & 0x0808_0808_0808_0808;
    t - ((m >> 1) | (m >> 3))
}

#[inline(always)]
fn add5<const W: usize>(a: &mut [u64; W], b: &[u64; W]) {
    for i in 0..W {
        a[i] = add5_word(a[i], b[i]);
    }
}

/// (nonzero coordinate count, Lee-weight-2 coordinate count).
#[inline(always)]
fn lee_counts<const W: usize>(a: &[u64; W]) -> (u32, u32) {
    let mut nonzero = 0u64;
    let mut twos = 0u64;
    for i in 0..W {
        let v = a[i];
        nonzero += (((v | (v >> 1) | (v >> 2)) & LSB).wrapping_mul(LSB)) >> 56;
        twos += (((v >> 1) & LSB).wrapping_mul(LSB)) >> 56;
    }
    (nonzero as u32, twos as u32)
}

fn census_block<const W: usize>(plan: &Plan, block: usize) -> Vec<u64> {
    let np1 = plan.n + 1;
    let mut table = vec![0u64; np1 * np1];
    let mut cur = plan.start::<W>(block);
    let rows = plan.rows::<W>();
    let record = |word: &[u64; W], table: &mut [u64]| {
        let (nonzero, twos) = lee_counts::<W>(word);
        let n1 = (nonzero - twos) as usize;
        table[n1 * np1 + twos as usize] += 1;
    };
    record(&cur, &mut table);
    let mut gray = GrayCounter::new(plan.inner_k);
    while let Some((j, d)) = gray.next() {
        let row = if d > 0 { &rows[j].0 } else { &rows[j].1 };
        add5::<W>(&mut cur, row);
        record(&cur, &mut table);
    }
    table
}

/// Steps between checks of the shared stop flag.
const STOP_CHECK_MASK: u64 = (1 << 16) - 1;

fn min_block<const W: usize>(
    plan: &Plan,
    block: usize,
    exit_below: u32,
    stop: &AtomicBool,
) -> u32 {
    let mut cur = plan.start::<W>(block);
    let rows = plan.rows::<W>();
    let mut min = u32::MAX;
    let consider = |word: &[u64; W], min: &mut u32| {
        let (nonzero, _) = lee_counts::<W>(word);
        if nonzero > 0 && nonzero < *min {
            *min = nonzero;
        }
    };
    consider(&cur, &mut min);
    if min <= exit_below {
        stop.store(true, Ordering::Relaxed);
        return min;
    }
    let mut gray = GrayCounter::new(plan.inner_k);
    let mut step = 0u64;
    while let Some((j, d)) = gray.next() {
        let row = if d > 0 { &rows[j].0 } else { &rows[j].1 };
        add5::<W>(&mut cur, row);
        consider(&cur, &mut min);
        if min <= exit_below {
            stop.store(true, Ordering::Relaxed);
            return min;
        }
        step += 1;
        if step & STOP_CHECK_MASK == 0 && stop.load(Ordering::Relaxed) {
            return min;
        }
    }
    min
}

fn witness_block<const W: usize>(
    plan: &Plan,
    block: usize,
    weight: u32,
    best_block: &AtomicUsize,
) -> Option<Vec<u8>> {
    let mut cur = plan.start::<W>(block);
    let rows = plan.rows::<W>();
    let unpack = |word: &[u64; W]| -> Vec<u8> {
        (0..plan.n).map(|i| ((word[i / 8] >> (8 * (i % 8))) & 0xff) as u8).collect()
    };
    if lee_counts::<W>(&cur).0 == weight {
        best_block.fetch_min(block, Ordering::Relaxed);
        return Some(unpack(&cur));
    }
    let mut gray = GrayCounter::new(plan.inner_k);
    let mut step = 0u64;
    while let Some((j, d)) = gray.next() {
        let row = if d > 0 { &rows[j].0 } else { &rows[j].1 };
        add5::<W>(&mut cur, row);
        if lee_counts::<W>(&cur).0 == weight {
            best_block.fetch_min(block, Ordering::Relaxed);
            return Some(unpack(&cur));
        }
        step += 1;
        // a lower block already found a witness; ours would be discarded
        if step & STOP_CHECK_MASK == 0 && best_block.load(Ordering::Relaxed) < block {
            return None;
        }
    }
    None
}
