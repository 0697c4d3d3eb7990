//! Weight enumerators derived from a composition census, and the
//! MacWilliams transform.

use std::collections::BTreeMap;
use std::fmt;

use super::sweep::CompositionTable;
use crate::error::{Error, Result};

/// Sparse bivariate polynomial with nonnegative integer coefficients, keyed
/// by (x exponent, y exponent).
///
/// Hamming enumerators are homogeneous of degree n (term (n-w, w) counts
/// codewords of Hamming weight w). Lee enumerators use x^n0 y^(n1 + 2 n2),
/// which is not homogeneous; both fit this one representation, and the sum
/// of coefficients is the codeword count 5^k either way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightEnumerator {
    terms: BTreeMap<(u32, u32), u64>,
}

impl WeightEnumerator {
    pub fn from_terms(mut terms: BTreeMap<(u32, u32), u64>) -> WeightEnumerator {
        terms.retain(|_, &mut c| c > 0);
        WeightEnumerator { terms }
    }

    /// Coefficient of x^xe y^ye (0 when absent).
    pub fn coefficient(&self, xe: u32, ye: u32) -> u64 {
        self.terms.get(&(xe, ye)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), u64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    /// Sum of all coefficients; equals 5^k for an enumerator of a census.
    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }

    /// True iff every term has x exponent + y exponent = n.
    pub fn is_homogeneous(&self, n: u32) -> bool {
        self.terms.keys().all(|&(xe, ye)| xe + ye == n)
    }

    /// Largest total degree across terms (0 if empty).
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|&(xe, ye)| xe + ye).max().unwrap_or(0)
    }
}

impl fmt::Display for WeightEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // ascending y exponent, then descending x, reads min-weight first
        let mut ordered: Vec<((u32, u32), u64)> = self.terms().collect();
        ordered.sort_by_key(|&((xe, ye), _)| (ye, std::cmp::Reverse(xe)));
        for (i, ((xe, ye), c)) in ordered.into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            if c != 1 || (xe == 0 && ye == 0) {
                factors.push(c.to_string());
            }
            for (name, e) in [("x", xe), ("y", ye)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Hamming enumerator: term x^(n-w) y^w counts codewords of Hamming weight w.
pub fn hamming_enumerator(table: &CompositionTable) -> WeightEnumerator {
    let n = table.length() as u32;
    let mut terms = BTreeMap::new();
    for ((_, n1, n2), c) in table.entries() {
        let w = (n1 + n2) as u32;
        *terms.entry((n - w, w)).or_insert(0) += c;
    }
    WeightEnumerator::from_terms(terms)
}

/// Lee enumerator: term x^n0 y^(n1 + 2 n2) counts codewords by zero-count
/// and total Lee weight.
pub fn lee_enumerator(table: &CompositionTable) -> WeightEnumerator {
    let mut terms = BTreeMap::new();
    for ((n0, n1, n2), c) in table.entries() {
        *terms.entry((n0 as u32, (n1 + 2 * n2) as u32)).or_insert(0) += c;
    }
    WeightEnumerator::from_terms(terms)
}

/// Euclidean weight census: map from n1 + 4 n2 (squared minimal lift sum)
/// to codeword count.
pub fn euclidean_weight_census(table: &CompositionTable) -> BTreeMap<u32, u64> {
    let mut census = BTreeMap::new();
    for ((_, n1, n2), c) in table.entries() {
        *census.entry((n1 + 4 * n2) as u32).or_insert(0) += c;
    }
    census
}

/// MacWilliams transform p^(-k) W(x + (p-1)y, x - y) of a homogeneous
/// enumerator, with exact integer output.
///
/// Fails when any output coefficient is not a nonnegative integer, which
/// signals that W is not the Hamming enumerator of a p-ary code with p^k
/// words.
pub fn macwilliams_transform(
    w: &WeightEnumerator,
    k: usize,
    p: u32,
) -> Result<WeightEnumerator> {
    let n = w.degree();
    if !w.is_homogeneous(n) {
        return Err(Error::DimensionMismatch(
            "MacWilliams transform requires a homogeneous enumerator".into(),
        ));
    }
    let nu = n as usize;
    // Pascal's triangle in i128; intermediates stay far below i128 range
    // for n <= 64 and the codeword counts this crate produces.
    let mut binom = vec![vec![0i128; nu + 1]; nu + 1];
    for (r, row) in binom.iter_mut().enumerate() {
        row[0] = 1;
        for c in 1..=r {
            row[c] = row[c - 1] * (r as i128 - c as i128 + 1) / c as i128;
        }
    }
    // coefficient of y^j in (x + (p-1)y)^(n-w) (x - y)^w, summed over terms
    let mut out = vec![0i128; nu + 1];
    for ((_, ye), coeff) in w.terms() {
        let wt = ye as usize;
        // (p-1)^i table for i <= n - wt
        let mut pw = vec![1i128; nu - wt + 1];
        for i in 1..=nu - wt {
            pw[i] = pw[i - 1] * (p as i128 - 1);
        }
        for i in 0..=nu - wt {
            for l in 0..=wt {
                let sign = if l % 2 == 0 { 1 } else { -1 };
                out[i + l] += coeff as i128 * binom[nu - wt][i] * pw[i] * binom[wt][l] * sign;
            }
        }
    }
    let divisor = (p as i128).pow(k as u32);
    let mut terms = BTreeMap::new();
    for (j, &v) in out.iter().enumerate() {
        if v == 0 {
            continue;
        }
        if v % divisor != 0 || v < 0 {
            return Err(Error::NonIntegerCoefficient((n - j as u32, j as u32)));
        }
        terms.insert((n - j as u32, j as u32), u64::try_from(v / divisor).map_err(|_| Error::Overflow)?);
    }
    Ok(WeightEnumerator::from_terms(terms))
}
