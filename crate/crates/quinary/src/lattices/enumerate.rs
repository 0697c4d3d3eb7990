//! Short-vector enumeration, minimum norm, kissing number, theta series.
//!
//! Enumeration is Fincke-Pohst on the LLL-reduced Gram matrix. Floating
//! point appears only in the pruning radii, widened by a relative slack of
//! 2^-20 so rounding can never discard a vector inside the bound; every
//! surviving candidate is re-checked with exact i128 arithmetic against the
//! integer Gram matrix before it is reported. Results are therefore exact.
//!
//! One representative per antipodal pair {v, -v} is kept, the one whose
//! highest-index nonzero coefficient is positive. Counts include both signs.

use std::collections::BTreeMap;

use crate::algebra::ZMatrix;
use crate::error::{Error, Result};
use crate::par;

use super::GramLattice;

/// Relative widening of the pruning bound; rounding noise in the float
/// Cholesky data is many orders of magnitude smaller.
const SLACK: f64 = 1.0 / (1u64 << 20) as f64;
const FUZZ: f64 = 1e-9;

/// All lattice vectors with 0 < norm <= bound, one per antipodal pair.
/// Coefficients are relative to the lattice's own basis rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortVectorReport {
    bound: i64,
    vectors: Vec<(Vec<i64>, i64)>,
    counts_by_norm: BTreeMap<i64, u64>,
}

impl ShortVectorReport {
    pub fn bound(&self) -> i64 {
        self.bound
    }

    /// Representatives in (norm, coefficient-lex) order with exact norms.
    pub fn vectors(&self) -> &[(Vec<i64>, i64)] {
        &self.vectors
    }

    /// Full vector counts per norm; every value is even because antipodal
    /// pairs are counted whole.
    pub fn counts_by_norm(&self) -> &BTreeMap<i64, u64> {
        &self.counts_by_norm
    }

    pub fn count_at(&self, norm: i64) -> u64 {
        self.counts_by_norm.get(&norm).copied().unwrap_or(0)
    }

    /// Total number of nonzero vectors inside the bound, both signs.
    pub fn total_vectors(&self) -> u64 {
        self.counts_by_norm.values().sum()
    }
}

struct FormData {
    n: usize,
    // Q(x) = sum_i q[i] * (x_i + sum_{j>i} m[i][j] x_j)^2
    q: Vec<f64>,
    m: Vec<Vec<f64>>,
    gram: Vec<i64>,
}

impl FormData {
    fn new(reduced: &ZMatrix) -> Result<FormData> {
        let n = reduced.rows();
        let mut a = vec![vec![0f64; n]; n];
        for r in 0..n {
            for c in r..n {
                a[r][c] = reduced.get(r, c) as f64;
            }
        }
        let mut q = vec![0f64; n];
        let mut m = vec![vec![0f64; n]; n];
        for i in 0..n {
            q[i] = a[i][i];
            if q[i] <= 0.0 {
                return Err(Error::NotPositiveDefinite);
            }
            for j in i + 1..n {
                m[i][j] = a[i][j] / q[i];
            }
            for j in i + 1..n {
                for l in j..n {
                    a[j][l] -= m[i][j] * a[i][l];
                }
            }
        }
        let gram = (0..n)
            .flat_map(|r| (0..n).map(move |c| (r, c)))
            .map(|(r, c)| reduced.get(r, c))
            .collect();
        Ok(FormData { n, q, m, gram })
    }

    fn exact_norm(&self, x: &[i64]) -> i64 {
        let mut acc: i128 = 0;
        for i in 0..self.n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                acc += x[i] as i128 * x[j] as i128 * self.gram[i * self.n + j] as i128;
            }
        }
        i64::try_from(acc).expect("norm fits i64 for in-bound vectors")
    }

    /// Enumerate levels `0..=lvl` given fixed upper coordinates in x.
    /// `upper_zero` is true while every coordinate above lvl is zero, which
    /// pins the canonical sign choice. `budget` is what remains of the
    /// widened bound after the upper levels.
    fn descend(
        &self,
        lvl: isize,
        budget: f64,
        upper_zero: bool,
        x: &mut [i64],
        bound: i64,
        out: &mut Vec<(Vec<i64>, i64)>,
    ) {
        if lvl < 0 {
            if !upper_zero {
                let norm = self.exact_norm(x);
                if norm > 0 && norm <= bound {
                    out.push((x.to_vec(), norm));
                }
            }
            return;
        }
        let i = lvl as usize;
        let mut center = 0f64;
        for j in i + 1..self.n {
            center += self.m[i][j] * x[j] as f64;
        }
        let radius = (budget.max(0.0) / self.q[i]).sqrt();
        let mut lo = (-center - radius - FUZZ).ceil() as i64;
        let hi = (-center + radius + FUZZ).floor() as i64;
        if upper_zero {
            lo = lo.max(0);
        }
        for v in lo..=hi {
            x[i] = v;
            let step = v as f64 + center;
            let rest = budget - self.q[i] * step * step;
            if rest < -FUZZ {
                continue;
            }
            self.descend(lvl - 1, rest, upper_zero && v == 0, x, bound, out);
        }
        x[i] = 0;
    }
}

/// Enumerate all vectors with 0 < norm <= bound.
///
/// The Gram matrix is LLL-reduced first; reported coefficients are mapped
/// back to the lattice's original basis. The top enumeration level is split
/// into independent tasks; results are merged and sorted canonically, so
/// the report never depends on scheduling.
pub fn short_vectors(lattice: &GramLattice, bound: i64) -> Result<ShortVectorReport> {
    if bound < 0 {
        return Err(Error::DimensionMismatch(format!("negative norm bound {bound}")));
    }
    let n = lattice.dim();
    if n == 0 || bound == 0 {
        return Ok(ShortVectorReport { bound, vectors: Vec::new(), counts_by_norm: BTreeMap::new() });
    }
    let (reduced, u) = lattice.lll_reduce(super::LLL_DELTA_DEFAULT)?;
    let form = FormData::new(reduced.gram())?;
    let widened = bound as f64 * (1.0 + SLACK) + FUZZ;

    let top = n - 1;
    let hi = ((widened / form.q[top]).sqrt() + FUZZ).floor() as i64;
    let tasks = (hi + 1) as usize;
    let found = par::run_indexed(tasks, |t| {
        let v = t as i64;
        let mut x = vec![0i64; n];
        x[top] = v;
        let mut out = Vec::new();
        let rest = widened - form.q[top] * (v as f64) * (v as f64);
        if rest >= -FUZZ {
            form.descend(top as isize - 1, rest, v == 0, &mut x, bound, &mut out);
        }
        out
    });

    let mut vectors = Vec::new();
    for (coeffs, norm) in found.into_iter().flatten() {
        vectors.push((map_through(&coeffs, &u), norm));
    }
    vectors.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    let mut counts_by_norm = BTreeMap::new();
    for (_, norm) in &vectors {
        *counts_by_norm.entry(*norm).or_insert(0u64) += 2;
    }
    Ok(ShortVectorReport { bound, vectors, counts_by_norm })
}

/// Coefficients in the reduced basis -> coefficients in the original basis:
/// row vector times the reduction transform.
fn map_through(x: &[i64], u: &ZMatrix) -> Vec<i64> {
    let n = u.cols();
    let mut out = vec![0i64; n];
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        for (j, slot) in out.iter_mut().enumerate() {
            *slot += xi * u.get(i, j);
        }
    }
    out
}

/// Smallest norm of a nonzero lattice vector.
///
/// The minimum never exceeds the smallest diagonal entry of the LLL-reduced
/// Gram matrix (that entry is itself a vector norm), so enumerating up to it
/// must find something.
pub fn minimum_norm(lattice: &GramLattice) -> Result<i64> {
    if lattice.dim() == 0 {
        return Err(Error::DimensionMismatch("minimum norm of a rank-0 lattice".into()));
    }
    let (reduced, _) = lattice.lll_reduce(super::LLL_DELTA_DEFAULT)?;
    let cap = (0..reduced.dim()).map(|i| reduced.gram().get(i, i)).min().expect("dim > 0");
    let report = short_vectors(lattice, cap)?;
    report
        .counts_by_norm()
        .keys()
        .next()
        .copied()
        .ok_or_else(|| Error::DimensionMismatch("enumeration found no vectors".into()))
}

/// Number of lattice vectors of minimal norm (both signs).
pub fn kissing_number(lattice: &GramLattice) -> Result<u64> {
    let min = minimum_norm(lattice)?;
    let report = short_vectors(lattice, min)?;
    Ok(report.count_at(min))
}

/// Coefficients a_0..a_max of the theta series: a_m counts lattice vectors
/// of norm m, with a_0 = 1 for the zero vector.
pub fn theta_series(lattice: &GramLattice, max_norm: i64) -> Result<Vec<u64>> {
    if max_norm < 0 {
        return Err(Error::DimensionMismatch(format!("negative theta truncation {max_norm}")));
    }
    let report = short_vectors(lattice, max_norm)?;
    let mut a = vec![0u64; max_norm as usize + 1];
    a[0] = 1;
    for (norm, count) in report.counts_by_norm() {
        a[*norm as usize] = *count;
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::super::{dn, dn_plus, zn, GramLattice};
    use super::*;
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    /// Independent oracle: brute-force box enumeration. Coefficient i is
    /// confined to x_i^2 <= bound * (G^{-1})_ii, a standard consequence of
    /// positive definiteness, computed exactly via cofactors.
    fn box_counts(gram: &ZMatrix, bound: i64) -> BTreeMap<i64, u64> {
        let n = gram.rows();
        let det = gram.det().unwrap();
        let mut radius = vec![0i64; n];
        for i in 0..n {
            let minor = delete_row_col(gram, i).det().unwrap();
            // largest r with r^2 * det <= bound * minor
            let cap = BigInt::from(bound) * minor;
            let mut r = 0i64;
            while BigInt::from((r + 1) * (r + 1)) * &det <= cap {
                r += 1;
            }
            radius[i] = r;
        }
        let mut counts = BTreeMap::new();
        let mut x = vec![0i64; n];
        for i in 0..n {
            x[i] = -radius[i];
        }
        loop {
            let mut norm: i128 = 0;
            for i in 0..n {
                for j in 0..n {
                    norm += x[i] as i128 * x[j] as i128 * gram.get(i, j) as i128;
                }
            }
            if norm > 0 && norm <= bound as i128 {
                *counts.entry(norm.to_i64().unwrap()).or_insert(0u64) += 1;
            }
            // odometer
            let mut i = 0;
            loop {
                if i == n {
                    return counts;
                }
                if x[i] < radius[i] {
                    x[i] += 1;
                    break;
                }
                x[i] = -radius[i];
                i += 1;
            }
        }
    }

    fn delete_row_col(m: &ZMatrix, k: usize) -> ZMatrix {
        let n = m.rows();
        let mut entries = Vec::with_capacity((n - 1) * (n - 1));
        for r in 0..n {
            if r == k {
                continue;
            }
            for c in 0..n {
                if c == k {
                    continue;
                }
                entries.push(m.get(r, c));
            }
        }
        ZMatrix::new(n - 1, n - 1, entries).unwrap()
    }

    fn assert_matches_box(l: &GramLattice, bound: i64) {
        let report = short_vectors(l, bound).unwrap();
        let oracle = box_counts(l.gram(), bound);
        assert_eq!(report.counts_by_norm(), &oracle);
        let total: u64 = oracle.values().sum();
        assert_eq!(report.vectors().len() as u64 * 2, total);
    }

    #[test]
    fn z2_unit_vectors() {
        let report = short_vectors(&zn(2), 1).unwrap();
        assert_eq!(report.count_at(1), 4);
        assert_eq!(report.vectors().len(), 2);
        // canonical representatives: highest-index nonzero coefficient positive
        for (v, _) in report.vectors() {
            let last = v.iter().rev().find(|&&c| c != 0).unwrap();
            assert!(*last > 0);
        }
    }

    #[test]
    fn z1_theta() {
        assert_eq!(theta_series(&zn(1), 5).unwrap(), vec![1, 2, 0, 0, 2, 0]);
    }

    #[test]
    fn z2_theta_is_square_of_z1() {
        // multiplicativity over direct sums, checked numerically
        assert_eq!(theta_series(&zn(2), 4).unwrap(), vec![1, 4, 4, 0, 4]);
    }

    #[test]
    fn d4_minimum_and_kissing() {
        let l = dn(4).unwrap();
        assert_eq!(minimum_norm(&l).unwrap(), 2);
        assert_eq!(kissing_number(&l).unwrap(), 24);
    }

    #[test]
    fn e8_minimum_and_kissing() {
        let l = dn_plus(8).unwrap();
        assert_eq!(minimum_norm(&l).unwrap(), 2);
        assert_eq!(kissing_number(&l).unwrap(), 240);
    }

    #[test]
    fn agrees_with_box_oracle_on_named_lattices() {
        assert_matches_box(&zn(3), 4);
        assert_matches_box(&dn(3).unwrap(), 4);
        assert_matches_box(&dn(4).unwrap(), 6);
        assert_matches_box(&dn_plus(4).unwrap(), 3);
    }

    #[test]
    fn agrees_with_box_oracle_on_random_forms() {
        use num_traits::Zero;
        let mut rng = StdRng::seed_from_u64(23);
        let mut done = 0;
        while done < 10 {
            let n = rng.random_range(2..=4);
            let mut b = ZMatrix::identity(n);
            for r in 0..n {
                for c in 0..n {
                    if r != c {
                        b.set(r, c, rng.random_range(-3..=3));
                    }
                }
            }
            if b.det().unwrap().is_zero() {
                continue;
            }
            let g = b.mul(&b.transpose()).unwrap();
            let l = GramLattice::new(g).unwrap();
            let bound = rng.random_range(1..=5);
            assert_matches_box(&l, bound);
            done += 1;
        }
    }

    #[test]
    fn coefficients_are_in_the_original_basis() {
        // gram [[1,2],[2,5]] with ambient rows (1,2), (0,5) at scale 5:
        // reported coefficients must reproduce vectors of the stated norm
        // through the *original* gram, not the reduced one.
        let b = ZMatrix::new(2, 2, vec![1, 2, 0, 5]).unwrap();
        let l = GramLattice::from_ambient_basis(b, 5).unwrap();
        let report = short_vectors(&l, 2).unwrap();
        assert_eq!(report.count_at(1), 4);
        for (x, norm) in report.vectors() {
            let mut acc = 0i64;
            for i in 0..2 {
                for j in 0..2 {
                    acc += x[i] * x[j] * l.gram().get(i, j);
                }
            }
            assert_eq!(acc, *norm);
        }
    }

    #[test]
    fn zero_bound_and_zero_rank() {
        let empty = short_vectors(&zn(3), 0).unwrap();
        assert!(empty.vectors().is_empty());
        assert!(minimum_norm(&GramLattice::new(ZMatrix::new(0, 0, vec![]).unwrap()).unwrap()).is_err());
    }

    #[test]
    fn counts_are_even() {
        let report = short_vectors(&dn(5).unwrap(), 6).unwrap();
        assert!(report.counts_by_norm().values().all(|c| c % 2 == 0));
        assert_eq!(report.total_vectors() % 2, 0);
    }
}
