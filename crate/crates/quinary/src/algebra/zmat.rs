//! Exact integer matrices: Hermite normal form, membership solves and
//! fraction-free determinants.
//!
//! Entries are checked 64-bit integers; arithmetic never silently wraps.
//! HNF and the solver run a checked-i64 fast path and transparently retry
//! with arbitrary precision when an intermediate value leaves the i64 range.
//!
//! The HNF convention used everywhere in this crate is row-style and
//! upper-triangular: pivots positive, entries above a pivot reduced to
//! `[0, pivot)`, zero rows removed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix with exact (overflow-checked) arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl ZMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self { rows, cols, data: entries })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[i64]> {
        self.data.chunks(self.cols.max(1)).take(self.rows)
    }

    pub fn vstack(&self, other: &ZMatrix) -> Result<ZMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(
                "vstack requires equal column count".into(),
            ));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(ZMatrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn transpose(&self) -> ZMatrix {
        let mut t = ZMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Exact product with overflow checking.
    pub fn mul(&self, other: &ZMatrix) -> Result<ZMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ZMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc: i64 = 0;
                for k in 0..self.cols {
                    let term = self
                        .get(r, k)
                        .checked_mul(other.get(k, c))
                        .ok_or(Error::Overflow)?;
                    acc = acc.checked_add(term).ok_or(Error::Overflow)?;
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    /// Block-diagonal stacking: `self` in the upper left, `other` lower right.
    pub fn block_diag(&self, other: &ZMatrix) -> ZMatrix {
        let mut out = ZMatrix::zero(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.get(r, c));
            }
        }
        out
    }

    /// Row-style upper-triangular Hermite normal form, zero rows removed.
    pub fn hnf(&self) -> Result<ZMatrix> {
        Ok(self.hnf_with_transform()?.0)
    }

    /// HNF together with a unimodular transform `U` (square, det ±1) such
    /// that `U * self` equals the HNF padded with the zero rows that were
    /// removed. The returned transform has `self.rows()` rows.
    pub fn hnf_with_transform(&self) -> Result<(ZMatrix, ZMatrix)> {
        match hnf_generic::<i64>(self.rows, self.cols, &self.data) {
            Ok((h, u, rank)) => Ok((
                ZMatrix::new(rank, self.cols, h)?,
                ZMatrix::new(self.rows, self.rows, u)?,
            )),
            Err(Error::Overflow) => {
                let big: Vec<BigInt> = self.data.iter().map(|&v| BigInt::from(v)).collect();
                let (h, u, rank) = hnf_generic::<BigInt>(self.rows, self.cols, &big)?;
                Ok((
                    ZMatrix::new(rank, self.cols, downcast(&h)?)?,
                    ZMatrix::new(self.rows, self.rows, downcast(&u)?)?,
                ))
            }
            Err(e) => Err(e),
        }
    }

    /// Solve `c * self = target` over the integers.
    ///
    /// Rows of `self` must be linearly independent. Returns the exact
    /// coefficient vector when `target` lies in the row lattice, `None`
    /// otherwise.
    pub fn solve_integer(&self, target: &[i64]) -> Result<Option<Vec<i64>>> {
        if target.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "target length {} does not match {} columns",
                target.len(),
                self.cols
            )));
        }
        let (h, u) = self.hnf_with_transform()?;
        if h.rows() != self.rows {
            return Err(Error::DependentRows);
        }
        // pivot column of each HNF row
        let mut residual: Vec<BigInt> = target.iter().map(|&v| BigInt::from(v)).collect();
        let mut coeffs_h: Vec<BigInt> = vec![BigInt::zero(); h.rows()];
        for r in 0..h.rows() {
            let pivot_col = (0..h.cols()).find(|&c| h.get(r, c) != 0).expect("nonzero row");
            // columns left of the pivot are zero in rows >= r, so the residual
            // there must already be zero for membership
            let piv = BigInt::from(h.get(r, pivot_col));
            let (q, rem) = residual[pivot_col].div_rem(&piv);
            if !rem.is_zero() {
                return Ok(None);
            }
            for c in 0..h.cols() {
                let sub = &q * BigInt::from(h.get(r, c));
                residual[c] -= sub;
            }
            coeffs_h[r] = q;
        }
        if residual.iter().any(|v| !v.is_zero()) {
            return Ok(None);
        }
        // coefficients relative to the original rows: c = coeffs_h * U
        let mut out = vec![BigInt::zero(); self.rows];
        for j in 0..self.rows {
            let mut acc = BigInt::zero();
            for (r, ch) in coeffs_h.iter().enumerate() {
                acc += ch * BigInt::from(u.get(r, j));
            }
            out[j] = acc;
        }
        Ok(Some(
            out.iter()
                .map(|v| v.to_i64().ok_or(Error::Overflow))
                .collect::<Result<Vec<i64>>>()?,
        ))
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of non-square matrix".into()));
        }
        let mut a: Vec<BigInt> = self.data.iter().map(|&v| BigInt::from(v)).collect();
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                for c in 0..n {
                    a.swap(k * n + c, swap * n + c);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = num / &prev;
                }
                a[i * n + k] = BigInt::zero();
            }
            prev = a[k * n + k].clone();
        }
        let mut det = a[(n - 1) * n + (n - 1)].clone();
        if sign < 0 {
            det = -det;
        }
        Ok(det)
    }

    /// Leading principal minors det(A[..k, ..k]) for k = 1..=n of a symmetric
    /// matrix, or an error if any minor is not positive.
    ///
    /// Bareiss pivots are exactly these minors, so positive definiteness is
    /// certified by a single elimination pass.
    pub fn positive_definite_minors(&self) -> Result<Vec<BigInt>> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("minors of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a: Vec<BigInt> = self.data.iter().map(|&v| BigInt::from(v)).collect();
        let mut minors = Vec::with_capacity(n);
        let mut prev = BigInt::one();
        for k in 0..n {
            if !a[k * n + k].is_positive() {
                return Err(Error::NotPositiveDefinite);
            }
            minors.push(a[k * n + k].clone());
            if k == n - 1 {
                break;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = num / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        Ok(minors)
    }
}

impl std::fmt::Display for ZMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for row in self.rows_iter() {
            let line: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

fn downcast(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter().map(|x| x.to_i64().ok_or(Error::Overflow)).collect()
}

/// Ring element usable by the generic HNF core. i64 reports overflow,
/// BigInt never fails.
trait HnfInt: Clone + PartialEq + Ord {
    fn zero_of() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero_v(&self) -> bool;
    fn is_negative_v(&self) -> bool;
    fn neg_checked(&self) -> Result<Self>;
    fn sub_mul(&self, q: &Self, other: &Self) -> Result<Self>;
    /// Euclidean quotient: self = q * d + r with 0 <= r < |d|.
    fn div_euclid_by(&self, d: &Self) -> Self;
    fn abs_val(&self) -> Self;
}

impl HnfInt for i64 {
    fn zero_of() -> Self {
        0
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero_v(&self) -> bool {
        *self == 0
    }
    fn is_negative_v(&self) -> bool {
        *self < 0
    }
    fn neg_checked(&self) -> Result<Self> {
        self.checked_neg().ok_or(Error::Overflow)
    }
    fn sub_mul(&self, q: &Self, other: &Self) -> Result<Self> {
        q.checked_mul(*other)
            .and_then(|t| self.checked_sub(t))
            .ok_or(Error::Overflow)
    }
    fn div_euclid_by(&self, d: &Self) -> Self {
        self.div_euclid(*d)
    }
    fn abs_val(&self) -> Self {
        self.abs()
    }
}

impl HnfInt for BigInt {
    fn zero_of() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero_v(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative_v(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg_checked(&self) -> Result<Self> {
        Ok(-self.clone())
    }
    fn sub_mul(&self, q: &Self, other: &Self) -> Result<Self> {
        Ok(self - q * other)
    }
    fn div_euclid_by(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        if Signed::is_negative(&r) {
            if Signed::is_negative(d) {
                q + 1
            } else {
                q - 1
            }
        } else {
            q
        }
    }
    fn abs_val(&self) -> Self {
        Signed::abs(self)
    }
}

/// Row-style HNF with transform over any exact integer type.
/// Returns (hnf entries with zero rows removed, transform, rank).
fn hnf_generic<T: HnfInt>(
    rows: usize,
    cols: usize,
    entries: &[T],
) -> Result<(Vec<T>, Vec<T>, usize)> {
    let mut h: Vec<T> = entries.to_vec();
    let mut u: Vec<T> = (0..rows * rows)
        .map(|i| {
            if i % rows == i / rows {
                T::from_i64(1)
            } else {
                T::zero_of()
            }
        })
        .collect();
    let idx = |r: usize, c: usize| r * cols + c;
    let uidx = |r: usize, c: usize| r * rows + c;
    let mut row = 0usize;
    for col in 0..cols {
        if row == rows {
            break;
        }
        // gcd phase: shrink entries in this column below `row` until one remains
        loop {
            let mut best: Option<usize> = None;
            for r in row..rows {
                if !h[idx(r, col)].is_zero_v() {
                    best = match best {
                        None => Some(r),
                        Some(b) => {
                            if h[idx(r, col)].abs_val() < h[idx(b, col)].abs_val() {
                                Some(r)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
            }
            let Some(pivot_row) = best else { break };
            if pivot_row != row {
                for c in 0..cols {
                    h.swap(idx(row, c), idx(pivot_row, c));
                }
                for c in 0..rows {
                    u.swap(uidx(row, c), uidx(pivot_row, c));
                }
            }
            if h[idx(row, col)].is_negative_v() {
                for c in 0..cols {
                    h[idx(row, c)] = h[idx(row, c)].neg_checked()?;
                }
                for c in 0..rows {
                    u[uidx(row, c)] = u[uidx(row, c)].neg_checked()?;
                }
            }
            let mut any_below = false;
            for r in row + 1..rows {
                if h[idx(r, col)].is_zero_v() {
                    continue;
                }
                let q = h[idx(r, col)].div_euclid_by(&h[idx(row, col)]);
                for c in 0..cols {
                    h[idx(r, c)] = h[idx(r, c)].sub_mul(&q, &h[idx(row, c)])?;
                }
                for c in 0..rows {
                    u[uidx(r, c)] = u[uidx(r, c)].sub_mul(&q, &u[uidx(row, c)])?;
                }
                if !h[idx(r, col)].is_zero_v() {
                    any_below = true;
                }
            }
            if !any_below {
                break;
            }
        }
        if h[idx(row, col)].is_zero_v() {
            continue;
        }
        // reduce entries above the pivot into [0, pivot)
        for r in 0..row {
            let q = h[idx(r, col)].div_euclid_by(&h[idx(row, col)]);
            if q.is_zero_v() {
                continue;
            }
            for c in 0..cols {
                h[idx(r, c)] = h[idx(r, c)].sub_mul(&q, &h[idx(row, c)])?;
            }
            for c in 0..rows {
                u[uidx(r, c)] = u[uidx(r, c)].sub_mul(&q, &u[uidx(row, c)])?;
            }
        }
        row += 1;
    }
    let rank = row;
    h.truncate(rank * cols);
    Ok((h, u, rank))
}
