//! Dense matrices over a small prime field F_p, with exact row reduction.
//!
//! Entries are canonical residues `0..p`. Only odd primes up to 31 are
//! accepted; inverses come from a per-call table, so the hot paths stay
//! branch-free.

use crate::error::{Error, Result};

pub const SUPPORTED_PRIMES: [u8; 10] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

/// Matrix over F_p with entries stored as canonical residues.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u8,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

/// Result of reduced row echelon form: the canonical matrix, its rank and
/// the pivot column of each nonzero row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: FpMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl FpMatrix {
    pub fn new(p: u8, rows: usize, cols: usize, entries: Vec<i64>) -> Result<Self> {
        if !SUPPORTED_PRIMES.contains(&p) {
            return Err(Error::BadModulus(p as u32));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        let p64 = p as i64;
        let data = entries.iter().map(|&e| e.rem_euclid(p64) as u8).collect();
        Ok(Self { p, rows, cols, data })
    }

    pub fn zero(p: u8, rows: usize, cols: usize) -> Result<Self> {
        Self::new(p, rows, cols, vec![0; rows * cols])
    }

    pub fn identity(p: u8, n: usize) -> Result<Self> {
        let mut m = Self::zero(p, n, n)?;
        for i in 0..n {
            m.set(i, i, 1);
        }
        Ok(m)
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        debug_assert!(v < self.p);
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[u8]> {
        self.data.chunks(self.cols.max(1)).take(self.rows)
    }

    /// Stack rows of `self` on top of rows of `other`.
    pub fn vstack(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.p != other.p || self.cols != other.cols {
            return Err(Error::DimensionMismatch(
                "vstack requires equal p and column count".into(),
            ));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FpMatrix {
            p: self.p,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix {
            p: self.p,
            rows: self.cols,
            cols: self.rows,
            data: vec![0; self.data.len()],
        };
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.p != other.p || self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p as u32;
        let mut out = FpMatrix::zero(self.p, self.rows, other.cols)?;
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc: u32 = 0;
                for k in 0..self.cols {
                    acc += self.get(r, k) as u32 * other.get(k, c) as u32;
                }
                out.set(r, c, (acc % p) as u8);
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&e| e == 0)
    }

    /// Multiplicative inverse table: `inv[a]` for `a` in `1..p`.
    pub(crate) fn inverse_table(p: u8) -> [u8; 32] {
        let mut inv = [0u8; 32];
        for a in 1..p {
            for b in 1..p {
                if (a as u16 * b as u16) % p as u16 == 1 {
                    inv[a as usize] = b;
                    break;
                }
            }
        }
        inv
    }

    /// Reduced row echelon form. Pure; the receiver is untouched.
    pub fn rref(&self) -> Rref {
        let p = self.p as u16;
        let inv = Self::inverse_table(self.p);
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pivot_row) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if pivot_row != row {
                for c in 0..m.cols {
                    let a = m.get(row, c);
                    m.set(row, c, m.get(pivot_row, c));
                    m.set(pivot_row, c, a);
                }
            }
            let scale = inv[m.get(row, col) as usize] as u16;
            for c in col..m.cols {
                m.set(row, c, ((m.get(row, c) as u16 * scale) % p) as u8);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col) as u16;
                if factor == 0 {
                    continue;
                }
                for c in col..m.cols {
                    let w = (m.get(r, c) as u16 + (p - factor) * m.get(row, c) as u16) % p;
                    m.set(r, c, w as u8);
                }
            }
            pivots.push(col);
            row += 1;
        }
        let rank = row;
        Rref { matrix: m, rank, pivots }
    }

    /// Basis of the right kernel {v : M v^T = 0}, one basis vector per row.
    /// Row count is cols - rank.
    pub fn kernel_basis(&self) -> FpMatrix {
        let p = self.p;
        let red = self.rref();
        let pivots = &red.pivots;
        let r = &red.matrix;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = FpMatrix {
            p,
            rows: free.len(),
            cols: self.cols,
            data: vec![0; free.len() * self.cols],
        };
        for (i, &f) in free.iter().enumerate() {
            basis.set(i, f, 1);
            for (j, &pc) in pivots.iter().enumerate() {
                let v = r.get(j, f);
                if v != 0 {
                    basis.set(i, pc, p - v);
                }
            }
        }
        basis
    }
}

impl std::fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for row in self.rows_iter() {
            let line: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u8, rows: usize, cols: usize, e: &[i64]) -> FpMatrix {
        FpMatrix::new(p, rows, cols, e.to_vec()).unwrap()
    }

    #[test]
    fn rejects_non_prime_modulus() {
        assert!(FpMatrix::new(4, 1, 1, vec![0]).is_err());
        assert!(FpMatrix::new(2, 1, 1, vec![0]).is_err());
        assert!(FpMatrix::new(37, 1, 1, vec![0]).is_err());
    }

    #[test]
    fn entries_are_canonical_residues() {
        let a = m(5, 1, 3, &[-1, 7, 10]);
        assert_eq!(a.row(0), &[4, 2, 0]);
    }

    #[test]
    fn rref_identity_is_fixed() {
        let id = FpMatrix::identity(5, 2).unwrap();
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
    }

    #[test]
    fn rref_drops_dependent_row() {
        let a = m(5, 2, 2, &[1, 2, 2, 4]);
        let r = a.rref();
        assert_eq!(r.matrix, m(5, 2, 2, &[1, 2, 0, 0]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn rref_orders_pivot_rows() {
        let a = m(5, 2, 3, &[0, 1, 3, 1, 0, 2]);
        let r = a.rref();
        assert_eq!(r.matrix, m(5, 2, 3, &[1, 0, 2, 0, 1, 3]));
        assert_eq!(r.rank, 2);
        // oracle: the reduced rows still span the original rows
        let back = m(5, 2, 2, &[0, 1, 1, 0]).mul(&r.matrix).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let id = FpMatrix::identity(5, 3).unwrap();
        let k = id.kernel_basis();
        assert_eq!(k.rows(), 0);
    }

    #[test]
    fn kernel_of_self_orthogonal_row() {
        let a = m(5, 1, 2, &[1, 2]);
        let k = a.kernel_basis();
        assert_eq!(k.rows(), 1);
        // exhaustively check all 5 multiples of the kernel row against M v^T = 0
        for s in 0..5u16 {
            let dot = (a.get(0, 0) as u16 * k.get(0, 0) as u16 * s
                + a.get(0, 1) as u16 * k.get(0, 1) as u16 * s)
                % 5;
            assert_eq!(dot, 0);
        }
        // and the kernel equals the span of (1,2) itself
        assert_eq!(k.rref().matrix, m(5, 1, 2, &[1, 2]));
    }

    #[test]
    fn kernel_of_zero_matrix_is_full() {
        let a = m(5, 1, 3, &[0, 0, 0]);
        let k = a.kernel_basis();
        assert_eq!(k, FpMatrix::identity(5, 3).unwrap());
    }

    #[test]
    fn rref_is_idempotent() {
        let a = m(5, 3, 4, &[2, 3, 0, 1, 4, 4, 1, 0, 1, 2, 3, 4]);
        let once = a.rref().matrix;
        let twice = once.rref().matrix;
        assert_eq!(once, twice);
    }

    #[test]
    fn kernel_rank_nullity() {
        let a = m(7, 2, 5, &[1, 2, 3, 4, 5, 2, 4, 6, 1, 3]);
        let r = a.rref();
        let k = a.kernel_basis();
        assert_eq!(r.rank + k.rows(), a.cols());
        let prod = a.mul(&k.transpose()).unwrap();
        assert!(prod.is_zero());
    }
}
