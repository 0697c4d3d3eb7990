//! Linear codes over prime fields: duality, weight census, enumerators and
//! randomized self-dual generation.
//!
//! A code is held by its generator matrix in canonical reduced row echelon
//! form, so two [`LinearCode`] values compare equal exactly when they are the
//! same subspace. The heavy operation is [`sweep_compositions`], an
//! exhaustive walk over all 5^k codewords; everything weight-related
//! (enumerators, minimum weights, theta-series input) derives from its
//! composition census.

mod enumerators;
mod random;
mod sweep;

pub use enumerators::{
    euclidean_weight_census, hamming_enumerator, lee_enumerator, macwilliams_transform,
    WeightEnumerator,
};
pub use random::random_self_dual;
pub use sweep::{
    find_codeword_with_hamming_weight, min_hamming_weight_early_exit, sweep_compositions,
    sweep_compositions_unbounded, CompositionTable, MinWeightScan,
};

use crate::algebra::FpMatrix;
use crate::error::{Error, Result};

/// Weight functions on codewords over F5.
///
/// Per coordinate with residue a: Hamming counts a != 0, Lee counts
/// min(a, 5-a), Euclidean counts the squared minimal lift (0, 1 or 4).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    Hamming,
    Lee,
    Euclidean,
}

/// An [n, k] linear code over F_p given by a canonical RREF generator matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    generator: FpMatrix,
}

impl LinearCode {
    /// Canonicalizes an arbitrary spanning matrix: RREF, zero rows dropped.
    pub fn from_generator(m: &FpMatrix) -> LinearCode {
        let r = m.rref();
        let mut entries = Vec::with_capacity(r.rank * m.cols());
        for row in 0..r.rank {
            entries.extend(r.matrix.row(row).iter().map(|&v| v as i64));
        }
        let generator = FpMatrix::new(m.p(), r.rank, m.cols(), entries)
            .expect("rref rows are canonical residues");
        LinearCode { generator }
    }

    pub fn p(&self) -> u8 {
        self.generator.p()
    }

    /// Block length n.
    pub fn len(&self) -> usize {
        self.generator.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.generator.cols() == 0
    }

    /// Dimension k.
    pub fn dim(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &FpMatrix {
        &self.generator
    }

    /// The dual code {v : <v,c> = 0 for all c in C}.
    pub fn dual(&self) -> LinearCode {
        LinearCode::from_generator(&self.generator.kernel_basis())
    }

    /// True iff G·G^T = 0, i.e. C is contained in its dual.
    pub fn is_self_orthogonal(&self) -> bool {
        let gt = self.generator.transpose();
        self.generator
            .mul(&gt)
            .map(|prod| prod.is_zero())
            .unwrap_or(false)
    }

    /// True iff C equals its dual: n = 2k and G·G^T = 0.
    pub fn is_self_dual(&self) -> bool {
        self.len() == 2 * self.dim() && self.is_self_orthogonal()
    }

    /// Coordinate-wise direct sum: generator matrices stacked block-diagonally.
    pub fn direct_sum(&self, other: &LinearCode) -> Result<LinearCode> {
        if self.p() != other.p() {
            return Err(Error::DimensionMismatch(format!(
                "cannot direct-sum codes over F{} and F{}",
                self.p(),
                other.p()
            )));
        }
        let (n1, k1) = (self.len(), self.dim());
        let (n2, k2) = (other.len(), other.dim());
        let mut entries = vec![0i64; (k1 + k2) * (n1 + n2)];
        for r in 0..k1 {
            for c in 0..n1 {
                entries[r * (n1 + n2) + c] = self.generator.get(r, c) as i64;
            }
        }
        for r in 0..k2 {
            for c in 0..n2 {
                entries[(k1 + r) * (n1 + n2) + n1 + c] = other.generator.get(r, c) as i64;
            }
        }
        let m = FpMatrix::new(self.p(), k1 + k2, n1 + n2, entries)?;
        Ok(LinearCode::from_generator(&m))
    }

    /// Membership test: is `word` a codeword?
    pub fn contains(&self, word: &[u8]) -> Result<bool> {
        if word.len() != self.len() {
            return Err(Error::DimensionMismatch(format!(
                "word length {} does not match code length {}",
                word.len(),
                self.len()
            )));
        }
        let w = FpMatrix::new(self.p(), 1, self.len(), word.iter().map(|&v| v as i64).collect())?;
        if self.dim() == 0 {
            return Ok(w.is_zero());
        }
        let stacked = self.generator.vstack(&w)?;
        Ok(stacked.rref().rank == self.dim())
    }

    /// Smallest weight of a nonzero codeword, by exhaustive census.
    pub fn minimum_weight(&self, kind: WeightKind) -> Result<u32> {
        let table = sweep_compositions(self)?;
        table.minimum_weight(kind).ok_or(Error::ZeroCode)
    }
}

/// The Singleton bound n - k + 1 on the minimum weight of any [n, k] code.
pub fn singleton_bound(n: usize, k: usize) -> usize {
    assert!(k <= n, "dimension exceeds length");
    n - k + 1
}

/// Hamming weight of a residue word.
pub fn hamming_weight(word: &[u8]) -> u32 {
    word.iter().filter(|&&v| v != 0).count() as u32
}

/// Lee weight over F5: per coordinate min(a, 5-a).
pub fn lee_weight(word: &[u8]) -> u32 {
    const LEE: [u32; 5] = [0, 1, 2, 2, 1];
    word.iter().map(|&v| LEE[v as usize]).sum()
}

/// Euclidean weight over F5: per coordinate squared minimal lift.
pub fn euclidean_weight(word: &[u8]) -> u32 {
    const EUC: [u32; 5] = [0, 1, 4, 4, 1];
    word.iter().map(|&v| EUC[v as usize]).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(p: u8, rows: usize, cols: usize, e: &[i64]) -> LinearCode {
        LinearCode::from_generator(&FpMatrix::new(p, rows, cols, e.to_vec()).unwrap())
    }

    #[test]
    fn from_generator_canonicalizes() {
        let c = code(5, 1, 2, &[1, 2]);
        assert_eq!((c.len(), c.dim()), (2, 1));
        let c2 = code(5, 2, 4, &[1, 0, 2, 0, 0, 1, 0, 2]);
        assert_eq!((c2.len(), c2.dim()), (4, 2));
        // duplicate row collapses
        let c3 = code(5, 2, 2, &[1, 2, 2, 4]);
        assert_eq!((c3.len(), c3.dim()), (2, 1));
        assert_eq!(c3, c);
    }

    #[test]
    fn dual_of_self_dual_code_is_itself() {
        let c = code(5, 1, 2, &[1, 2]);
        // 1*1 + 2*2 = 5 = 0 mod 5
        assert_eq!(c.dual(), c);
    }

    #[test]
    fn dual_of_zero_code_is_full_space() {
        let zero = code(5, 1, 3, &[0, 0, 0]);
        assert_eq!(zero.dim(), 0);
        let d = zero.dual();
        assert_eq!((d.len(), d.dim()), (3, 3));
    }

    #[test]
    fn dual_is_involution() {
        let c = code(5, 2, 5, &[1, 0, 3, 1, 4, 0, 1, 2, 2, 1]);
        assert_eq!(c.dual().dual(), c);
        assert_eq!(c.dual().dim(), c.len() - c.dim());
    }

    #[test]
    fn self_duality_checks() {
        assert!(code(5, 1, 2, &[1, 2]).is_self_dual());
        assert!(code(5, 2, 4, &[1, 0, 2, 0, 0, 1, 0, 2]).is_self_dual());
        assert!(!code(5, 1, 2, &[1, 1]).is_self_dual());
    }

    #[test]
    fn direct_sum_shapes_and_duality() {
        let c = code(5, 1, 2, &[1, 2]);
        let s = c.direct_sum(&c).unwrap();
        assert_eq!((s.len(), s.dim()), (4, 2));
        assert!(s.is_self_dual());
        assert_eq!(s.dual(), c.dual().direct_sum(&c.dual()).unwrap());
    }

    #[test]
    fn membership() {
        let c = code(5, 1, 2, &[1, 2]);
        assert!(c.contains(&[2, 4]).unwrap());
        assert!(c.contains(&[0, 0]).unwrap());
        assert!(!c.contains(&[1, 0]).unwrap());
        let zero = code(5, 1, 2, &[0, 0]);
        assert!(zero.contains(&[0, 0]).unwrap());
        assert!(!zero.contains(&[1, 0]).unwrap());
    }

    #[test]
    fn singleton_values() {
        assert_eq!(singleton_bound(12, 6), 7);
        assert_eq!(singleton_bound(24, 12), 13);
        assert_eq!(singleton_bound(2, 1), 2);
    }

    #[test]
    fn weight_helpers() {
        assert_eq!(hamming_weight(&[1, 2, 0, 4]), 3);
        assert_eq!(lee_weight(&[1, 2, 0, 4]), 4);
        assert_eq!(euclidean_weight(&[1, 2, 0, 4]), 6);
        assert_eq!(lee_weight(&[3]), 2);
    }

    #[test]
    fn minimum_weight_of_tiny_code() {
        let c = code(5, 1, 2, &[1, 2]);
        assert_eq!(c.minimum_weight(WeightKind::Hamming).unwrap(), 2);
        assert_eq!(c.minimum_weight(WeightKind::Lee).unwrap(), 3);
        assert_eq!(c.minimum_weight(WeightKind::Euclidean).unwrap(), 5);
        // the Singleton bound is attained here
        assert_eq!(c.minimum_weight(WeightKind::Hamming).unwrap() as usize, singleton_bound(2, 1));
    }
}
