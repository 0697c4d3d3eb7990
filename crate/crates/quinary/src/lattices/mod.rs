//! Exact Gram-matrix lattices: invariants, reduction, short-vector
//! enumeration, orthogonal decomposition, and the named families Z^n, D_n,
//! D_n+.
//!
//! A lattice is represented by its Gram matrix of pairwise inner products,
//! which is the source of truth for every invariant. A basis in an ambient
//! scaled integer frame can ride along for membership tests: ambient
//! coordinates are integers and the real inner product of rows u, v is
//! (u . v) / scale, so irrational normalizations like 1/sqrt(5) never
//! appear in data.

mod decompose;
mod enumerate;
mod lll;

pub use decompose::decompose;
pub use enumerate::{kissing_number, minimum_norm, short_vectors, theta_series, ShortVectorReport};
pub use lll::lll_reduce_gram;

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::ZMatrix;
use crate::error::{Error, Result};

/// Default Lovász parameter 99/100 for LLL reduction.
pub const LLL_DELTA_DEFAULT: (i64, i64) = (99, 100);

/// Basis provenance in an ambient scaled integer frame.
///
/// Rows of `coords` are lattice basis vectors; the real inner product of
/// ambient vectors u, v is (u . v) / scale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbientBasis {
    scale: i64,
    coords: ZMatrix,
}

impl AmbientBasis {
    pub fn scale(&self) -> i64 {
        self.scale
    }

    pub fn coords(&self) -> &ZMatrix {
        &self.coords
    }

    /// Number of ambient coordinates.
    pub fn ambient_dim(&self) -> usize {
        self.coords.cols()
    }
}

/// Positive-definite integral lattice given by its Gram matrix, with
/// optional ambient basis provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramLattice {
    gram: ZMatrix,
    basis: Option<AmbientBasis>,
}

impl GramLattice {
    /// Lattice from a symmetric positive-definite Gram matrix.
    pub fn new(gram: ZMatrix) -> Result<GramLattice> {
        check_gram(&gram)?;
        Ok(GramLattice { gram, basis: None })
    }

    /// Lattice from basis rows in an ambient frame with the given scale.
    /// The Gram matrix (B·Bᵀ)/scale must be exactly integral.
    pub fn from_ambient_basis(coords: ZMatrix, scale: i64) -> Result<GramLattice> {
        if scale <= 0 {
            return Err(Error::FrameMismatch(format!("scale must be positive, got {scale}")));
        }
        let prods = coords.mul(&coords.transpose())?;
        let n = coords.rows();
        let mut entries = vec![0i64; n * n];
        for r in 0..n {
            for c in 0..n {
                let v = prods.get(r, c);
                if v % scale != 0 {
                    return Err(Error::FrameMismatch(format!(
                        "inner product of basis rows {r} and {c} is {v}, not divisible by scale {scale}"
                    )));
                }
                entries[r * n + c] = v / scale;
            }
        }
        let gram = ZMatrix::new(n, n, entries)?;
        check_gram(&gram)?;
        Ok(GramLattice { gram, basis: Some(AmbientBasis { scale, coords }) })
    }

    /// Rank of the lattice.
    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &ZMatrix {
        &self.gram
    }

    pub fn ambient_basis(&self) -> Option<&AmbientBasis> {
        self.basis.as_ref()
    }

    /// Exact determinant of the Gram matrix.
    pub fn determinant(&self) -> BigInt {
        self.gram.det().expect("gram is square")
    }

    /// True iff the determinant is 1 (lattice equals its dual).
    pub fn is_unimodular(&self) -> bool {
        self.determinant() == BigInt::one()
    }

    /// True iff every vector has even norm; for an integral lattice this is
    /// equivalent to every diagonal Gram entry being even.
    pub fn is_even(&self) -> bool {
        (0..self.dim()).all(|i| self.gram.get(i, i) % 2 == 0)
    }

    /// Orthogonal direct sum. Basis provenance is kept when both operands
    /// carry it at the same scale (ambient coordinates concatenate).
    pub fn direct_sum(&self, other: &GramLattice) -> GramLattice {
        let gram = self.gram.block_diag(&other.gram);
        let basis = match (&self.basis, &other.basis) {
            (Some(a), Some(b)) if a.scale == b.scale => Some(AmbientBasis {
                scale: a.scale,
                coords: a.coords.block_diag(&b.coords),
            }),
            _ => None,
        };
        GramLattice { gram, basis }
    }

    /// Membership of an ambient vector: true iff v is an integer combination
    /// of the basis rows. Requires basis provenance at the matching scale.
    pub fn member(&self, v: &[i64], scale: i64) -> Result<bool> {
        let Some(basis) = &self.basis else {
            return Err(Error::FrameMismatch("lattice carries no ambient basis".into()));
        };
        if basis.scale != scale {
            return Err(Error::FrameMismatch(format!(
                "lattice frame has scale {}, query uses scale {scale}",
                basis.scale
            )));
        }
        if v.len() != basis.ambient_dim() {
            return Err(Error::FrameMismatch(format!(
                "ambient dimension {} does not match query length {}",
                basis.ambient_dim(),
                v.len()
            )));
        }
        Ok(basis.coords.solve_integer(v)?.is_some())
    }

    /// LLL reduction of the Gram matrix: returns the reduced lattice and the
    /// unimodular transform U with U·G·Uᵀ = G'. Basis provenance follows the
    /// transform. delta = (num, den) must satisfy 1/4 < num/den < 1.
    pub fn lll_reduce(&self, delta: (i64, i64)) -> Result<(GramLattice, ZMatrix)> {
        let (reduced, u) = lll_reduce_gram(&self.gram, delta)?;
        let basis = match &self.basis {
            Some(b) => {
                Some(AmbientBasis { scale: b.scale, coords: u.mul(&b.coords)? })
            }
            None => None,
        };
        Ok((GramLattice { gram: reduced, basis }, u))
    }
}

fn check_gram(gram: &ZMatrix) -> Result<()> {
    if gram.rows() != gram.cols() {
        return Err(Error::DimensionMismatch("gram matrix must be square".into()));
    }
    for r in 0..gram.rows() {
        for c in 0..r {
            if gram.get(r, c) != gram.get(c, r) {
                return Err(Error::NotPositiveDefinite);
            }
        }
    }
    gram.positive_definite_minors()?;
    Ok(())
}

/// The cubic lattice Z^n.
pub fn zn(n: usize) -> GramLattice {
    GramLattice::from_ambient_basis(ZMatrix::identity(n), 1).expect("Z^n is valid")
}

/// The checkerboard lattice D_n (integer vectors with even coordinate sum),
/// basis e1-e2, ..., e(n-1)-en, e(n-1)+en.
pub fn dn(n: usize) -> Result<GramLattice> {
    if n < 2 {
        return Err(Error::DimensionMismatch(format!("D_n requires n >= 2, got {n}")));
    }
    let mut coords = ZMatrix::zero(n, n);
    for i in 0..n - 1 {
        coords.set(i, i, 1);
        coords.set(i, i + 1, -1);
    }
    coords.set(n - 1, n - 2, 1);
    coords.set(n - 1, n - 1, 1);
    GramLattice::from_ambient_basis(coords, 1)
}

/// The index-2 extension D_n+ of D_n by the glue vector g = (1/2, ..., 1/2),
/// integral for 4 | n (norm n/4). D_8+ is E8; D_12+ is odd unimodular.
///
/// Ambient coordinates are doubled (scale 4) so g stays integer. No fixed
/// swap of one D_n generator for g yields a basis at every n (the lattice
/// index of such a set drifts with n), so the basis is extracted from the
/// full generating set D_n ∪ {g} by Hermite reduction.
pub fn dn_plus(n: usize) -> Result<GramLattice> {
    if n % 4 != 0 || n == 0 {
        return Err(Error::GlueNotIntegral(n));
    }
    let mut gens = ZMatrix::zero(n + 1, n);
    for i in 0..n - 1 {
        gens.set(i, i, 2);
        gens.set(i, i + 1, -2);
    }
    gens.set(n - 1, n - 2, 2);
    gens.set(n - 1, n - 1, 2);
    for c in 0..n {
        gens.set(n, c, 1);
    }
    let coords = gens.hnf()?;
    if coords.rows() != n {
        return Err(Error::DependentRows);
    }
    GramLattice::from_ambient_basis(coords, 4)
}
