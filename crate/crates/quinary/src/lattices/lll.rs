//! All-integer LLL reduction operating directly on a Gram matrix.
//!
//! No basis coordinates are needed: size reduction and the Lovász test are
//! expressed through the integral Gram-Schmidt data d[i] (determinants of
//! leading minors) and lambda[k][l] = d[l+1] * mu[k][l], which stay integers
//! throughout. All arithmetic is BigInt, so no precision or overflow
//! concerns; the quadratic form is exact at every step.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::ZMatrix;
use crate::error::{Error, Result};

/// LLL-reduce a symmetric positive-definite Gram matrix.
///
/// Returns (G', U) with G' = U·G·Uᵀ and |det U| = 1. delta = (num, den)
/// is the Lovász parameter and must satisfy 1/4 < num/den < 1.
pub fn lll_reduce_gram(gram: &ZMatrix, delta: (i64, i64)) -> Result<(ZMatrix, ZMatrix)> {
    let (p, q) = delta;
    if q <= 0 || p <= 0 || 4 * p <= q || p >= q {
        return Err(Error::DimensionMismatch(format!(
            "Lovász parameter {p}/{q} outside (1/4, 1)"
        )));
    }
    if gram.rows() != gram.cols() {
        return Err(Error::DimensionMismatch("gram matrix must be square".into()));
    }
    let n = gram.rows();
    if n <= 1 {
        return Ok((gram.clone(), ZMatrix::identity(n)));
    }

    let mut w: Vec<Vec<BigInt>> = (0..n)
        .map(|r| (0..n).map(|c| BigInt::from(gram.get(r, c))).collect())
        .collect();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|r| (0..n).map(|c| if r == c { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();

    let (mut d, mut lam) = gram_schmidt_int(&w)?;
    let p = BigInt::from(p);
    let q = BigInt::from(q);

    let mut k = 1usize;
    while k < n {
        reduce_entry(&mut w, &mut u, &mut lam, &d, k, k - 1);
        // swap when q*(d[k+1]*d[k-1] + lam^2) < p*d[k]^2
        let lhs = &q * (&d[k + 1] * &d[k - 1] + &lam[k][k - 1] * &lam[k][k - 1]);
        let rhs = &p * (&d[k] * &d[k]);
        if lhs < rhs {
            w.swap(k, k - 1);
            for row in w.iter_mut() {
                row.swap(k, k - 1);
            }
            u.swap(k, k - 1);
            let (nd, nlam) = gram_schmidt_int(&w)?;
            d = nd;
            lam = nlam;
            k = k.max(2) - 1;
        } else {
            for l in (0..k.saturating_sub(1)).rev() {
                reduce_entry(&mut w, &mut u, &mut lam, &d, k, l);
            }
            k += 1;
        }
    }

    let reduced = big_to_zmatrix(&w, n)?;
    let transform = big_to_zmatrix(&u, n)?;
    debug_assert_eq!(
        transform.mul(gram).unwrap().mul(&transform.transpose()).unwrap(),
        reduced
    );
    Ok((reduced, transform))
}

/// Integral Gram-Schmidt data of a symmetric matrix W:
/// d[0] = 1, d[i] = det of the leading i x i block, lambda[k][l] the scaled
/// projection coefficients. Fails if some leading minor is not positive.
pub(crate) fn gram_schmidt_int(w: &[Vec<BigInt>]) -> Result<(Vec<BigInt>, Vec<Vec<BigInt>>)> {
    let n = w.len();
    let mut d = vec![BigInt::one(); n + 1];
    let mut lam = vec![vec![BigInt::zero(); n]; n];
    for k in 0..n {
        for j in 0..=k {
            let mut t = w[k][j].clone();
            for i in 0..j {
                let num = &d[i + 1] * &t - &lam[k][i] * &lam[j][i];
                let (quo, rem) = num.div_rem(&d[i]);
                debug_assert!(rem.is_zero(), "integral Gram-Schmidt division must be exact");
                let _ = rem;
                t = quo;
            }
            if j < k {
                lam[k][j] = t;
            } else {
                if !t.is_positive() {
                    return Err(Error::NotPositiveDefinite);
                }
                d[k + 1] = t;
            }
        }
    }
    Ok((d, lam))
}

/// Size-reduce row k against row l < k: subtract the nearest-integer
/// multiple q of row l so that |2*lam[k][l]| <= d[l+1] afterwards.
fn reduce_entry(
    w: &mut [Vec<BigInt>],
    u: &mut [Vec<BigInt>],
    lam: &mut [Vec<BigInt>],
    d: &[BigInt],
    k: usize,
    l: usize,
) {
    let two_lam: BigInt = &lam[k][l] * 2;
    if two_lam.abs() <= d[l + 1] {
        return;
    }
    // nearest integer to lam/d, ties toward even floor
    let q = (&two_lam + &d[l + 1]).div_floor(&(&d[l + 1] * 2));
    if q.is_zero() {
        return;
    }
    let n = w.len();
    for c in 0..n {
        let t = &u[l][c] * &q;
        u[k][c] -= t;
    }
    // new row k of W is (row k) - q (row l); keep W symmetric
    let mut new_row: Vec<BigInt> = (0..n).map(|c| &w[k][c] - &q * &w[l][c]).collect();
    new_row[k] = &w[k][k] - &q * &w[k][l] * 2 + &q * &q * &w[l][l];
    for c in 0..n {
        w[k][c] = new_row[c].clone();
        w[c][k] = new_row[c].clone();
    }
    for j in 0..l {
        let t = &lam[l][j] * &q;
        lam[k][j] -= t;
    }
    let t = &d[l + 1] * &q;
    lam[k][l] -= t;
}

fn big_to_zmatrix(rows: &[Vec<BigInt>], n: usize) -> Result<ZMatrix> {
    let mut entries = Vec::with_capacity(n * n);
    for row in rows {
        for v in row {
            entries.push(i64::try_from(v).map_err(|_| Error::Overflow)?);
        }
    }
    ZMatrix::new(n, n, entries)
}
