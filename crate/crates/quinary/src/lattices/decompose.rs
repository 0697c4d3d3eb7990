//! Orthogonal decomposition into indecomposable summands.
//!
//! Every vector whose norm is at most the largest diagonal entry of the
//! LLL-reduced Gram matrix is enumerated, decomposable vectors (sums of two
//! orthogonal shorter lattice vectors) are discarded, the rest are linked
//! when their inner product is nonzero, and connected components span the
//! summands. Discarding matters: in Z^2 the vector (1,1) splits as
//! (1,0) + (0,1) and would otherwise weld the two axes together. Every
//! short vector is a sum of indecomposable ones of no larger norm, so the
//! surviving set still spans everything the enumeration saw, including the
//! reduced basis vectors; the rank and determinant checks at the end would
//! catch an enumeration defect rather than let a wrong splitting through.

use num_traits::One;

use crate::algebra::ZMatrix;
use crate::error::{Error, Result};

use super::{short_vectors, GramLattice};

/// Split a lattice into indecomposable orthogonal summands.
///
/// Components come back in a canonical order (by their earliest vector in
/// the sorted short-vector list) with Gram matrices in HNF-basis form.
/// Ambient basis provenance, when present, is carried into each component.
pub fn decompose(lattice: &GramLattice) -> Result<Vec<GramLattice>> {
    let n = lattice.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    let (reduced, _) = lattice.lll_reduce(super::LLL_DELTA_DEFAULT)?;
    let cap = (0..n).map(|i| reduced.gram().get(i, i)).max().expect("dim > 0");
    // enumerate in the reduced lattice so coefficients live in its basis
    let plain = GramLattice::new(reduced.gram().clone())?;
    let report = short_vectors(&plain, cap)?;
    let all: Vec<(&Vec<i64>, i64)> = report.vectors().iter().map(|(v, w)| (v, *w)).collect();
    let gram_row = |v: &[i64]| -> Vec<i64> {
        (0..n)
            .map(|c| (0..n).map(|r| v[r].checked_mul(reduced.gram().get(r, c)).unwrap()).sum())
            .collect()
    };
    let all_rows: Vec<Vec<i64>> = all.iter().map(|(v, _)| gram_row(v)).collect();
    let dot = |v: &[i64], row: &[i64]| -> i64 { (0..n).map(|c| v[c] * row[c]).sum() };

    // v = u + w with <u, w> = 0 forces <u, v> = |u|^2 with |u|^2 < |v|^2,
    // and some vector in the antipodal pair of u witnesses it, so the
    // report's representatives suffice to detect every decomposable vector.
    // The list is sorted by norm, so shorter candidates come first.
    let mut reps: Vec<&Vec<i64>> = Vec::new();
    let mut gram_rows: Vec<Vec<i64>> = Vec::new();
    for (i, &(v, norm)) in all.iter().enumerate() {
        let decomposable = all
            .iter()
            .take(i)
            .zip(&all_rows)
            .take_while(|((_, u_norm), _)| *u_norm < norm)
            .any(|((_, u_norm), u_row)| dot(v, u_row).abs() == *u_norm);
        if !decomposable {
            reps.push(v);
            gram_rows.push(all_rows[i].clone());
        }
    }

    let mut dsu = Dsu::new(reps.len());
    for a in 0..reps.len() {
        for b in a + 1..reps.len() {
            if dsu.find(a) == dsu.find(b) {
                continue;
            }
            if dot(reps[a], &gram_rows[b]) != 0 {
                dsu.union(a, b);
            }
        }
    }

    // group representatives by root, ordered by first appearance
    let mut order: Vec<usize> = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for i in 0..reps.len() {
        let root = dsu.find(i);
        match order.iter().position(|&r| r == root) {
            Some(slot) => members[slot].push(i),
            None => {
                order.push(root);
                members.push(vec![i]);
            }
        }
    }

    let mut components = Vec::with_capacity(members.len());
    let mut rank_sum = 0usize;
    let mut det_product = num_bigint::BigInt::one();
    for group in &members {
        let mut entries = Vec::with_capacity(group.len() * n);
        for &i in group {
            entries.extend_from_slice(reps[i]);
        }
        let span = ZMatrix::new(group.len(), n, entries)?;
        let h = span.hnf()?;
        rank_sum += h.rows();
        let gram_c = h.mul(reduced.gram())?.mul(&h.transpose())?;
        let component = match reduced.ambient_basis() {
            Some(basis) => {
                GramLattice::from_ambient_basis(h.mul(basis.coords())?, basis.scale())?
            }
            None => GramLattice::new(gram_c.clone())?,
        };
        debug_assert_eq!(component.gram(), &gram_c);
        det_product *= component.determinant();
        components.push(component);
    }

    if rank_sum != n || det_product != lattice.determinant() {
        return Err(Error::NotExhaustive);
    }
    Ok(components)
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
