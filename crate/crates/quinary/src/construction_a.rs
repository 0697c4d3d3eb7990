//! Construction A over F5: the lattice of integer vectors congruent to a
//! codeword mod 5, rescaled by 1/sqrt(5).
//!
//! Ambient coordinates stay integral at scale 5 (real inner product is the
//! coordinate dot product divided by 5), so a self-orthogonal code yields an
//! integral Gram matrix and a self-dual code yields a unimodular lattice.
//! The theta series of the lattice can be read off the code's Lee
//! composition census without touching the lattice at all, which gives two
//! independent routes to every coefficient.

use std::collections::BTreeMap;

use crate::algebra::{FpMatrix, ZMatrix};
use crate::codes::{CompositionTable, LinearCode};
use crate::error::{Error, Result};
use crate::lattices::GramLattice;

/// A code together with its Construction A lattice.
#[derive(Debug, Clone)]
pub struct ConstructionALattice {
    code: LinearCode,
    lattice: GramLattice,
}

impl ConstructionALattice {
    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn lattice(&self) -> &GramLattice {
        &self.lattice
    }
}

/// Build the Construction A lattice of a self-orthogonal code over F5.
///
/// The basis is the Hermite normal form of the lifted generator rows
/// stacked over 5·I, in the scale-5 ambient frame. Self-orthogonality is
/// required up front: without it the Gram matrix is not integral.
pub fn construction_a(code: &LinearCode) -> Result<ConstructionALattice> {
    if code.p() != 5 {
        return Err(Error::RequiresF5(code.p() as u32));
    }
    if !code.is_self_orthogonal() {
        return Err(Error::NotSelfOrthogonal);
    }
    let n = code.len();
    let k = code.dim();
    let mut entries = Vec::with_capacity((k + n) * n);
    for row in code.generator().rows_iter() {
        entries.extend(row.iter().map(|&v| v as i64));
    }
    for i in 0..n {
        for j in 0..n {
            entries.push(if i == j { 5 } else { 0 });
        }
    }
    let stacked = ZMatrix::new(k + n, n, entries)?;
    let basis = stacked.hnf()?;
    debug_assert_eq!(basis.rows(), n);
    let lattice = GramLattice::from_ambient_basis(basis, 5)?;
    Ok(ConstructionALattice { code: code.clone(), lattice })
}

/// Theta coefficients a_0..a_max of the Construction A lattice, computed
/// from the code's Lee composition census alone.
///
/// A coordinate congruent to residue class j contributes the series of
/// squared lifts {m^2 : m ≡ ±j mod 5}; a composition (n0, n1, n2)
/// contributes the product of the three class series raised to those
/// powers. Norms are squared lifts divided by 5, so coefficient a_m sits at
/// exponent 5m; mass at an exponent not divisible by 5 means the census did
/// not come from a self-orthogonal code.
pub fn theta_from_compositions(table: &CompositionTable, max_norm: i64) -> Result<Vec<u64>> {
    if max_norm < 0 {
        return Err(Error::DimensionMismatch(format!("negative theta truncation {max_norm}")));
    }
    let n = table.length();
    let cap = 5 * max_norm as usize;
    let base = class_series(cap);
    // powers[j][e] = base[j]^e, truncated at degree cap
    let powers: Vec<Vec<Vec<u128>>> = base
        .iter()
        .map(|b| {
            let mut acc = Vec::with_capacity(n + 1);
            acc.push(one_series(cap));
            for e in 1..=n {
                let prev = &acc[e - 1];
                acc.push(mul_series(prev, b, cap));
            }
            acc
        })
        .collect();

    let mut acc = vec![0u128; cap + 1];
    for ((n0, n1, n2), count) in table.entries() {
        if count == 0 {
            continue;
        }
        let prod = mul_series(
            &mul_series(&powers[0][n0], &powers[1][n1], cap),
            &powers[2][n2],
            cap,
        );
        for (s, v) in prod.iter().enumerate() {
            acc[s] += count as u128 * v;
        }
    }

    let mut theta = vec![0u64; max_norm as usize + 1];
    for (s, &v) in acc.iter().enumerate() {
        if v == 0 {
            continue;
        }
        if s % 5 != 0 {
            return Err(Error::NotSelfOrthogonal);
        }
        theta[s / 5] = u64::try_from(v).map_err(|_| Error::Overflow)?;
    }
    Ok(theta)
}

/// Minimum norm and kissing number from the composition census.
///
/// Evaluates the theta series to norm 5 at least: the zero coset always
/// holds vectors like 5·e_i of norm exactly 5, so the minimum is never
/// beyond that and the search cannot come back empty.
pub fn kissing_from_compositions(table: &CompositionTable) -> Result<(i64, u64)> {
    let theta = theta_from_compositions(table, 5)?;
    for (m, &count) in theta.iter().enumerate().skip(1) {
        if count > 0 {
            return Ok((m as i64, count));
        }
    }
    Err(Error::NotExhaustive)
}

/// For each ambient coordinate i, the list of components containing the
/// lattice vector 5·e_i (real vector sqrt(5)·e_i).
///
/// Clean inputs give exactly one owner per coordinate; an empty or
/// multi-entry list is reported as data, not an error, because deciding
/// what it means belongs to the caller.
pub fn unit_vector_assignment(components: &[GramLattice], n: usize) -> Result<Vec<Vec<usize>>> {
    for comp in components {
        let Some(basis) = comp.ambient_basis() else {
            return Err(Error::FrameMismatch("component carries no ambient basis".into()));
        };
        if basis.scale() != 5 || basis.ambient_dim() != n {
            return Err(Error::FrameMismatch(format!(
                "component frame is scale {} in dimension {}, expected scale 5 in dimension {n}",
                basis.scale(),
                basis.ambient_dim()
            )));
        }
    }
    let mut owners = Vec::with_capacity(n);
    for i in 0..n {
        let mut v = vec![0i64; n];
        v[i] = 5;
        let mut who = Vec::new();
        for (c, comp) in components.iter().enumerate() {
            if comp.member(&v, 5)? {
                who.push(c);
            }
        }
        owners.push(who);
    }
    Ok(owners)
}

/// Decompose a Construction A lattice and read codes back off the summands,
/// merging summands whose ambient supports overlap first.
///
/// A single block of a direct-sum code can split into several orthogonal
/// summands sharing the same coordinates (the lattice sees finer structure
/// than the code), so codes are recovered per support group, not per
/// summand. Returns (support, code) pairs ordered by first coordinate.
pub fn support_grouped_codes(built: &ConstructionALattice) -> Result<Vec<(Vec<usize>, LinearCode)>> {
    let comps = crate::lattices::decompose(built.lattice())?;
    let supports: Vec<Vec<usize>> = comps
        .iter()
        .map(support_columns)
        .collect::<Result<_>>()?;
    // transitive closure of support overlap
    let mut group_of: Vec<usize> = (0..comps.len()).collect();
    loop {
        let mut changed = false;
        for a in 0..comps.len() {
            for b in a + 1..comps.len() {
                if group_of[a] != group_of[b]
                    && supports[a].iter().any(|c| supports[b].binary_search(c).is_ok())
                {
                    let target = group_of[a].min(group_of[b]);
                    let from = group_of[a].max(group_of[b]);
                    for g in group_of.iter_mut() {
                        if *g == from {
                            *g = target;
                        }
                    }
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut seen: Vec<usize> = group_of.clone();
    seen.sort_unstable();
    seen.dedup();
    let mut out = Vec::with_capacity(seen.len());
    for g in seen {
        let mut stacked: Option<ZMatrix> = None;
        let mut support: Vec<usize> = Vec::new();
        for (i, comp) in comps.iter().enumerate() {
            if group_of[i] != g {
                continue;
            }
            support.extend_from_slice(&supports[i]);
            let coords = comp
                .ambient_basis()
                .expect("construction A components carry frames")
                .coords()
                .clone();
            stacked = Some(match stacked.take() {
                Some(acc) => acc.vstack(&coords)?,
                None => coords,
            });
        }
        support.sort_unstable();
        support.dedup();
        let merged = GramLattice::from_ambient_basis(stacked.expect("group nonempty"), 5)?;
        let code = component_code(&merged, &support)?;
        out.push((support, code));
    }
    out.sort_by_key(|(support, _)| support.first().copied());
    Ok(out)
}

/// Ambient coordinates where a component's basis has nonzero entries.
pub fn support_columns(component: &GramLattice) -> Result<Vec<usize>> {
    let Some(basis) = component.ambient_basis() else {
        return Err(Error::FrameMismatch("component carries no ambient basis".into()));
    };
    let coords = basis.coords();
    let mut cols = Vec::new();
    for c in 0..coords.cols() {
        if (0..coords.rows()).any(|r| coords.get(r, c) != 0) {
            cols.push(c);
        }
    }
    Ok(cols)
}

/// Read a code back off a component: reduce its basis mod 5 and restrict to
/// the given support columns.
///
/// Fails with the offending column if the basis touches a coordinate
/// outside the support.
pub fn component_code(component: &GramLattice, support: &[usize]) -> Result<LinearCode> {
    let Some(basis) = component.ambient_basis() else {
        return Err(Error::FrameMismatch("component carries no ambient basis".into()));
    };
    if basis.scale() != 5 {
        return Err(Error::FrameMismatch(format!(
            "component frame has scale {}, expected 5",
            basis.scale()
        )));
    }
    let coords = basis.coords();
    let in_support: BTreeMap<usize, usize> =
        support.iter().enumerate().map(|(slot, &col)| (col, slot)).collect();
    for c in 0..coords.cols() {
        if in_support.contains_key(&c) {
            continue;
        }
        if (0..coords.rows()).any(|r| coords.get(r, c) != 0) {
            return Err(Error::SupportMismatch(c));
        }
    }
    let rows = coords.rows();
    let mut entries = vec![0i64; rows * support.len()];
    for r in 0..rows {
        for (&col, &slot) in &in_support {
            entries[r * support.len() + slot] = coords.get(r, col).rem_euclid(5);
        }
    }
    let generator = FpMatrix::new(5, rows, support.len(), entries)?;
    Ok(LinearCode::from_generator(&generator))
}

fn one_series(cap: usize) -> Vec<u128> {
    let mut s = vec![0u128; cap + 1];
    s[0] = 1;
    s
}

fn mul_series(a: &[u128], b: &[u128], cap: usize) -> Vec<u128> {
    let mut out = vec![0u128; cap + 1];
    for (i, &av) in a.iter().enumerate() {
        if av == 0 {
            continue;
        }
        for (j, &bv) in b.iter().enumerate() {
            if i + j > cap {
                break;
            }
            out[i + j] += av * bv;
        }
    }
    out
}

/// Squared-lift counting series for the residue classes {0}, {1,4}, {2,3}:
/// entry s of series j counts integers m with m ≡ r (mod 5) and m² = s, for
/// a fixed residue r in class j. The two residues of a nonzero class see
/// the same multiset of squares (negation swaps them), so one series covers
/// both. A square s > 0 has two integer roots; for r ≠ 0 exactly one of
/// them is ≡ r, while for r = 0 both are, hence the extra factor of two in
/// the zero class only.
fn class_series(cap: usize) -> [Vec<u128>; 3] {
    let mut b = [one_series(cap), vec![0u128; cap + 1], vec![0u128; cap + 1]];
    let mut m = 1usize;
    while m * m <= cap {
        match m % 5 {
            0 => b[0][m * m] += 2,
            1 | 4 => b[1][m * m] += 1,
            _ => b[2][m * m] += 1,
        }
        m += 1;
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{random_self_dual, sweep_compositions};
    use crate::lattices::{decompose, kissing_number, minimum_norm, theta_series};
    use num_bigint::BigInt;

    fn code(n: usize, k: usize, rows: Vec<i64>) -> LinearCode {
        LinearCode::from_generator(&FpMatrix::new(5, k, n, rows).unwrap())
    }

    #[test]
    fn skew_plane_from_shortest_self_dual_code() {
        let c = code(2, 1, vec![1, 2]);
        let built = construction_a(&c).unwrap();
        let l = built.lattice();
        assert_eq!(l.gram(), &ZMatrix::new(2, 2, vec![1, 2, 2, 5]).unwrap());
        assert!(l.is_unimodular());
        assert_eq!(minimum_norm(l).unwrap(), 1);
        assert_eq!(kissing_number(l).unwrap(), 4);
    }

    #[test]
    fn self_dual_gives_unimodular() {
        let c = code(4, 2, vec![1, 0, 2, 0, 0, 1, 0, 2]);
        let l = construction_a(&c).unwrap();
        assert!(l.lattice().is_unimodular());
        assert_eq!(minimum_norm(l.lattice()).unwrap(), 1);
        assert_eq!(kissing_number(l.lattice()).unwrap(), 8);
    }

    #[test]
    fn determinant_tracks_code_dimension() {
        // k = 1, n = 4: det 5^(4-2) = 25
        let c = code(4, 1, vec![1, 2, 0, 0]);
        let l = construction_a(&c).unwrap();
        assert_eq!(l.lattice().determinant(), BigInt::from(25));
        // zero code: det 5^n
        let zero = code(2, 0, vec![]);
        let lz = construction_a(&zero).unwrap();
        assert_eq!(lz.lattice().determinant(), BigInt::from(25));
        assert_eq!(minimum_norm(lz.lattice()).unwrap(), 5);
    }

    #[test]
    fn rejects_non_self_orthogonal() {
        let c = code(2, 1, vec![1, 1]);
        assert!(matches!(construction_a(&c), Err(Error::NotSelfOrthogonal)));
    }

    #[test]
    fn rejects_wrong_field() {
        let c = LinearCode::from_generator(&FpMatrix::new(3, 1, 2, vec![1, 1]).unwrap());
        assert!(matches!(construction_a(&c), Err(Error::RequiresF5(3))));
    }

    #[test]
    fn theta_of_zero_code_line() {
        // A5 of the zero code in length 1 is sqrt(5)·Z: norms 0, 5, 20, ...
        let zero = code(1, 0, vec![]);
        let table = sweep_compositions(&zero).unwrap();
        assert_eq!(theta_from_compositions(&table, 5).unwrap(), vec![1, 0, 0, 0, 0, 2]);
    }

    #[test]
    fn composition_route_matches_enumeration_route() {
        let fixed = [code(2, 1, vec![1, 2]), code(4, 2, vec![1, 0, 2, 0, 0, 1, 0, 2])];
        for c in fixed.iter().cloned().chain((0..4).map(|s| random_self_dual(6, s).unwrap())) {
            let built = construction_a(&c).unwrap();
            let table = sweep_compositions(&c).unwrap();
            let via_census = theta_from_compositions(&table, 6).unwrap();
            let via_lattice = theta_series(built.lattice(), 6).unwrap();
            assert_eq!(via_census, via_lattice, "theta mismatch for {c:?}");
        }
    }

    #[test]
    fn kissing_route_matches_enumeration_route() {
        for seed in 0..3 {
            let c = random_self_dual(8, seed).unwrap();
            let built = construction_a(&c).unwrap();
            let table = sweep_compositions(&c).unwrap();
            let (min, kiss) = kissing_from_compositions(&table).unwrap();
            assert_eq!(min, minimum_norm(built.lattice()).unwrap());
            assert_eq!(kiss, kissing_number(built.lattice()).unwrap());
        }
    }

    #[test]
    fn non_orthogonal_census_is_rejected_by_theta() {
        let c = code(2, 1, vec![1, 1]);
        let table = sweep_compositions(&c).unwrap();
        assert!(matches!(
            theta_from_compositions(&table, 4),
            Err(Error::NotSelfOrthogonal)
        ));
    }

    #[test]
    fn whole_lattice_owns_every_unit_vector() {
        let c = code(2, 1, vec![1, 2]);
        let built = construction_a(&c).unwrap();
        let owners = unit_vector_assignment(std::slice::from_ref(built.lattice()), 2).unwrap();
        assert_eq!(owners, vec![vec![0], vec![0]]);
    }

    #[test]
    fn split_plane_leaves_unit_vectors_unowned() {
        // The components of A5 of the (1,2) code are the lines through
        // (1,2) and (2,-1); 5·e1 = (1,2) + 2·(2,-1) needs both, so neither
        // line contains it. Unowned coordinates are data, not an error.
        let c = code(2, 1, vec![1, 2]);
        let built = construction_a(&c).unwrap();
        let comps = decompose(built.lattice()).unwrap();
        assert_eq!(comps.len(), 2);
        let owners = unit_vector_assignment(&comps, 2).unwrap();
        assert_eq!(owners, vec![Vec::<usize>::new(), Vec::new()]);
    }

    #[test]
    fn component_code_roundtrip_on_whole_lattice() {
        for seed in 0..3 {
            let c = random_self_dual(6, seed).unwrap();
            let built = construction_a(&c).unwrap();
            let support: Vec<usize> = (0..6).collect();
            assert_eq!(support_columns(built.lattice()).unwrap(), support);
            let back = component_code(built.lattice(), &support).unwrap();
            assert_eq!(back, c);
        }
    }

    #[test]
    fn component_code_rejects_columns_outside_support() {
        let c = code(2, 1, vec![1, 2]);
        let built = construction_a(&c).unwrap();
        assert!(matches!(
            component_code(built.lattice(), &[0]),
            Err(Error::SupportMismatch(1))
        ));
    }

    #[test]
    fn block_codes_recovered_through_decomposition() {
        // A5(C1 ⊕ C2) = A5(C1) ⊥ A5(C2): group the fine components by
        // which block their support lands in, merge, and read the codes back
        let c1 = random_self_dual(4, 11).unwrap();
        let c2 = random_self_dual(6, 12).unwrap();
        let joint = c1.direct_sum(&c2).unwrap();
        let built = construction_a(&joint).unwrap();
        let comps = decompose(built.lattice()).unwrap();
        // components of the same ambient space merge by stacking basis rows
        let mut left: Option<ZMatrix> = None;
        let mut right: Option<ZMatrix> = None;
        for comp in comps {
            let support = support_columns(&comp).unwrap();
            let slot = if support.iter().all(|&c| c < 4) {
                &mut left
            } else {
                assert!(support.iter().all(|&c| c >= 4), "support straddles blocks");
                &mut right
            };
            let coords = comp.ambient_basis().unwrap().coords().clone();
            *slot = Some(match slot.take() {
                Some(acc) => acc.vstack(&coords).unwrap(),
                None => coords,
            });
        }
        let left = GramLattice::from_ambient_basis(left.unwrap(), 5).unwrap();
        let right = GramLattice::from_ambient_basis(right.unwrap(), 5).unwrap();
        let c1_back = component_code(&left, &[0, 1, 2, 3]).unwrap();
        let c2_back = component_code(&right, &[4, 5, 6, 7, 8, 9]).unwrap();
        assert_eq!(c1_back, c1);
        assert_eq!(c2_back, c2);
    }

    #[test]
    fn support_groups_recover_direct_sum_blocks() {
        let c1 = random_self_dual(4, 11).unwrap();
        let c2 = random_self_dual(6, 12).unwrap();
        let joint = c1.direct_sum(&c2).unwrap();
        let built = construction_a(&joint).unwrap();
        let groups = support_grouped_codes(&built).unwrap();
        // every group lives inside one block (a block may split further,
        // possibly with interleaved supports); stacking each block's group
        // generators, embedded along their supports, rebuilds that block
        let mut block_rows: [Vec<i64>; 2] = [Vec::new(), Vec::new()];
        let mut covered = Vec::new();
        for (support, code) in &groups {
            let block = usize::from(support[0] >= 4);
            let offset = if block == 0 { 0 } else { 4 };
            let width = if block == 0 { 4 } else { 6 };
            assert!(
                support.iter().all(|&c| c >= offset && c < offset + width),
                "support straddles blocks: {support:?}"
            );
            covered.extend_from_slice(support);
            for row in code.generator().rows_iter() {
                let mut embedded = vec![0i64; width];
                for (&col, &v) in support.iter().zip(row) {
                    embedded[col - offset] = v as i64;
                }
                block_rows[block].extend_from_slice(&embedded);
            }
        }
        covered.sort_unstable();
        assert_eq!(covered, (0..10).collect::<Vec<_>>());
        let c1_back = LinearCode::from_generator(
            &FpMatrix::new(5, block_rows[0].len() / 4, 4, block_rows[0].clone()).unwrap(),
        );
        let c2_back = LinearCode::from_generator(
            &FpMatrix::new(5, block_rows[1].len() / 6, 6, block_rows[1].clone()).unwrap(),
        );
        assert_eq!(c1_back, c1);
        assert_eq!(c2_back, c2);
    }
}
