//! Seeded random self-dual codes over F5.
//!
//! A generator matrix [I | A] spans a self-dual code exactly when
//! A·Aᵀ = -I. Over F5 we take A = 2·W for an orthogonal W (W·Wᵀ = I),
//! since 2² = 4 ≡ -1 (mod 5). Orthogonal matrices are sampled as products
//! of reflections I - 2vvᵀ/⟨v,v⟩ (well-defined whenever ⟨v,v⟩ ≠ 0, which
//! holds for most vectors over F5) interleaved with signed permutations.
//! Rotation-style two-coordinate orthogonal maps are useless here: over F5
//! the circle x² + y² = 1 contains only (±1, 0) and (0, ±1), so products of
//! such maps never leave the signed permutations. Reflections do.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::LinearCode;
use crate::algebra::FpMatrix;
use crate::error::{Error, Result};

/// A random self-dual [n, n/2] code over F5, deterministic in the seed.
pub fn random_self_dual(n: usize, seed: u64) -> Result<LinearCode> {
    if n % 2 != 0 {
        return Err(Error::OddLength(n));
    }
    let m = n / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = random_orthogonal(m, &mut rng);
    // G = [I | 2W]; already in RREF thanks to the identity block
    let mut entries = vec![0i64; m * n];
    for r in 0..m {
        entries[r * n + r] = 1;
        for c in 0..m {
            entries[r * n + m + c] = (2 * w[r * m + c] as i64) % 5;
        }
    }
    let g = FpMatrix::new(5, m, n, entries)?;
    let code = LinearCode::from_generator(&g);
    debug_assert!(code.is_self_dual());
    Ok(code)
}

/// Random m x m orthogonal matrix over F5 (row-major residues).
fn random_orthogonal(m: usize, rng: &mut ChaCha8Rng) -> Vec<u8> {
    const INV: [u8; 5] = [0, 1, 3, 2, 4]; // inverses mod 5 (index 0 unused)
    let mut w = vec![0u8; m * m];
    for i in 0..m {
        w[i * m + i] = 1;
    }
    if m == 0 {
        return w;
    }
    // enough reflections to mix every pair of coordinates many times over
    let rounds = 2 * m + 4;
    let mut v = vec![0u8; m];
    let mut u = vec![0u8; m];
    for _ in 0..rounds {
        // signed permutation: permute rows, negate a random subset
        for i in (1..m).rev() {
            let j = rng.random_range(0..=i);
            for c in 0..m {
                w.swap(i * m + c, j * m + c);
            }
        }
        for i in 0..m {
            if rng.random_range(0..2) == 1 {
                for c in 0..m {
                    let x = w[i * m + c];
                    w[i * m + c] = (5 - x) % 5;
                }
            }
        }
        // reflection by v with q = <v,v> invertible: W <- W - (2/q) v (vT W)
        let q = loop {
            for x in v.iter_mut() {
                *x = rng.random_range(0..5);
            }
            let q: u32 = v.iter().map(|&x| (x as u32 * x as u32) % 5).sum::<u32>() % 5;
            if q != 0 {
                break q as u8;
            }
        };
        for c in 0..m {
            let mut acc = 0u32;
            for r in 0..m {
                acc += v[r] as u32 * w[r * m + c] as u32;
            }
            u[c] = (acc % 5) as u8;
        }
        let scale = (2 * INV[q as usize] as u32) % 5;
        for r in 0..m {
            let f = (scale * v[r] as u32) % 5;
            for c in 0..m {
                let sub = (f * u[c] as u32) % 5;
                let cur = w[r * m + c] as u32;
                w[r * m + c] = ((cur + 5 - sub) % 5) as u8;
            }
        }
    }
    w
}
