//! Regenerates the committed files under fixtures/. Deterministic: running
//! it twice produces identical bytes.
//!
//!     cargo run --release -p quinary --example make_fixtures

use std::fs;
use std::path::Path;

use quinary::algebra::FpMatrix;
use quinary::codes::{random_self_dual, LinearCode};
use quinary::io::{write_code, write_gram};
use quinary::lattices::{dn, dn_plus, zn};

fn main() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    fs::create_dir_all(&root).expect("create fixtures dir");
    let put = |name: &str, text: String| {
        fs::write(root.join(name), text).expect("write fixture");
        println!("wrote fixtures/{name}");
    };

    // the unique-up-to-equivalence self-dual code of length 2
    let c21 = LinearCode::from_generator(&FpMatrix::new(5, 1, 2, vec![1, 2]).unwrap());
    put("c21.code", write_code(&c21));

    // random self-dual codes of every even length up to 12
    for n in [4usize, 6, 8, 10, 12] {
        let code = random_self_dual(n, n as u64).unwrap();
        put(&format!("sd{n:02}.code", n = n), write_code(&code));
    }

    // a typical random [24,12] self-dual candidate for the refutation
    let random24 = random_self_dual(24, 2024).unwrap();
    put("random24.code", write_code(&random24));

    // [24,12] but G·G^T = I: fails the duality gate
    let mut entries = vec![0i64; 12 * 24];
    for i in 0..12 {
        entries[i * 24 + i] = 1;
    }
    let not_sd = LinearCode::from_generator(&FpMatrix::new(5, 12, 24, entries).unwrap());
    put("not_self_dual24.code", write_code(&not_sd));

    // reference lattices
    put("z2.gram", write_gram(&zn(2)));
    put("d12.gram", write_gram(&dn(12).unwrap()));
    let d12p = dn_plus(12).unwrap();
    put("d12plus.gram", write_gram(&d12p));
    put("d12plus_sum.gram", write_gram(&d12p.direct_sum(&d12p)));
}
