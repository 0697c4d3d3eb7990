//! Exact linear algebra over prime fields and over the integers.

mod fp;
mod zmat;

pub use fp::{FpMatrix, Rref, SUPPORTED_PRIMES};
pub use zmat::ZMatrix;
