//! Exact-arithmetic toolkit for linear codes over small prime fields and the
//! unimodular lattices they induce.
//!
//! The crate centers on one question: can a self-dual code over F5 of length
//! 24 have minimum weight 10? The `pipeline` module walks a candidate
//! code through a fixed sequence of exact checks (duality, lattice
//! construction, theta-series coefficients, orthogonal decomposition) and
//! reports where the hypothetical properties collapse. Everything below it is
//! reusable on its own:
//!
//! - [`algebra`]: row reduction over F_p, integer HNF, exact determinants
//! - [`codes`]: linear codes, weight enumerators, exhaustive Lee-weight sweeps
//! - [`lattices`]: Gram-matrix lattices, LLL, short-vector enumeration,
//!   orthogonal decomposition
//! - [`construction_a`]: the mod-5 lift from codes to lattices
//!
//! All arithmetic is exact; floating point appears only as a pruning bound
//! inside short-vector enumeration and every candidate found that way is
//! re-verified in integers.

pub mod algebra;
pub mod codes;
pub mod construction_a;
pub mod error;
pub mod io;
pub mod lattices;
pub mod pipeline;
mod par;

pub use error::{Error, Result};
