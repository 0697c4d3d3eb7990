//! Order-preserving fan-out over independent work items.
//!
//! With the `parallel` feature the closure runs on the rayon global pool
//! (worker count controlled by `RAYON_NUM_THREADS`); without it the same
//! closure runs sequentially. Results come back indexed in input order, so
//! any caller whose per-item work is independent gets identical output under
//! both modes and any worker count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub(crate) fn run_indexed<R, F>(count: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    (0..count).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn run_indexed<R, F>(count: usize, f: F) -> Vec<R>
where
    F: Fn(usize) -> R,
{
    (0..count).map(f).collect()
}
