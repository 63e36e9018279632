//! Execution strategy for the data-parallel loops.
//!
//! Every parallelizable region in this crate (per-subset solves, per-pair
//! hull evaluations, per-face predicate checks) is expressed as an
//! order-preserving map over an indexed work list, followed by a sequential,
//! order-dependent merge. Because the map preserves input order, the merged
//! result — and therefore all output — is identical for every executor and
//! thread count.
//!
//! The crate itself only ships the sequential executor; the `polyspan`
//! companion crate provides a thread-pool executor with the same contract.

use alloc::vec::Vec;

/// An order-preserving parallel map.
///
/// Implementations must return the image of `items` under `f` in the same
/// order as the input; they are free to evaluate `f` concurrently.
pub trait Exec: Sync {
    fn map<I, O, F>(&self, items: Vec<I>, f: F) -> Vec<O>
    where
        I: Send,
        O: Send,
        F: Fn(I) -> O + Sync + Send;
}

/// Sequential executor: evaluates the map in input order on one thread.
#[derive(Clone, Copy, Debug, Default)]
pub struct Seq;

impl Exec for Seq {
    fn map<I, O, F>(&self, items: Vec<I>, f: F) -> Vec<O>
    where
        I: Send,
        O: Send,
        F: Fn(I) -> O + Sync + Send,
    {
        items.into_iter().map(f).collect()
    }
}
