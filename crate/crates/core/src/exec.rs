//! Pluggable execution of independent work items.
//!
//! The searches in this crate split into independent tasks whose results are
//! combined by an associative, commutative reduction, so the outcome does not
//! depend on how tasks are scheduled. [`Sequential`] runs them in order; the
//! `tern48` crate provides a thread-pool implementation.

pub trait Executor: Sync {
    /// Computes `reduce(map(0), map(1), …, map(n-1))` starting from
    /// `identity`. `reduce` must be associative and commutative.
    fn map_reduce<R, M, F>(&self, n: usize, identity: R, map: M, reduce: F) -> R
    where
        R: Send,
        M: Fn(usize) -> R + Sync,
        F: Fn(R, R) -> R + Sync;

    /// Number of tasks that run at once.
    fn threads(&self) -> usize {
        1
    }
}

/// Runs every task on the calling thread.
#[derive(Copy, Clone, Debug, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map_reduce<R, M, F>(&self, n: usize, identity: R, map: M, reduce: F) -> R
    where
        R: Send,
        M: Fn(usize) -> R + Sync,
        F: Fn(R, R) -> R + Sync,
    {
        (0..n).fold(identity, |acc, i| reduce(acc, map(i)))
    }
}
