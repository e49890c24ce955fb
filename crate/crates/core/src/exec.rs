//! Pluggable execution of independent work units.
//!
//! Heavy loops are split into units whose boundaries depend only on the
//! problem size and the seed. An [`Executor`] evaluates the units and hands
//! back their results in unit order; callers reduce in that order. A
//! threaded executor therefore yields the same bits as [`Sequential`].

use alloc::vec::Vec;

pub trait Executor: Sync {
    /// Evaluates `f(0), …, f(count − 1)` and returns the results in index order.
    fn map<T, F>(&self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send;
}

#[derive(Debug, Default, Clone, Copy)]
pub struct Sequential;

impl Executor for Sequential {
    fn map<T, F>(&self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..count).map(f).collect()
    }
}
