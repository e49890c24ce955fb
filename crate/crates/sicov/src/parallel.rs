use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};
use sicov_core::exec::Executor;

/// Runs work units on a rayon pool. Results come back in unit order, so
/// output does not depend on the number of threads.
pub struct RayonExecutor {
    pool: Option<ThreadPool>,
}

impl RayonExecutor {
    /// Uses the global pool.
    pub fn global() -> Self {
        RayonExecutor { pool: None }
    }

    /// A dedicated pool with `threads` workers (0 means rayon's default).
    pub fn with_threads(threads: usize) -> Result<Self, rayon::ThreadPoolBuildError> {
        let pool = ThreadPoolBuilder::new().num_threads(threads).build()?;
        Ok(RayonExecutor { pool: Some(pool) })
    }
}

impl Executor for RayonExecutor {
    fn map<T, F>(&self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        let run = || (0..count).into_par_iter().map(&f).collect();
        match &self.pool {
            Some(pool) => pool.install(run),
            None => run(),
        }
    }
}
