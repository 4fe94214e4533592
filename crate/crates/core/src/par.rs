//! Deterministic chunked execution: results come back in chunk order no
//! matter how many workers ran them.

use crate::error::Result;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Execution {
    /// Worker count; 0 picks the runtime default, 1 runs inline.
    pub threads: usize,
}

impl Execution {
    pub fn sequential() -> Self {
        Execution { threads: 1 }
    }

    pub fn with_threads(threads: usize) -> Self {
        Execution { threads }
    }

    /// `f(0), …, f(chunks - 1)` in index order.
    pub fn map_chunks<T, F>(&self, chunks: usize, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        if self.threads == 1 || chunks <= 1 {
            return Ok((0..chunks).map(f).collect());
        }
        self.run_parallel(chunks, f)
    }

    #[cfg(feature = "parallel")]
    fn run_parallel<T, F>(&self, chunks: usize, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
            .map_err(|e| crate::error::Error::Internal(format!("thread pool: {e}")))?;
        Ok(pool.install(|| (0..chunks).into_par_iter().map(f).collect()))
    }

    #[cfg(not(feature = "parallel"))]
    fn run_parallel<T, F>(&self, chunks: usize, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        Ok((0..chunks).map(f).collect())
    }
}
