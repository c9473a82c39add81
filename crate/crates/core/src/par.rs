//! Data-parallel map with a sequential fallback.
//!
//! With the `parallel` feature the map runs on rayon; without it every
//! [`Execution`] runs sequentially. Output order always follows the index, so
//! any fold over the result is independent of the thread count.

use serde::{Deserialize, Serialize};

/// How index-parallel work is scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Execution {
    Sequential,
    /// Rayon with `workers` threads (`None`: rayon's global pool).
    #[default]
    Parallel,
    ParallelWith(usize),
}

impl Execution {
    pub fn from_workers(workers: Option<usize>) -> Self {
        match workers {
            Some(1) => Execution::Sequential,
            Some(k) if k > 1 => Execution::ParallelWith(k),
            _ => Execution::Parallel,
        }
    }
}

/// `(0..count).map(f)` collected in index order.
pub fn map_indexed<T, F>(count: usize, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        match exec {
            Execution::Sequential => (0..count).map(f).collect(),
            Execution::Parallel => (0..count).into_par_iter().map(f).collect(),
            Execution::ParallelWith(workers) => {
                match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
                    Ok(pool) => pool.install(|| (0..count).into_par_iter().map(&f).collect()),
                    Err(_) => (0..count).into_par_iter().map(f).collect(),
                }
            }
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = exec;
        (0..count).map(f).collect()
    }
}
