//! Data-parallel map with a sequential fallback.
//!
//! With the `parallel` feature the work is spread over a rayon pool; without it,
//! or with a job count of one, items are processed in order on the calling
//! thread. Output order always matches input order.

/// Worker-count setting for batch stages.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Parallelism {
    jobs: usize,
}

impl Parallelism {
    pub const fn sequential() -> Self {
        Self { jobs: 1 }
    }

    /// All available cores.
    pub const fn all() -> Self {
        Self { jobs: 0 }
    }

    /// `0` selects all available cores.
    pub const fn jobs(jobs: usize) -> Self {
        Self { jobs }
    }

    pub fn is_sequential(&self) -> bool {
        self.jobs == 1 || !cfg!(feature = "parallel")
    }

    pub fn job_count(&self) -> usize {
        self.jobs
    }
}

impl Default for Parallelism {
    fn default() -> Self {
        Self::all()
    }
}

#[cfg(feature = "parallel")]
pub fn map<T, R, F>(par: Parallelism, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    if par.is_sequential() || items.len() < 2 {
        return items.iter().map(f).collect();
    }
    if par.jobs == 0 {
        return items.par_iter().map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(par.jobs).build() {
        Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
        Err(_) => items.iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, R, F>(_par: Parallelism, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}
