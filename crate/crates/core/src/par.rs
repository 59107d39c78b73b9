//! Data-parallel map with a sequential fallback.
//!
//! With the `parallel` feature, `jobs > 1` runs on a dedicated rayon pool of
//! that many threads and `jobs == 0` uses the global pool. Without the
//! feature, or with `jobs == 1`, everything runs on the calling thread.
//! Output order always matches input order.

/// Worker count. `0` means "all available cores".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Jobs(pub usize);

impl Default for Jobs {
    fn default() -> Self {
        Jobs(1)
    }
}

impl Jobs {
    pub fn sequential() -> Self {
        Jobs(1)
    }

    pub fn all() -> Self {
        Jobs(0)
    }

    pub fn is_sequential(self) -> bool {
        self.0 == 1 || !cfg!(feature = "parallel")
    }

    /// Number of items worth evaluating speculatively at once.
    pub fn width(self) -> usize {
        if self.is_sequential() {
            return 1;
        }
        match self.0 {
            0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
            n => n,
        }
    }
}

pub fn map<T, R, F>(items: &[T], jobs: Jobs, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    if jobs.is_sequential() || items.len() < 2 {
        return items.iter().map(f).collect();
    }
    parallel_map(items, jobs, f)
}

#[cfg(feature = "parallel")]
fn parallel_map<T, R, F>(items: &[T], jobs: Jobs, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    if jobs.0 == 0 {
        return items.par_iter().map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs.0).build() {
        Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
        Err(_) => items.iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, R, F>(items: &[T], _jobs: Jobs, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}
