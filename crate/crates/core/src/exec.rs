//! Execution strategy for the data-parallel loops (exhaustive point scans,
//! Monte Carlo sampling, descriptor sweeps).
//!
//! Every parallel entry point has a sequential twin. Results are assembled in
//! input order, so the output never depends on the schedule or thread count.
//! Without the `parallel` feature, [`Exec::Parallel`] runs sequentially.

use std::fmt;

/// Name of the environment variable that caps worker threads.
pub const THREADS_ENV: &str = "WCISCOPE_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    /// Rayon's global pool.
    #[default]
    Parallel,
    /// A dedicated pool with this many threads.
    Threads(usize),
}

impl Exec {
    /// Reads [`THREADS_ENV`]: `1` means sequential, `n > 1` a dedicated pool
    /// of `n` threads, unset or unparsable means the default pool.
    pub fn from_env() -> Self {
        match std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
            Some(0) | None => Exec::Parallel,
            Some(1) => Exec::Sequential,
            Some(n) => Exec::Threads(n),
        }
    }

    pub fn is_parallel(&self) -> bool {
        cfg!(feature = "parallel") && !matches!(self, Exec::Sequential | Exec::Threads(1))
    }

    /// Order-preserving map.
    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        if !self.is_parallel() {
            return items.iter().map(f).collect();
        }
        self.run(|| par::map(items, &f))
    }

    /// Order-preserving map over the index range `0..n`.
    pub fn map_range<R, F>(&self, n: u64, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(u64) -> R + Sync + Send,
    {
        if !self.is_parallel() {
            return (0..n).map(f).collect();
        }
        self.run(|| par::map_range(n, &f))
    }

    /// Smallest index in `0..n` whose value satisfies `f`, together with the
    /// produced witness. Identical to the sequential scan regardless of
    /// scheduling.
    pub fn find_first<R, F>(&self, n: u64, f: F) -> Option<(u64, R)>
    where
        R: Send,
        F: Fn(u64) -> Option<R> + Sync + Send,
    {
        if !self.is_parallel() {
            return (0..n).find_map(|i| f(i).map(|r| (i, r)));
        }
        self.run(|| par::find_first(n, &f))
    }

    /// Parallel count of indices in `0..n` satisfying `f`.
    pub fn count<F>(&self, n: u64, f: F) -> u64
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        if !self.is_parallel() {
            return (0..n).filter(|&i| f(i)).count() as u64;
        }
        self.run(|| par::count(n, &f))
    }

    #[cfg(feature = "parallel")]
    fn run<R: Send>(&self, op: impl FnOnce() -> R + Send) -> R {
        match self {
            Exec::Threads(n) => match rayon::ThreadPoolBuilder::new().num_threads(*n).build() {
                Ok(pool) => pool.install(op),
                Err(_) => op(),
            },
            _ => op(),
        }
    }

    #[cfg(not(feature = "parallel"))]
    fn run<R: Send>(&self, op: impl FnOnce() -> R + Send) -> R {
        op()
    }
}

impl fmt::Display for Exec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exec::Sequential => write!(f, "sequential"),
            Exec::Parallel => write!(f, "parallel"),
            Exec::Threads(n) => write!(f, "parallel({n})"),
        }
    }
}

#[cfg(feature = "parallel")]
mod par {
    use rayon::prelude::*;

    pub fn map<T: Sync, R: Send>(items: &[T], f: &(impl Fn(&T) -> R + Sync)) -> Vec<R> {
        items.par_iter().map(f).collect()
    }

    pub fn map_range<R: Send>(n: u64, f: &(impl Fn(u64) -> R + Sync)) -> Vec<R> {
        (0..n).into_par_iter().map(f).collect()
    }

    pub fn find_first<R: Send>(n: u64, f: &(impl Fn(u64) -> Option<R> + Sync)) -> Option<(u64, R)> {
        (0..n).into_par_iter().find_map_first(|i| f(i).map(|r| (i, r)))
    }

    pub fn count(n: u64, f: &(impl Fn(u64) -> bool + Sync)) -> u64 {
        (0..n).into_par_iter().filter(|&i| f(i)).count() as u64
    }
}

#[cfg(not(feature = "parallel"))]
mod par {
    pub fn map<T, R>(items: &[T], f: &impl Fn(&T) -> R) -> Vec<R> {
        items.iter().map(f).collect()
    }

    pub fn map_range<R>(n: u64, f: &impl Fn(u64) -> R) -> Vec<R> {
        (0..n).map(f).collect()
    }

    pub fn find_first<R>(n: u64, f: &impl Fn(u64) -> Option<R>) -> Option<(u64, R)> {
        (0..n).find_map(|i| f(i).map(|r| (i, r)))
    }

    pub fn count(n: u64, f: &impl Fn(u64) -> bool) -> u64 {
        (0..n).filter(|&i| f(i)).count() as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn find_first_matches_sequential() {
        let pred = |i: u64| if i % 97 == 13 && i > 500 { Some(i * 2) } else { None };
        let seq = Exec::Sequential.find_first(10_000, pred);
        assert_eq!(seq, Some((595, 1190)));
        assert_eq!(Exec::Parallel.find_first(10_000, pred), seq);
        assert_eq!(Exec::Threads(4).find_first(10_000, pred), seq);
    }

    #[test]
    fn map_preserves_order() {
        let items: Vec<u32> = (0..1000).collect();
        let a = Exec::Sequential.map(&items, |x| x * x);
        let b = Exec::Threads(3).map(&items, |x| x * x);
        assert_eq!(a, b);
        assert_eq!(Exec::Parallel.count(1000, |i| i % 3 == 0), 334);
    }
}
