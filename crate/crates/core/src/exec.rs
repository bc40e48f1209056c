//! Data-parallel executor for the per-row stage kernels.
//!
//! Kernels handed to the executor read only immutable inputs and write
//! disjoint output rows, so results do not depend on the worker count or on
//! scheduling order.

use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};

use crate::error::{Error, Result};

pub struct Executor {
    threads: usize,
    pool: ThreadPool,
}

impl Executor {
    /// Pool with exactly `threads` workers (`threads >= 1`).
    pub fn new(threads: usize) -> Result<Self> {
        if threads == 0 {
            return Err(Error::Executor("worker count must be >= 1".into()));
        }
        let pool = ThreadPoolBuilder::new()
            .num_threads(threads)
            .thread_name(|i| format!("pseudo3d-worker-{i}"))
            .build()
            .map_err(|e| Error::Executor(e.to_string()))?;
        Ok(Self { threads, pool })
    }

    /// Single worker; the serial baseline for speedup measurements.
    pub fn serial() -> Self {
        Self::new(1).expect("one-thread pool")
    }

    /// One worker per available hardware thread.
    pub fn available() -> Result<Self> {
        Self::new(available_threads())
    }

    pub fn threads(&self) -> usize {
        self.threads
    }

    /// Runs `op` inside the pool so nested rayon iterators use its workers.
    pub fn install<R, F>(&self, op: F) -> R
    where
        R: Send,
        F: FnOnce() -> R + Send,
    {
        self.pool.install(op)
    }

    /// Calls `kernel(y, row)` for every `width`-long row of `out`.
    pub fn fill_rows<T, F>(&self, out: &mut [T], width: usize, kernel: F)
    where
        T: Send,
        F: Fn(usize, &mut [T]) + Sync + Send,
    {
        self.install(|| {
            out.par_chunks_mut(width)
                .enumerate()
                .for_each(|(y, row)| kernel(y, row))
        });
    }

    /// Like [`fill_rows`](Self::fill_rows) over three planes at once.
    pub fn fill_rows3<F>(&self, planes: [&mut [u8]; 3], width: usize, kernel: F)
    where
        F: Fn(usize, [&mut [u8]; 3]) + Sync + Send,
    {
        let [r, g, b] = planes;
        self.install(|| {
            r.par_chunks_mut(width)
                .zip(g.par_chunks_mut(width))
                .zip(b.par_chunks_mut(width))
                .enumerate()
                .for_each(|(y, ((r, g), b))| kernel(y, [r, g, b]))
        });
    }

    /// Evaluates `f(0..n)` in parallel, collecting results in index order.
    pub fn map_indexed<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        self.install(|| (0..n).into_par_iter().map(f).collect())
    }
}

impl std::fmt::Debug for Executor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Executor").field("threads", &self.threads).finish()
    }
}

pub fn available_threads() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_workers_rejected() {
        assert!(Executor::new(0).is_err());
    }

    #[test]
    fn rows_are_visited_once() {
        let exec = Executor::new(4).unwrap();
        let mut out = vec![0usize; 7 * 13];
        exec.fill_rows(&mut out, 7, |y, row| row.iter_mut().for_each(|v| *v += y + 1));
        for (i, v) in out.iter().enumerate() {
            assert_eq!(*v, i / 7 + 1);
        }
    }

    #[test]
    fn map_indexed_preserves_order() {
        let exec = Executor::new(3).unwrap();
        assert_eq!(exec.map_indexed(100, |i| i * i), (0..100).map(|i| i * i).collect::<Vec<_>>());
    }
}
