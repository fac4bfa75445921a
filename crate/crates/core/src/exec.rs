//! Execution mode for the data-parallel loops (grid sweeps, chunked sums).
//!
//! With the `parallel` feature the work is spread over the rayon pool;
//! without it every mode runs sequentially. Results are always returned in
//! input order, and chunked reductions use a fixed chunk layout, so output is
//! bit-identical between modes.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How to run a batch of independent evaluations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// Maps `f` over `items`, preserving order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }

    /// Sums `term(k)` for `k` in `range`, chunk by chunk.
    ///
    /// Each chunk is accumulated with Neumaier compensation in ascending `k`;
    /// the per-chunk partials are then combined in chunk order. The chunk
    /// layout depends only on the range, never on the mode.
    pub fn sum_range<F>(self, range: std::ops::RangeInclusive<u64>, term: F) -> f64
    where
        F: Fn(u64) -> f64 + Sync + Send,
    {
        const CHUNK: u64 = 1 << 14;
        let (lo, hi) = range.into_inner();
        if lo > hi {
            return 0.0;
        }
        let chunks: Vec<(u64, u64)> = (0..=(hi - lo) / CHUNK)
            .map(|c| {
                let start = lo + c * CHUNK;
                (start, (start + CHUNK - 1).min(hi))
            })
            .collect();
        let partials = self.map(&chunks, |&(a, b)| {
            let mut acc = NeumaierSum::default();
            for k in a..=b {
                acc.add(term(k));
            }
            acc
        });
        let mut total = NeumaierSum::default();
        for p in partials {
            total.add(p.sum);
            total.add(p.compensation);
        }
        total.value()
    }
}

/// Installs a global rayon pool with `threads` workers. A no-op without the
/// `parallel` feature.
pub fn configure_threads(threads: usize) -> Result<(), String> {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| e.to_string())
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        Ok(())
    }
}

/// Kahan–Babuška–Neumaier running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = NeumaierSum::default();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}
