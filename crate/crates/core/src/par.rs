//! Deterministic reduction over moduli `c = 1..=c_max`.
//!
//! Moduli are grouped in fixed chunks of [`CHUNK`] consecutive values. Each
//! chunk is summed in ascending order with compensated accumulation, and the
//! chunk totals are then folded in index order. The grouping does not depend
//! on the number of threads, so results are bit-identical whether the chunks
//! run on the rayon pool or sequentially.

use std::cell::Cell;

use num_complex::Complex64;

/// Number of consecutive moduli handled by one task.
pub const CHUNK: u64 = 64;

/// Neumaier compensated sum of `f64`s.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated sum of complex numbers, componentwise.
#[derive(Clone, Copy, Debug, Default)]
pub struct ComplexSum {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl ComplexSum {
    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

thread_local! {
    static FORCE_SEQUENTIAL: Cell<bool> = const { Cell::new(false) };
}

/// Runs `f` with every reduction on the calling thread, even when the
/// `parallel` feature is enabled.
pub fn sequential<R>(f: impl FnOnce() -> R) -> R {
    struct Reset(bool);
    impl Drop for Reset {
        fn drop(&mut self) {
            FORCE_SEQUENTIAL.with(|s| s.set(self.0));
        }
    }
    let previous = FORCE_SEQUENTIAL.with(|s| s.replace(true));
    let _reset = Reset(previous);
    f()
}

/// Runs `f` on a dedicated pool of `threads` workers.
#[cfg(feature = "parallel")]
pub fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .expect("failed to build thread pool")
        .install(f)
}

/// Without the `parallel` feature there is only the calling thread.
#[cfg(not(feature = "parallel"))]
pub fn with_threads<R: Send>(_threads: usize, f: impl FnOnce() -> R + Send) -> R {
    f()
}

/// Number of worker threads reductions will use.
pub fn current_threads() -> usize {
    #[cfg(feature = "parallel")]
    {
        if !FORCE_SEQUENTIAL.with(|s| s.get()) {
            return rayon::current_num_threads();
        }
    }
    1
}

/// Per-modulus contribution: one value per requested index plus the number of
/// exponential terms that went into it (for rounding bounds).
pub struct Contribution {
    pub values: Vec<Complex64>,
    pub terms: f64,
}

/// Sums `f(c)` over `c = 1..=c_max` deterministically; `width` is the length
/// of every `values` vector. Returns the sums and the summed term weights.
pub fn reduce_moduli<F>(c_max: u64, width: usize, f: F) -> (Vec<Complex64>, f64)
where
    F: Fn(u64) -> Option<Contribution> + Sync,
{
    let chunks = c_max.div_ceil(CHUNK);
    let run_chunk = |i: u64| -> (Vec<ComplexSum>, CompensatedSum) {
        let mut acc = vec![ComplexSum::default(); width];
        let mut terms = CompensatedSum::default();
        let lo = i * CHUNK + 1;
        let hi = ((i + 1) * CHUNK).min(c_max);
        for c in lo..=hi {
            if let Some(contrib) = f(c) {
                debug_assert_eq!(contrib.values.len(), width);
                for (a, v) in acc.iter_mut().zip(&contrib.values) {
                    a.add(*v);
                }
                terms.add(contrib.terms);
            }
        }
        (acc, terms)
    };

    let partials: Vec<(Vec<ComplexSum>, CompensatedSum)> = if current_threads() > 1 {
        map_parallel(chunks, &run_chunk)
    } else {
        (0..chunks).map(run_chunk).collect()
    };

    let mut total = vec![ComplexSum::default(); width];
    let mut terms = CompensatedSum::default();
    for (chunk, t) in &partials {
        for (a, v) in total.iter_mut().zip(chunk) {
            a.add(v.value());
        }
        terms.add(t.value());
    }
    (total.iter().map(ComplexSum::value).collect(), terms.value())
}

#[cfg(feature = "parallel")]
fn map_parallel<T: Send>(chunks: u64, f: &(dyn Fn(u64) -> T + Sync)) -> Vec<T> {
    use rayon::prelude::*;
    (0..chunks).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_parallel<T: Send>(chunks: u64, f: &(dyn Fn(u64) -> T + Sync)) -> Vec<T> {
    (0..chunks).map(f).collect()
}
