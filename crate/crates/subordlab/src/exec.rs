//! Execution policy for embarrassingly parallel trial loops.
//!
//! Everything the harness runs per trial is pure, so the only scheduling
//! question is whether to fan out across cores. With the `parallel` feature
//! the work goes through rayon; without it (or with `ExecMode::Sequential`)
//! the same closure runs on one thread. Results come back in trial order
//! either way, so callers never see the difference.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecMode {
    Parallel,
    Sequential,
}

impl ExecMode {
    /// Parallel when compiled in, sequential otherwise.
    pub fn default_mode() -> ExecMode {
        if cfg!(feature = "parallel") {
            ExecMode::Parallel
        } else {
            ExecMode::Sequential
        }
    }
}

/// Apply `f` to every index in `0..count`, collecting results in index
/// order. `ExecMode::Parallel` without the `parallel` feature degrades to
/// the sequential path.
pub fn map_indexed<T, F>(mode: ExecMode, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => (0..count).into_par_iter().map(f).collect(),
        #[cfg(not(feature = "parallel"))]
        ExecMode::Parallel => (0..count).map(f).collect(),
        ExecMode::Sequential => (0..count).map(f).collect(),
    }
}
