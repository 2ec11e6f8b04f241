//! Data-parallel helpers with a sequential fallback.
//!
//! Every helper preserves input order in its output, so results are identical
//! whichever [`Exec`] mode runs them.

use std::ops::Range;

/// Execution mode for element sweeps and subset scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled, otherwise runs sequentially.
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

pub fn map_range<R, F>(exec: Exec, range: Range<u64>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            range.into_par_iter().map(f).collect()
        }
        _ => range.map(f).collect(),
    }
}

pub fn map_slice<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// First index in `range` (in increasing order) for which `f` yields `Some`.
pub fn find_map_first<R, F>(exec: Exec, range: Range<u64>, f: F) -> Option<R>
where
    R: Send,
    F: Fn(u64) -> Option<R> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            range.into_par_iter().find_map_first(f)
        }
        _ => range.into_iter().find_map(f),
    }
}

pub fn find_map_first_slice<T, R, F>(exec: Exec, items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            items.par_iter().find_map_first(f)
        }
        _ => items.iter().find_map(f),
    }
}

pub fn filter_range<F>(exec: Exec, range: Range<u64>, f: F) -> Vec<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            range.into_par_iter().filter(|&i| f(i)).collect()
        }
        _ => range.filter(|&i| f(i)).collect(),
    }
}

pub fn count_range<F>(exec: Exec, range: Range<u64>, f: F) -> u64
where
    F: Fn(u64) -> bool + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            range.into_par_iter().filter(|&i| f(i)).count() as u64
        }
        _ => range.filter(|&i| f(i)).count() as u64,
    }
}
