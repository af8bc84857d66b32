//! Sequential / data-parallel evaluation of independent work items.
//!
//! With the `parallel` feature (on by default) [`Execution::Parallel`] maps
//! over rayon's pool; without it every mode runs sequentially. Results are
//! always returned in input order, so both modes produce identical output.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
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

    /// Index of the first item (in input order) for which `f` returns `Some`,
    /// together with its value.
    pub fn find_first<T, R, F>(self, items: &[T], f: F) -> Option<(usize, R)>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Option<R> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => items
                .par_iter()
                .enumerate()
                .find_map_first(|(i, x)| f(x).map(|r| (i, r))),
            _ => items.iter().enumerate().find_map(|(i, x)| f(x).map(|r| (i, r))),
        }
    }
}
