//! Sequential or data-parallel execution of the bulk passes.
//!
//! Suffix sorting, the BWT rewrite, the rank-based baseline and verification
//! are all independent per cell and run on rayon when the `parallel` feature
//! is enabled. The LF traversal of the in-place construction is inherently
//! sequential and ignores this setting.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    /// Parallel when the feature is on and rayon has more than one worker.
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        if rayon::current_num_threads() > 1 {
            return Exec::Parallel;
        }
        Exec::Sequential
    }
}

impl Exec {
    /// Whether work is actually dispatched to rayon. Always false without the
    /// `parallel` feature.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Fills `out[i] = f(i)` for every cell.
pub(crate) fn fill_indexed<T, F>(exec: Exec, out: &mut [T], f: F)
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        out.par_iter_mut().enumerate().for_each(|(i, x)| *x = f(i));
        return;
    }
    let _ = exec;
    for (i, x) in out.iter_mut().enumerate() {
        *x = f(i);
    }
}

/// Rewrites every cell in place.
pub(crate) fn map_in_place<T, F>(exec: Exec, cells: &mut [T], f: F)
where
    T: Send + Copy,
    F: Fn(T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        cells.par_iter_mut().for_each(|x| *x = f(*x));
        return;
    }
    let _ = exec;
    for x in cells.iter_mut() {
        *x = f(*x);
    }
}

/// Smallest `i` in `0..n` with `pred(i)`, if any.
pub(crate) fn find_first<F>(exec: Exec, n: usize, pred: F) -> Option<usize>
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().find_first(|&i| pred(i));
    }
    let _ = exec;
    (0..n).find(|&i| pred(i))
}
