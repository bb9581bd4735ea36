//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature these run on the rayon pool unless
//! [`set_parallel`] has switched them off. Results never depend on the
//! mode: searches return the first hit in input order and maps keep order.

use std::sync::atomic::{AtomicBool, Ordering};

static ENABLED: AtomicBool = AtomicBool::new(cfg!(feature = "parallel"));

/// Work lists shorter than this run sequentially even in parallel mode.
pub const MIN_PARALLEL_LEN: usize = 8;

/// Toggle parallel execution at runtime. Has no effect without the
/// `parallel` feature.
pub fn set_parallel(on: bool) {
    ENABLED.store(on && cfg!(feature = "parallel"), Ordering::Relaxed);
}

pub fn is_parallel() -> bool {
    ENABLED.load(Ordering::Relaxed)
}

#[cfg_attr(not(feature = "parallel"), allow(dead_code))]
fn go_parallel(len: usize) -> bool {
    is_parallel() && len >= MIN_PARALLEL_LEN
}

/// First `Some` result in input order.
pub fn find_map_first<T, R, F>(items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if go_parallel(items.len()) {
        use rayon::prelude::*;
        return items.par_iter().find_map_first(f);
    }
    items.iter().find_map(f)
}

pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if go_parallel(items.len()) {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

/// Map over `0..n`, keeping order.
pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if go_parallel(n) {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    (0..n).map(f).collect()
}

/// Smallest index in `0..n` satisfying `pred`.
pub fn position_range<F>(n: usize, pred: F) -> Option<usize>
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if go_parallel(n) {
        use rayon::prelude::*;
        return (0..n).into_par_iter().find_first(|&i| pred(i));
    }
    (0..n).find(|&i| pred(i))
}
