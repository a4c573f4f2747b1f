//! Data-parallel helpers. With the `parallel` feature (default) the maps run
//! on the rayon pool; without it they fall back to plain sequential iteration.
//! Result order matches input order either way.
//!
//! Only coarse tasks come through here (one rank-computation complex per
//! item); pattern enumeration stays sequential because its per-subdiagram
//! work is microseconds and split overhead dominates.

#[cfg(feature = "parallel")]
pub(crate) fn map_collect<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Send + Sync,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_collect<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Send + Sync,
{
    items.into_iter().map(f).collect()
}
