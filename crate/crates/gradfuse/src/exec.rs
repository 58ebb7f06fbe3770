//! Row- and item-level execution helpers.
//!
//! With the `parallel` feature the closures run on the rayon pool; without it
//! they run sequentially. Every call site computes items independently, so
//! both modes produce bit-identical output.

#[cfg(feature = "parallel")]
pub(crate) fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Send + Sync,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Send + Sync,
{
    (0..n).map(f).collect()
}

/// Maps `f` over `0..rows` and concatenates the per-row vectors in row order.
pub(crate) fn flat_map_rows<T, F>(rows: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> Vec<T> + Send + Sync,
{
    map_indexed(rows, f).into_iter().flatten().collect()
}
