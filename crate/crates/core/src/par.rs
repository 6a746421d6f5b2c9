//! Order-preserving data parallelism. Results never depend on the number of
//! worker threads: maps collect in index order and reductions are maxima.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub(crate) fn map_indexed<T: Send>(count: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    #[cfg(feature = "parallel")]
    {
        (0..count).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..count).map(f).collect()
    }
}

pub(crate) fn map_slice<S: Sync, T: Send>(
    items: &[S],
    f: impl Fn(&S) -> T + Sync + Send,
) -> Vec<T> {
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

pub(crate) fn max_over<S: Sync>(items: &[S], f: impl Fn(&S) -> f64 + Sync + Send) -> f64 {
    map_slice(items, f).into_iter().fold(0.0, f64::max)
}
