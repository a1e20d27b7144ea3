//! Seam between the data-parallel and sequential execution paths. The
//! `parallel` feature routes batch work through rayon; without it the same
//! API degrades to a plain iterator. Both paths preserve input order, so
//! results are identical either way.

#[cfg(feature = "parallel")]
pub(crate) fn map_ordered<I, O, F>(items: &[I], f: F) -> Vec<O>
where
    I: Sync,
    O: Send,
    F: Fn(&I) -> O + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_ordered<I, O, F>(items: &[I], f: F) -> Vec<O>
where
    F: Fn(&I) -> O,
{
    items.iter().map(f).collect()
}
