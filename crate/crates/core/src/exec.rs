//! Parallel/sequential dispatch.
//!
//! Grid sweeps and batch curve evaluation fan out through [`map_collect`].
//! With the `parallel` feature (default) the work goes through rayon; without
//! it the same call is a plain sequential map. Either way the output order
//! matches the input order, so results are bit-identical across modes. The
//! CLI reuses this for its row fan-out, which is why it is public.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Below this many items the rayon path isn't worth the scheduling overhead.
#[cfg(feature = "parallel")]
const PARALLEL_CUTOFF: usize = 32;

/// Ordered map over `items`: rayon-parallel when the batch is large enough,
/// sequential otherwise. Output index i always corresponds to input index i.
#[cfg(feature = "parallel")]
pub fn map_collect<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    if items.len() < PARALLEL_CUTOFF {
        items.into_iter().map(f).collect()
    } else {
        items.into_par_iter().map(f).collect()
    }
}

/// Ordered sequential map; the signature matches the parallel variant so
/// callers compile unchanged with the feature off.
#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    items.into_iter().map(f).collect()
}
