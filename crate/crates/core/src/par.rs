//! Worker-pool plumbing.  With the `parallel` feature, index-parallel maps
//! dispatch to rayon; without it they run sequentially, so downstream code is
//! identical either way.

/// Map over 0..n preserving index order.
#[cfg(feature = "parallel")]
pub fn indexed_map<T: Send, F: Fn(usize) -> T + Sync + Send>(
    n: usize,
    workers: usize,
    f: F,
) -> Vec<T> {
    use rayon::prelude::*;
    if workers <= 1 {
        return (0..n).map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("worker pool");
    pool.install(|| (0..n).into_par_iter().map(|i| f(i)).collect())
}

#[cfg(not(feature = "parallel"))]
pub fn indexed_map<T: Send, F: Fn(usize) -> T + Sync + Send>(
    n: usize,
    _workers: usize,
    f: F,
) -> Vec<T> {
    (0..n).map(f).collect()
}

/// Effective worker count: explicit argument, else CHSTEP_WORKERS, else 1.
pub fn effective_workers(requested: Option<usize>) -> usize {
    match requested {
        Some(n) if n >= 1 => n,
        _ => std::env::var("CHSTEP_WORKERS")
            .ok()
            .and_then(|s| s.parse().ok())
            .filter(|&n| n >= 1)
            .unwrap_or(1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexed_map_preserves_order() {
        let v = indexed_map(100, 4, |i| i * i);
        assert!(v.iter().enumerate().all(|(i, &x)| x == i * i));
    }
}
