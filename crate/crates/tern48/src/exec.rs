use rayon::prelude::*;
use tern48_core::exec::Executor;

/// A rayon thread pool as an [`Executor`].
pub struct Pool {
    pool: rayon::ThreadPool,
}

impl Pool {
    /// A pool of `threads` workers, or one per available core.
    pub fn new(threads: Option<usize>) -> anyhow::Result<Self> {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(t) = threads {
            b = b.num_threads(t.max(1));
        }
        Ok(Pool { pool: b.build()? })
    }
}

impl Executor for Pool {
    fn map_reduce<R, M, F>(&self, n: usize, identity: R, map: M, reduce: F) -> R
    where
        R: Send,
        M: Fn(usize) -> R + Sync,
        F: Fn(R, R) -> R + Sync,
    {
        let all = self.pool.install(|| (0..n).into_par_iter().map(&map).reduce_with(&reduce));
        match all {
            Some(r) => reduce(identity, r),
            None => identity,
        }
    }

    fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tern48_core::exec::Sequential;

    #[test]
    fn agrees_with_sequential() {
        let pool = Pool::new(Some(3)).unwrap();
        assert_eq!(pool.threads(), 3);
        let f = |i: usize| vec![i * i];
        let cat = |mut a: Vec<usize>, b: Vec<usize>| {
            a.extend(b);
            a
        };
        assert_eq!(pool.map_reduce(100, Vec::new(), f, cat), Sequential.map_reduce(100, Vec::new(), f, cat));
    }
}
