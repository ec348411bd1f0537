//! Rayon-backed candidate evaluation for the exhaustive optimizers.

use popmatch_core::capopt::{BatchStrategy, Probe};
use popmatch_core::{CapacityChange, Matching};
use rayon::prelude::*;
use rayon::ThreadPool;

/// Probes a batch on a thread pool. `find_map_first` keeps the earliest
/// hit in batch order, so answers do not depend on the worker count.
pub struct Pooled {
    pool: ThreadPool,
    batch: usize,
}

impl Pooled {
    pub fn new(workers: usize) -> Result<Self, rayon::ThreadPoolBuildError> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build()?;
        Ok(Pooled {
            pool,
            batch: 1024 * workers.max(1),
        })
    }

    pub fn workers(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl BatchStrategy for Pooled {
    fn first_hit(&self, batch: &[CapacityChange], probe: &Probe<'_>) -> Option<(usize, Matching)> {
        self.pool.install(|| {
            batch
                .par_iter()
                .enumerate()
                .find_map_first(|(i, c)| probe(c).map(|m| (i, m)))
        })
    }

    fn batch_size(&self) -> usize {
        self.batch
    }
}
