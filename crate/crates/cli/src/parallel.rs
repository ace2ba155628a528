//! Runs a search plan's root branches on a thread pool.

use planecode::antipodal::PartialLinearSpace;
use planecode::search::{SearchOptions, SearchOutcome, SearchPlan};
use planecode::Plane;
use rayon::prelude::*;

/// Thread count from the flag, then `PLANECODE_THREADS`, then the machine.
pub fn thread_count(flag: Option<usize>) -> usize {
    flag.or_else(|| std::env::var("PLANECODE_THREADS").ok()?.parse().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

pub fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
}

/// Same result as [`SearchPlan::run`], statistics included: branches run in
/// waves of `threads`, and only the prefix of branches up to the one that
/// reaches the cap is merged.
pub fn embed_search_parallel(
    pls: &PartialLinearSpace,
    plane: &Plane,
    options: SearchOptions,
    pool: &rayon::ThreadPool,
) -> SearchOutcome {
    let plan = SearchPlan::new(pls, plane, options);
    if plan.is_trivially_empty() {
        return plan.run();
    }
    let n = plan.num_branches();
    let wave = pool.current_num_threads().max(1);
    let mut outcomes = Vec::with_capacity(n);
    let mut found = 0;
    let mut start = 0;
    while start < n && found < options.cap {
        let end = (start + wave).min(n);
        let batch: Vec<_> = pool.install(|| {
            (start..end)
                .into_par_iter()
                .map(|i| plan.run_branch(i).expect("index in range"))
                .collect()
        });
        for o in batch {
            if found >= options.cap {
                break;
            }
            found += o.embeddings.len();
            outcomes.push(o);
        }
        start = end;
    }
    plan.merge(&outcomes)
}
