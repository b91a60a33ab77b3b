//! Timing of the full-separability test on full-support product states.

use std::time::Instant;

use sepcheck_core::{is_fully_separable, random_structured_state, Tolerances};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: usize,
    pub amplitudes: usize,
    pub reps: usize,
    pub mean_ns: u64,
    pub pair_products: u64,
    pub pair_comparisons: u64,
    pub wf_comparisons: u64,
}

/// One untimed warm-up call, then `reps` timed calls per size.
pub fn run(n_min: usize, n_max: usize, reps: usize, seed: u64, tol: &Tolerances) -> Vec<BenchRow> {
    let reps = reps.max(1);
    (n_min.max(1)..=n_max)
        .map(|n| {
            let state = random_structured_state(&vec![1; n], seed.wrapping_add(n as u64), None)
                .expect("valid block sizes");
            let warm = is_fully_separable(&state, tol);
            assert!(warm.separable, "benchmark state must be a product");
            let start = Instant::now();
            for _ in 0..reps {
                std::hint::black_box(is_fully_separable(std::hint::black_box(&state), tol));
            }
            let mean_ns = (start.elapsed().as_nanos() / reps as u128) as u64;
            BenchRow {
                n,
                amplitudes: state.dim(),
                reps,
                mean_ns,
                pair_products: warm.counters.pair_products,
                pair_comparisons: warm.counters.pair_comparisons,
                wf_comparisons: warm.counters.wf_comparisons,
            }
        })
        .collect()
}
