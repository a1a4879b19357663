//! Parallel execution wrappers.
//!
//! Parallelism never changes outputs: optimizer fitness jobs are pure
//! functions of their matrix, and simulation trials draw from per-trial
//! RNG streams and aggregate through commutative integer sums. The
//! `--parallelism` flag therefore affects wall time only.

use protoldpc_core::graph::TannerGraph;
use protoldpc_core::opt::{candidate_fitness, FitnessEvaluator};
use protoldpc_core::sim::{simulate_batch, stats_from_batches, ChannelConfig, ErrorStats};
use rayon::prelude::*;

/// Trials per work unit; small enough to balance, large enough that
/// stream setup is amortized.
const TRIAL_CHUNK: usize = 256;

/// Fitness evaluator fanning candidate thresholds across the rayon pool.
pub struct RayonEvaluator;

impl FitnessEvaluator for RayonEvaluator {
    fn evaluate(&self, jobs: &[protoldpc_core::proto::BaseMatrix], tolerance: f64, t_max: usize, delta: f64) -> Vec<f64> {
        jobs.par_iter().map(|m| candidate_fitness(m, tolerance, t_max, delta)).collect()
    }
}

/// [`protoldpc_core::sim::simulate`] with trials fanned across the pool
/// in fixed chunks; bit-identical to the sequential run.
pub fn parallel_simulate(t: &TannerGraph, cfg: &ChannelConfig) -> Result<ErrorStats, protoldpc_core::sim::ChannelError> {
    cfg.validate()?;
    let ranges: Vec<(usize, usize)> = (0..cfg.trials)
        .step_by(TRIAL_CHUNK)
        .map(|lo| (lo, (lo + TRIAL_CHUNK).min(cfg.trials)))
        .collect();
    let batches: Vec<_> =
        ranges.par_iter().map(|&(lo, hi)| simulate_batch(t, cfg, lo, hi)).collect();
    Ok(stats_from_batches(t, cfg, batches))
}
