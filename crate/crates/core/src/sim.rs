//! Binary erasure channel simulation on lifted Tanner graphs.
//!
//! The decoder of record is peeling: repeatedly resolve a check with exactly
//! one erased neighbor until none remains. The residual is the maximal
//! stopping set inside the erasure pattern, so the result is independent of
//! processing order. [`simulate`] wraps peeling in a Monte Carlo loop with
//! per-trial RNG streams and order-insensitive integer aggregation, which
//! keeps results bit-exact under any trial scheduling.
//!
//! A separate flooding (parallel-schedule) decoder reports per-iteration
//! bit-erasure rates; on a graph of girth `g` those match protograph density
//! evolution exactly for the first [`tree_iteration_budget`]`(g)` iterations,
//! which is the empirical bridge between the graph construction and the
//! threshold analysis.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use rand::Rng;

use crate::de::{de_step, ErasureState};
use crate::graph::{Girth, TannerGraph};
use crate::proto::Protograph;
use crate::rng::{stream, StreamKind};

/// Two-sided 95% normal quantile used for Wilson intervals.
const Z_95: f64 = 1.96;

/// Monte Carlo channel settings.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelConfig {
    /// Erasure probability, in `[0, 1]`.
    pub epsilon: f64,
    /// Number of independent trials; at least 1.
    pub trials: usize,
    /// Master seed; trial `t` draws from the stream `(seed, ChannelTrial, t, 0)`.
    pub seed: u64,
    /// Cap on peeling waves per trial; `None` lets peeling terminate
    /// naturally, which it always does.
    pub max_peel_rounds: Option<usize>,
}

impl ChannelConfig {
    /// Unbounded-peeling config; validates the channel parameters.
    pub fn new(epsilon: f64, trials: usize, seed: u64) -> Result<Self, ChannelError> {
        let cfg = ChannelConfig { epsilon, trials, seed, max_peel_rounds: None };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ChannelError> {
        if !(0.0..=1.0).contains(&self.epsilon) {
            return Err(ChannelError::EpsilonOutOfRange { got: self.epsilon });
        }
        if self.trials == 0 {
            return Err(ChannelError::ZeroTrials);
        }
        Ok(())
    }
}

/// Rejected [`ChannelConfig`] field combinations.
#[derive(Clone, Debug, PartialEq)]
pub enum ChannelError {
    EpsilonOutOfRange { got: f64 },
    ZeroTrials,
}

impl fmt::Display for ChannelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChannelError::EpsilonOutOfRange { got } => {
                write!(f, "epsilon {got} outside [0, 1]")
            }
            ChannelError::ZeroTrials => write!(f, "trials must be at least 1"),
        }
    }
}

impl core::error::Error for ChannelError {}

/// Aggregated Monte Carlo error estimates.
///
/// `block_error_rate == 0` iff `bit_error_rate == 0`, and
/// `block_error_rate >= bit_error_rate` always, because a block error is any
/// trial with at least one unresolved bit.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorStats {
    /// Mean fraction of variables left erased per trial.
    pub bit_error_rate: f64,
    /// Fraction of trials with a nonempty residual.
    pub block_error_rate: f64,
    pub trials: usize,
    /// Wilson 95% confidence interval for `block_error_rate`.
    pub wilson_interval_95: (f64, f64),
    /// `tree_iteration_budget` of the graph's girth lower bound, for
    /// reference; `None` means unbounded (acyclic source).
    pub girth_iteration_budget: Option<u32>,
}

/// Number of decoder iterations whose computation graph is guaranteed
/// cycle-free on a graph of the given girth: `floor((girth - 2) / 4)`.
///
/// `Girth::Infinite` (a forest) returns `None`, meaning every iteration
/// count is tree-like.
pub fn tree_iteration_budget(girth: Girth) -> Option<u32> {
    match girth {
        Girth::Finite(g) => Some(g.saturating_sub(2) / 4),
        Girth::Infinite => None,
    }
}

/// Wilson score 95% confidence interval for `successes / trials`.
///
/// Bounds are clamped to `[0, 1]`. `trials` must be nonzero.
pub fn wilson_interval_95(successes: u64, trials: u64) -> (f64, f64) {
    assert!(trials > 0, "interval needs at least one trial");
    assert!(successes <= trials, "more successes than trials");
    let n = trials as f64;
    let p = successes as f64 / n;
    let zz = Z_95 * Z_95;
    let denom = 1.0 + zz / n;
    let center = (p + zz / (2.0 * n)) / denom;
    let half = Z_95 * libm::sqrt(p * (1.0 - p) / n + zz / (4.0 * n * n)) / denom;
    // The analytic bounds at p = 0 and p = 1 are exactly 0 and 1; snap them
    // so rounding cannot push an endpoint inside the open interval.
    let lo = if successes == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if successes == trials { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

/// Peeling workspace bound to one Tanner graph, reusable across trials.
struct Peeler {
    edge_check: Vec<u32>,
    variable_edges: Vec<Vec<u32>>,
    check_targets: Vec<Vec<u32>>,
    erased_count: Vec<u32>,
    current: Vec<u32>,
    next: Vec<u32>,
}

impl Peeler {
    fn new(t: &TannerGraph) -> Self {
        let mut variable_edges = vec![Vec::new(); t.variable_count()];
        let mut check_targets = vec![Vec::new(); t.check_count()];
        let mut edge_check = Vec::with_capacity(t.edges().len());
        for (e, edge) in t.edges().iter().enumerate() {
            variable_edges[edge.variable as usize].push(e as u32);
            check_targets[edge.check as usize].push(edge.variable);
            edge_check.push(edge.check);
        }
        Peeler {
            edge_check,
            variable_edges,
            check_targets,
            erased_count: vec![0; t.check_count()],
            current: Vec::new(),
            next: Vec::new(),
        }
    }

    /// Peels `erased` in place and returns the residual size.
    ///
    /// A wave resolves every check that had exactly one erased neighbor at
    /// the start of the wave; `max_rounds` caps the number of waves. Counts
    /// go stale as neighbors resolve, so a popped check is re-tested and
    /// skipped unless its count is still exactly 1.
    fn peel(&mut self, erased: &mut [bool], max_rounds: Option<usize>) -> usize {
        let mut residual = erased.iter().filter(|&&e| e).count();
        for count in self.erased_count.iter_mut() {
            *count = 0;
        }
        for (targets, count) in self.check_targets.iter().zip(self.erased_count.iter_mut()) {
            *count = targets.iter().filter(|&&v| erased[v as usize]).count() as u32;
        }
        self.current.clear();
        self.next.clear();
        for (c, &count) in self.erased_count.iter().enumerate() {
            if count == 1 {
                self.current.push(c as u32);
            }
        }
        let cap = max_rounds.unwrap_or(usize::MAX);
        let mut rounds = 0;
        while !self.current.is_empty() && rounds < cap {
            for idx in 0..self.current.len() {
                let c = self.current[idx] as usize;
                if self.erased_count[c] != 1 {
                    continue;
                }
                let v = *self.check_targets[c]
                    .iter()
                    .find(|&&v| erased[v as usize])
                    .expect("count 1 means one erased neighbor");
                erased[v as usize] = false;
                residual -= 1;
                for &e in &self.variable_edges[v as usize] {
                    let c2 = self.edge_check[e as usize] as usize;
                    self.erased_count[c2] -= 1;
                    if self.erased_count[c2] == 1 {
                        self.next.push(c2 as u32);
                    }
                }
            }
            core::mem::swap(&mut self.current, &mut self.next);
            self.next.clear();
            rounds += 1;
        }
        residual
    }
}

/// Runs peeling to completion on one erasure pattern.
///
/// `erased[v]` marks variable `v` erased; the returned mask is the residual,
/// the maximal stopping set contained in the input. The result does not
/// depend on the order checks are processed in.
pub fn peel_decode(t: &TannerGraph, erased: &[bool]) -> Vec<bool> {
    assert_eq!(erased.len(), t.variable_count(), "mask length mismatch");
    let mut mask = erased.to_vec();
    Peeler::new(t).peel(&mut mask, None);
    mask
}

/// True iff every check sees 0 or at least 2 erased incident edges.
///
/// Parallel edges count separately: a variable joined to a check by two
/// edges contributes 2, and such a check indeed cannot resolve it.
pub fn is_stopping_set(t: &TannerGraph, erased: &[bool]) -> bool {
    assert_eq!(erased.len(), t.variable_count(), "mask length mismatch");
    let mut count = vec![0u32; t.check_count()];
    for edge in t.edges() {
        if erased[edge.variable as usize] {
            count[edge.check as usize] += 1;
        }
    }
    count.iter().all(|&c| c != 1)
}

/// Order-insensitive partial aggregate of simulation trials.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TrialBatch {
    pub trials: u64,
    /// Total residual erased variables across the batch.
    pub residual_bits: u64,
    /// Trials with a nonempty residual.
    pub failed_blocks: u64,
}

impl TrialBatch {
    pub fn merge(&mut self, other: &TrialBatch) {
        self.trials += other.trials;
        self.residual_bits += other.residual_bits;
        self.failed_blocks += other.failed_blocks;
    }
}

/// Simulates the half-open trial range `lo..hi` of `cfg`'s schedule.
///
/// Trial `t` is fully determined by `(cfg.seed, t)`, so disjoint ranges can
/// run in any order or in parallel and merge into the same totals.
pub fn simulate_batch(t: &TannerGraph, cfg: &ChannelConfig, lo: usize, hi: usize) -> TrialBatch {
    let n = t.variable_count();
    let mut peeler = Peeler::new(t);
    let mut mask = vec![false; n];
    let mut batch = TrialBatch::default();
    for trial in lo..hi {
        let mut rng = stream(cfg.seed, StreamKind::ChannelTrial, trial as u64, 0);
        for slot in mask.iter_mut() {
            *slot = rng.random::<f64>() < cfg.epsilon;
        }
        let residual = peeler.peel(&mut mask, cfg.max_peel_rounds);
        batch.trials += 1;
        batch.residual_bits += residual as u64;
        batch.failed_blocks += (residual > 0) as u64;
    }
    batch
}

/// Folds batch totals into [`ErrorStats`]; the batches must together cover
/// exactly `cfg.trials` trials.
pub fn stats_from_batches<I>(t: &TannerGraph, cfg: &ChannelConfig, batches: I) -> ErrorStats
where
    I: IntoIterator<Item = TrialBatch>,
{
    let mut total = TrialBatch::default();
    for batch in batches {
        total.merge(&batch);
    }
    assert_eq!(total.trials, cfg.trials as u64, "batches must cover all trials");
    let n = t.variable_count() as u64;
    ErrorStats {
        bit_error_rate: total.residual_bits as f64 / (total.trials * n) as f64,
        block_error_rate: total.failed_blocks as f64 / total.trials as f64,
        trials: cfg.trials,
        wilson_interval_95: wilson_interval_95(total.failed_blocks, total.trials),
        girth_iteration_budget: tree_iteration_budget(t.girth_lower_bound()),
    }
}

/// Monte Carlo bit- and block-error estimation under BEC(`cfg.epsilon`).
///
/// Each trial erases every variable independently, peels, and records the
/// residual. Identical seeds give identical stats regardless of how trials
/// are scheduled.
pub fn simulate(t: &TannerGraph, cfg: &ChannelConfig) -> Result<ErrorStats, ChannelError> {
    cfg.validate()?;
    let batch = simulate_batch(t, cfg, 0, cfg.trials);
    Ok(stats_from_batches(t, cfg, [batch]))
}

/// Empirical per-iteration erasure rate from the flooding decoder.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IterationRate {
    /// Mean fraction of variables still erased after the iteration.
    pub mean: f64,
    /// Monte Carlo standard error of that mean.
    pub std_error: f64,
}

/// Flooding (parallel-schedule) message-passing workspace.
///
/// Messages are binary: a message is erased or known. Variable-to-check
/// messages start as the channel state; each iteration recomputes all
/// check-to-variable messages, then all variable-to-check messages, with the
/// receiving edge excluded on both sides. A variable is resolved once its
/// channel value is known or any incoming check message is known.
struct Flooder {
    edge_variable: Vec<u32>,
    edge_check: Vec<u32>,
    variable_edges: Vec<Vec<u32>>,
    check_edges: Vec<Vec<u32>>,
    msg_vc: Vec<bool>,
    msg_cv: Vec<bool>,
    erased_in: Vec<u32>,
    known_in: Vec<u32>,
}

impl Flooder {
    fn new(t: &TannerGraph) -> Self {
        let mut variable_edges = vec![Vec::new(); t.variable_count()];
        let mut check_edges = vec![Vec::new(); t.check_count()];
        let mut edge_variable = Vec::with_capacity(t.edges().len());
        let mut edge_check = Vec::with_capacity(t.edges().len());
        for (e, edge) in t.edges().iter().enumerate() {
            variable_edges[edge.variable as usize].push(e as u32);
            check_edges[edge.check as usize].push(e as u32);
            edge_variable.push(edge.variable);
            edge_check.push(edge.check);
        }
        let edges = t.edges().len();
        Flooder {
            edge_variable,
            edge_check,
            variable_edges,
            check_edges,
            msg_vc: vec![false; edges],
            msg_cv: vec![false; edges],
            erased_in: vec![0; t.check_count()],
            known_in: vec![0; t.variable_count()],
        }
    }

    /// Runs `iterations` flooding iterations on one channel realization.
    ///
    /// `on_iteration(t, unresolved)` fires after each iteration `t` in
    /// `1..=iterations` with the number of still-erased variables. Returns
    /// the final erasure mask.
    fn run(
        &mut self,
        erased: &[bool],
        iterations: usize,
        mut on_iteration: impl FnMut(usize, usize),
    ) -> Vec<bool> {
        for (m, &e) in self.msg_vc.iter_mut().zip(&self.edge_variable) {
            *m = erased[e as usize];
        }
        let mut mask = erased.to_vec();
        for round in 1..=iterations {
            for (count, edges) in self.erased_in.iter_mut().zip(&self.check_edges) {
                *count = edges.iter().filter(|&&e| self.msg_vc[e as usize]).count() as u32;
            }
            for e in 0..self.msg_cv.len() {
                let c = self.edge_check[e] as usize;
                self.msg_cv[e] = self.erased_in[c] - self.msg_vc[e] as u32 > 0;
            }
            for (count, edges) in self.known_in.iter_mut().zip(&self.variable_edges) {
                *count = edges.iter().filter(|&&e| !self.msg_cv[e as usize]).count() as u32;
            }
            let mut unresolved = 0;
            for (slot, (&was, &known)) in
                mask.iter_mut().zip(erased.iter().zip(&self.known_in))
            {
                *slot = was && known == 0;
                unresolved += *slot as usize;
            }
            on_iteration(round, unresolved);
            for e in 0..self.msg_vc.len() {
                let v = self.edge_variable[e] as usize;
                let known_elsewhere = self.known_in[v] - !self.msg_cv[e] as u32;
                self.msg_vc[e] = erased[v] && known_elsewhere == 0;
            }
        }
        mask
    }
}

/// Per-iteration empirical bit-erasure rates under flooding decoding.
///
/// Runs `trials` independent channel realizations (streams
/// `(seed, FloodTrial, trial, 0)`) for `iterations` flooding iterations each
/// and reports the mean erased fraction and its standard error per
/// iteration. On a graph of girth `g`, iterations `1..=tree_iteration_budget(g)`
/// match [`de_bit_erasure_curve`] of the lifted protograph in expectation.
pub fn flood_erasure_rates(
    t: &TannerGraph,
    epsilon: f64,
    iterations: usize,
    trials: usize,
    seed: u64,
) -> Vec<IterationRate> {
    assert!((0.0..=1.0).contains(&epsilon), "epsilon out of [0,1]");
    assert!(trials > 0, "at least one trial");
    let n = t.variable_count();
    let mut flooder = Flooder::new(t);
    let mut sums = vec![0u64; iterations];
    let mut squares = vec![0u128; iterations];
    let mut mask = vec![false; n];
    for trial in 0..trials {
        let mut rng = stream(seed, StreamKind::FloodTrial, trial as u64, 0);
        for slot in mask.iter_mut() {
            *slot = rng.random::<f64>() < epsilon;
        }
        flooder.run(&mask, iterations, |round, unresolved| {
            sums[round - 1] += unresolved as u64;
            squares[round - 1] += (unresolved as u128) * (unresolved as u128);
        });
    }
    let trials_f = trials as f64;
    let n_f = n as f64;
    sums.iter()
        .zip(&squares)
        .map(|(&sum, &square)| {
            let mean = sum as f64 / (trials_f * n_f);
            let second = square as f64 / (trials_f * n_f * n_f);
            let variance = (second - mean * mean).max(0.0);
            IterationRate { mean, std_error: libm::sqrt(variance / trials_f) }
        })
        .collect()
}

/// Density-evolution prediction of the flooding decoder's bit-erasure rate.
///
/// Entry `t - 1` is the probability that a variable is still erased after
/// iteration `t`, averaged uniformly over protograph variables:
/// `eps * prod_{e at v} y_t(e)` with `y_t` from the DE recursion. Uniform
/// averaging matches any lifting, since every proto variable gets the same
/// number of copies.
pub fn de_bit_erasure_curve(p: &Protograph, epsilon: f64, iterations: usize) -> Vec<f64> {
    assert!((0.0..=1.0).contains(&epsilon), "epsilon out of [0,1]");
    let mut state = ErasureState::initial(p, epsilon);
    let mut curve = Vec::with_capacity(iterations);
    for _ in 0..iterations {
        state = de_step(p, &state, epsilon);
        let mut acc = 0.0;
        for v in 0..p.variable_count() {
            let mut prod = 1.0;
            for &e in p.edges_at_variable(v) {
                prod *= state.y[e as usize];
            }
            acc += epsilon * prod;
        }
        curve.push(acc / p.variable_count() as f64);
    }
    curve
}
