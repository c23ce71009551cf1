//! Seeded Monte Carlo estimation of empirical Type I error and power.
//!
//! Replicate `i` of a run draws its RGG from the child stream keyed by
//! `(master seed, i)` and applies the dimension test. Because replicates
//! never share random state and aggregation is commutative integer counting,
//! the resulting [`SimReport`] is bit-identical across runs and across any
//! number of worker threads.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::dimtest::{run_test, TestResult};
use crate::error::{Error, Result};
use crate::geometry::{generate_rgg, RggParams};
use crate::rng::child_seed;

/// One simulation cell: data-generating RGG parameters, the hypothesis, the
/// level, the replicate count, and the master seed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimConfig {
    pub n: usize,
    pub m: usize,
    pub r: f64,
    pub m0: u32,
    pub alpha: f64,
    pub reps: u64,
    pub seed: u64,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        RggParams::new(self.n, self.m, self.r, self.seed)?;
        if self.n < 4 {
            return Err(Error::TooFewNodes { n: self.n });
        }
        if self.m0 < 1 {
            return Err(Error::InvalidParams(
                "hypothesized dimension m0 must be at least 1".into(),
            ));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidParams(format!(
                "significance level must lie in (0, 1), got {}",
                self.alpha
            )));
        }
        if self.reps < 1 {
            return Err(Error::InvalidParams(
                "replicate count must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Result of a single replicate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ReplicateOutcome {
    Tested(TestResult),
    /// The variance estimate was non-positive on this replicate's graph.
    Degenerate,
}

/// Empirical rejection summary of one cell.
#[derive(Clone, Debug, PartialEq)]
pub struct SimReport {
    pub config: SimConfig,
    pub rejections: u64,
    /// Replicates excluded because the variance estimate was non-positive.
    pub degenerate_count: u64,
    /// `rejections / (reps - degenerate_count)`.
    pub rejection_rate: f64,
    /// Binomial standard error of the rejection rate.
    pub std_error: f64,
}

/// Generate and test replicate `replicate_index`; deterministic per
/// `(config, index)`.
pub fn run_replicate(config: &SimConfig, replicate_index: u64) -> Result<ReplicateOutcome> {
    config.validate()?;
    Ok(replicate_unchecked(config, replicate_index))
}

fn replicate_unchecked(config: &SimConfig, replicate_index: u64) -> ReplicateOutcome {
    let params = RggParams {
        n: config.n,
        m: config.m,
        r: config.r,
        seed: child_seed(config.seed, replicate_index),
    };
    let (_, adjacency) = generate_rgg(&params).expect("config validated");
    match run_test(&adjacency, config.m0, config.alpha) {
        Ok(result) => ReplicateOutcome::Tested(result),
        Err(Error::DegenerateVariance { .. }) => ReplicateOutcome::Degenerate,
        Err(other) => unreachable!("config validated: {other}"),
    }
}

/// Aggregate `run_replicate` over indices `0..reps` on one thread.
pub fn estimate_rejection_rate(config: &SimConfig) -> Result<SimReport> {
    estimate_rejection_rate_with_threads(config, 1)
}

/// Same estimate with `threads` workers. The report does not depend on the
/// thread count: replicates are keyed by index and the counts commute.
pub fn estimate_rejection_rate_with_threads(
    config: &SimConfig,
    threads: usize,
) -> Result<SimReport> {
    config.validate()?;
    if threads < 1 {
        return Err(Error::InvalidParams(
            "thread count must be at least 1".into(),
        ));
    }

    let (rejections, degenerate_count) = if threads == 1 {
        let mut rejections = 0u64;
        let mut degenerate = 0u64;
        for index in 0..config.reps {
            match replicate_unchecked(config, index) {
                ReplicateOutcome::Tested(result) if result.reject => rejections += 1,
                ReplicateOutcome::Tested(_) => {}
                ReplicateOutcome::Degenerate => degenerate += 1,
            }
        }
        (rejections, degenerate)
    } else {
        let next = AtomicU64::new(0);
        std::thread::scope(|scope| {
            let workers: Vec<_> = (0..threads)
                .map(|_| {
                    scope.spawn(|| {
                        let mut rejections = 0u64;
                        let mut degenerate = 0u64;
                        loop {
                            let index = next.fetch_add(1, Ordering::Relaxed);
                            if index >= config.reps {
                                break;
                            }
                            match replicate_unchecked(config, index) {
                                ReplicateOutcome::Tested(result) if result.reject => {
                                    rejections += 1
                                }
                                ReplicateOutcome::Tested(_) => {}
                                ReplicateOutcome::Degenerate => degenerate += 1,
                            }
                        }
                        (rejections, degenerate)
                    })
                })
                .collect();
            workers.into_iter().fold((0, 0), |(r, d), handle| {
                let (wr, wd) = handle.join().expect("worker panicked");
                (r + wr, d + wd)
            })
        })
    };

    let effective = config.reps - degenerate_count;
    if effective == 0 {
        return Err(Error::AllReplicatesDegenerate { reps: config.reps });
    }
    let rejection_rate = rejections as f64 / effective as f64;
    let std_error = (rejection_rate * (1.0 - rejection_rate) / effective as f64).sqrt();
    Ok(SimReport {
        config: *config,
        rejections,
        degenerate_count,
        rejection_rate,
        std_error,
    })
}
