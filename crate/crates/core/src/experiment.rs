//! Randomized experiments on matrices with a known factor count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::data::{random_factorizable_with, GradeDistribution};
use crate::error::{Error, Result};
use crate::factorization::{find_factors_with, FindOptions, TieBreak};
use crate::par::Execution;
use crate::scale::Scale;

/// Summary of greedy factor counts over many `k`-factorizable matrices.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentStats {
    pub k: usize,
    pub trials: usize,
    pub mean_factors: f64,
    /// Sample standard deviation (`n - 1` denominator).
    pub std_dev: f64,
    pub min_factors: usize,
    pub max_factors: usize,
}

impl ExperimentStats {
    pub fn from_counts(k: usize, counts: &[usize]) -> Self {
        let n = counts.len();
        let mean = counts.iter().sum::<usize>() as f64 / n as f64;
        let var = if n > 1 {
            counts
                .iter()
                .map(|&c| (c as f64 - mean).powi(2))
                .sum::<f64>()
                / (n - 1) as f64
        } else {
            0.0
        };
        ExperimentStats {
            k,
            trials: n,
            mean_factors: mean,
            std_dev: var.sqrt(),
            min_factors: counts.iter().copied().min().unwrap_or(0),
            max_factors: counts.iter().copied().max().unwrap_or(0),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FactorizabilityConfig {
    pub rows: usize,
    pub cols: usize,
    pub ks: Vec<usize>,
    pub trials: usize,
    pub scale: Scale,
    pub distribution: GradeDistribution,
    pub seed: u64,
    pub tie_break: TieBreak,
    pub execution: Execution,
}

impl FactorizabilityConfig {
    /// 20 × 20 matrices with uniformly distributed grades.
    pub fn new(scale: Scale, ks: Vec<usize>, trials: usize, seed: u64) -> Self {
        FactorizabilityConfig {
            rows: 20,
            cols: 20,
            ks,
            trials,
            distribution: GradeDistribution::uniform(&scale),
            scale,
            seed,
            tie_break: TieBreak::default(),
            execution: Execution::default(),
        }
    }
}

/// The random stream for one trial depends only on `(seed, k, trial)`.
pub fn trial_rng(seed: u64, k: usize, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((k as u64) << 32) | trial as u64);
    rng
}

/// Greedy factor counts of one trial batch for a single `k`.
pub fn factor_counts(cfg: &FactorizabilityConfig, k: usize) -> Result<Vec<usize>> {
    // trials run in parallel, each greedy run sequentially
    let opts = FindOptions::default()
        .with_tie_break(cfg.tie_break)
        .with_execution(Execution::Sequential);
    cfg.execution
        .map(cfg.trials, |t| {
            let mut rng = trial_rng(cfg.seed, k, t);
            let m = random_factorizable_with(
                &mut rng,
                cfg.rows,
                cfg.cols,
                k,
                cfg.scale,
                &cfg.distribution,
            )?;
            let f = find_factors_with(&m, &opts);
            if !f.is_complete() {
                return Err(Error::Config(format!(
                    "trial {t} for k = {k} did not decompose exactly"
                )));
            }
            Ok(f.len())
        })
        .into_iter()
        .collect()
}

pub fn factorizability_experiment(cfg: &FactorizabilityConfig) -> Result<Vec<ExperimentStats>> {
    if cfg.trials == 0 {
        return Err(Error::Config("trials must be at least 1".into()));
    }
    cfg.ks
        .iter()
        .map(|&k| Ok(ExperimentStats::from_counts(k, &factor_counts(cfg, k)?)))
        .collect()
}
