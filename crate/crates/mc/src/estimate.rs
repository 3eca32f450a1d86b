//! Parallel driver for Monte Carlo experiments.
//!
//! Trials are grouped in blocks of [`BLOCK`]; block b draws from stream
//! (seed, b). Each trial writes a vector of integer observations, and the
//! per-block sums and sums of squares are added exactly, so results do not
//! depend on the number of worker threads.

use rayon::prelude::*;

use crate::error::{McError, Result};
use crate::rng::{Gaussian, RngStream};

pub const BLOCK: u64 = 1024;

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct McConfig {
    pub seed: u64,
    /// Worker threads; 0 picks the rayon default.
    pub threads: usize,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig { seed: DEFAULT_SEED, threads: 0 }
    }
}

impl McConfig {
    pub fn new(seed: u64) -> Self {
        McConfig { seed, threads: 0 }
    }

    pub fn with_threads(self, threads: usize) -> Self {
        McConfig { threads, ..self }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tally {
    pub samples: u64,
    pub sum: Vec<i64>,
    pub sumsq: Vec<i64>,
}

impl Tally {
    fn new(width: usize) -> Self {
        Tally { samples: 0, sum: vec![0; width], sumsq: vec![0; width] }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.samples += other.samples;
        for (a, b) in self.sum.iter_mut().zip(other.sum) {
            *a += b;
        }
        for (a, b) in self.sumsq.iter_mut().zip(other.sumsq) {
            *a += b;
        }
        self
    }

    pub fn estimate(&self, i: usize, seed: u64) -> MCEstimate {
        let n = self.samples as f64;
        let s = self.sum[i] as f64;
        let mean = s / n;
        let var = if self.samples > 1 { ((self.sumsq[i] as f64 - s * mean) / (n - 1.0)).max(0.0) } else { 0.0 };
        MCEstimate { mean, stderr: (var / n).sqrt(), samples: self.samples, seed }
    }

    pub fn estimates(&self, seed: u64) -> Vec<MCEstimate> {
        (0..self.sum.len()).map(|i| self.estimate(i, seed)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MCEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

impl MCEstimate {
    /// An estimate known without sampling error.
    pub fn exact(value: f64, samples: u64, seed: u64) -> Self {
        MCEstimate { mean: value, stderr: 0.0, samples, seed }
    }

    pub fn z_score(&self, exact: f64) -> f64 {
        z_score(self.mean, self.stderr, exact)
    }

    /// z-score for a mean of 0/1 indicators. A sample without variation
    /// (say no events at all) is scored with the binomial standard error at
    /// the exact value.
    pub fn z_score_indicator(&self, exact: f64) -> f64 {
        if self.stderr > 0.0 {
            return self.z_score(exact);
        }
        let se = (exact * (1.0 - exact)).max(0.0).sqrt() / (self.samples as f64).sqrt();
        z_score(self.mean, se, exact)
    }
}

/// (mean - exact) / stderr; a zero stderr gives 0 on an exact hit and an
/// infinite score otherwise.
pub fn z_score(mean: f64, stderr: f64, exact: f64) -> f64 {
    let diff = mean - exact;
    if stderr > 0.0 {
        diff / stderr
    } else if diff.abs() <= 1e-12 * exact.abs().max(1.0) {
        0.0
    } else {
        diff.signum() * f64::INFINITY
    }
}

/// Run `samples` trials of `trial`, each filling `width` integer
/// observations (zeroed beforehand).
pub fn run_trials<F>(cfg: &McConfig, seed: u64, samples: u64, width: usize, trial: F) -> Result<Tally>
where
    F: Fn(&mut Gaussian, &mut [i64]) -> Result<()> + Sync,
{
    if samples < 2 {
        return Err(McError::InvalidArgument("need at least 2 samples".into()));
    }
    let blocks = samples.div_ceil(BLOCK);
    let run_block = |b: u64| -> Result<Tally> {
        let mut g = RngStream::new(seed, b).gaussian();
        let count = BLOCK.min(samples - b * BLOCK);
        let mut tally = Tally::new(width);
        let mut obs = vec![0i64; width];
        for _ in 0..count {
            obs.iter_mut().for_each(|o| *o = 0);
            trial(&mut g, &mut obs)?;
            for (i, &o) in obs.iter().enumerate() {
                tally.sum[i] += o;
                tally.sumsq[i] += o * o;
            }
        }
        tally.samples = count;
        Ok(tally)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| McError::Pool(e.to_string()))?;
    pool.install(|| {
        (0..blocks)
            .into_par_iter()
            .map(run_block)
            .try_reduce(|| Tally::new(width), |a, b| Ok(a.merge(b)))
    })
}
