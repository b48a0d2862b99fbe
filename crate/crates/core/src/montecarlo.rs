//! Monte Carlo estimates of the cherry-count distribution of random trees.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cherry::{count_cherries, disjoint_cherry_pair, find_cherries};
use crate::error::{Error, Result};
use crate::sampling::SampleStream;

/// Two-sided 99% standard normal quantile, `Φ⁻¹(0.995)`.
pub const Z_99: f64 = 2.575_829_303_548_900_4;

/// An empirical frequency with its Wilson score interval.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Proportion {
    pub successes: u64,
    pub trials: u64,
    pub estimate: f64,
    pub lower: f64,
    pub upper: f64,
}

impl Proportion {
    /// Wilson score interval at normal quantile `z`.
    pub fn wilson(successes: u64, trials: u64, z: f64) -> Self {
        assert!(trials > 0 && successes <= trials);
        let n = trials as f64;
        let p = successes as f64 / n;
        let z2 = z * z;
        let denom = 1.0 + z2 / n;
        let center = (p + z2 / (2.0 * n)) / denom;
        let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
        Self {
            successes,
            trials,
            estimate: p,
            lower: (center - half).max(0.0),
            upper: (center + half).min(1.0),
        }
    }

    pub fn wilson99(successes: u64, trials: u64) -> Self {
        Self::wilson(successes, trials, Z_99)
    }

    /// True if the intervals of `self` and `other` intersect.
    pub fn overlaps(&self, other: &Proportion) -> bool {
        self.lower <= other.upper && other.lower <= self.upper
    }

    /// `other` is not significantly below `self`: either its estimate is at
    /// least ours or the two intervals overlap.
    pub fn not_exceeded_by_drop_to(&self, other: &Proportion) -> bool {
        other.estimate >= self.estimate || self.overlaps(other)
    }
}

/// Result of `trials` sampled trees on `n` vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialSummary {
    pub n: usize,
    pub trials: u64,
    pub master_seed: u64,
    /// cherry count → number of trees
    pub counts_hist: BTreeMap<usize, u64>,
    pub mean: f64,
    /// Standard deviation of a single observation.
    pub sd: f64,
    pub p_geq_1: Proportion,
    pub p_geq_2: Proportion,
}

impl TrialSummary {
    pub fn from_counts(n: usize, master_seed: u64, counts: &[usize]) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::InvalidArgument("need at least one trial".into()));
        }
        let trials = counts.len() as u64;
        let mut counts_hist = BTreeMap::new();
        for &k in counts {
            *counts_hist.entry(k).or_insert(0u64) += 1;
        }
        let t = trials as f64;
        let mean = counts.iter().map(|&k| k as f64).sum::<f64>() / t;
        let var = counts
            .iter()
            .map(|&k| (k as f64 - mean).powi(2))
            .sum::<f64>()
            / (t - 1.0).max(1.0);
        let at_least = |m: usize| counts_hist.range(m..).map(|(_, c)| c).sum::<u64>();
        Ok(Self {
            n,
            trials,
            master_seed,
            mean,
            sd: var.sqrt(),
            p_geq_1: Proportion::wilson99(at_least(1), trials),
            p_geq_2: Proportion::wilson99(at_least(2), trials),
            counts_hist,
        })
    }

    /// Standard error of [`TrialSummary::mean`].
    pub fn standard_error(&self) -> f64 {
        self.sd / (self.trials as f64).sqrt()
    }

    pub fn p_eq_0(&self) -> Proportion {
        let zero = self.counts_hist.get(&0).copied().unwrap_or(0);
        Proportion::wilson99(zero, self.trials)
    }
}

/// Samples `trials` uniform random trees on `n` vertices (parallel on the
/// current rayon pool, deterministic in `master_seed`) and summarizes their
/// cherry counts.
pub fn monte_carlo_cherries(n: usize, trials: u64, master_seed: u64) -> Result<TrialSummary> {
    if trials == 0 {
        return Err(Error::InvalidArgument("need at least one trial".into()));
    }
    let stream = SampleStream::trees(master_seed, n, trials)?;
    let counts = stream.par_map(|_, t| count_cherries(&t));
    TrialSummary::from_counts(n, master_seed, &counts)
}

/// Per-tree observations used by the experiment drivers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeObservation {
    pub cherries: usize,
    pub has_disjoint_cherries: bool,
}

pub fn observe_tree(t: &crate::graph::Graph) -> TreeObservation {
    let cherries = find_cherries(t);
    TreeObservation {
        cherries: cherries.len(),
        has_disjoint_cherries: disjoint_cherry_pair(&cherries).is_some(),
    }
}
