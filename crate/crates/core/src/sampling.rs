//! Reproducible random trees and G(n, p) graphs.
//!
//! Sample `i` of a stream draws from its own generator, a ChaCha8 keyed by
//! the master seed with stream id `i` (`ChaCha8Rng::seed_from_u64(master)`
//! followed by `set_stream(i)`). A sample therefore depends only on
//! `(master_seed, i)`, never on which worker produced it or in what order.
//! The generator choice is fixed for this release; changing it changes every
//! published sample.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::prufer::PrueferSequence;

/// Generator for sample `index` under `master_seed`.
pub fn sample_rng(master_seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index);
    rng
}

/// A uniformly random Prüfer sequence for `n >= 2`.
pub fn sample_prufer<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<PrueferSequence> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "random trees need n >= 2, got {n}"
        )));
    }
    let seq = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    PrueferSequence::new(n, seq)
}

/// A tree drawn uniformly from all `n^(n-2)` labelled trees on `n` vertices.
pub fn sample_uniform_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Graph> {
    Ok(sample_prufer(n, rng)?.decode())
}

/// Erdős–Rényi G(n, p): each of the `n(n-1)/2` pairs is an edge
/// independently with probability `p`, decided by one uniform `f64` draw per
/// pair in the order `(0,1), (0,2), ..., (1,2), ...`.
pub fn sample_gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("G(n, p) needs n >= 1".into()));
    }
    let mut adj = vec![Vec::new(); n];
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
    }
    Ok(Graph::from_sorted_adjacency(adj))
}

/// What a [`SampleStream`] produces.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum SampleKind {
    UniformTree,
    Gnp { p: f64 },
}

/// A deterministic, indexable stream of `count` random graphs on `n`
/// vertices.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleStream {
    pub master_seed: u64,
    pub n: usize,
    pub count: u64,
    pub kind: SampleKind,
}

impl SampleStream {
    pub fn trees(master_seed: u64, n: usize, count: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "random trees need n >= 2, got {n}"
            )));
        }
        Ok(Self {
            master_seed,
            n,
            count,
            kind: SampleKind::UniformTree,
        })
    }

    pub fn gnp(master_seed: u64, n: usize, p: f64, count: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability(p));
        }
        if n == 0 {
            return Err(Error::InvalidArgument("G(n, p) needs n >= 1".into()));
        }
        Ok(Self {
            master_seed,
            n,
            count,
            kind: SampleKind::Gnp { p },
        })
    }

    /// The `index`-th sample. Panics if `index >= count`.
    pub fn get(&self, index: u64) -> Graph {
        assert!(index < self.count, "sample {index} out of range");
        let mut rng = sample_rng(self.master_seed, index);
        match self.kind {
            SampleKind::UniformTree => sample_uniform_tree(self.n, &mut rng),
            SampleKind::Gnp { p } => sample_gnp(self.n, p, &mut rng),
        }
        .expect("parameters validated at construction")
    }

    pub fn iter(&self) -> impl Iterator<Item = Graph> + '_ {
        (0..self.count).map(|i| self.get(i))
    }

    /// Applies `f` to every sample in parallel on the current rayon pool and
    /// returns the results in sample order.
    pub fn par_map<T, F>(&self, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64, Graph) -> T + Sync + Send,
    {
        (0..self.count)
            .into_par_iter()
            .map(|i| f(i, self.get(i)))
            .collect()
    }
}
