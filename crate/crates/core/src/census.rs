//! Exhaustive cherry statistics over every labelled tree on `n` vertices.
//!
//! This is the brute-force counterpart of the closed forms in
//! [`crate::moments`]: it never touches those formulas.

use rayon::prelude::*;
use serde::Serialize;

use crate::cherry::find_cherries;
use crate::error::Result;
use crate::prufer::{enumerate_all_trees, tree_count};

/// Integer tallies over all `n^(n-2)` trees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CherryCensus {
    pub n: usize,
    pub trees: u64,
    /// Sum of `C_n` over all trees.
    pub total: u64,
    /// Sum of `C_n²` over all trees.
    pub total_squared: u64,
    /// `histogram[k]` = number of trees with exactly `k` cherries.
    pub histogram: Vec<u64>,
    /// Number of trees having a cherry at `(u1, u2, v)`, `u1 < u2`, stored
    /// at `(u1 * n + u2) * n + v`.
    per_triple: Vec<u64>,
}

impl CherryCensus {
    fn zero(n: usize) -> Self {
        Self {
            n,
            trees: 0,
            total: 0,
            total_squared: 0,
            histogram: Vec::new(),
            per_triple: vec![0; n * n * n],
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.trees += other.trees;
        self.total += other.total;
        self.total_squared += other.total_squared;
        if self.histogram.len() < other.histogram.len() {
            self.histogram.resize(other.histogram.len(), 0);
        }
        for (a, b) in self.histogram.iter_mut().zip(&other.histogram) {
            *a += b;
        }
        for (a, b) in self.per_triple.iter_mut().zip(&other.per_triple) {
            *a += b;
        }
        self
    }

    /// Trees with a cherry at the unordered leaf pair `{i1, i2}` and stem
    /// `j`. Zero unless the three labels are distinct.
    pub fn trees_with_cherry_at(&self, i1: usize, i2: usize, j: usize) -> u64 {
        let (a, b) = (i1.min(i2), i1.max(i2));
        if a == b || a == j || b == j {
            return 0;
        }
        self.per_triple[(a * self.n + b) * self.n + j]
    }

    /// All distinct triples `(u1 < u2, v)` with their tree counts.
    pub fn per_triple_counts(&self) -> impl Iterator<Item = ((usize, usize, usize), u64)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |a| {
            (a + 1..n).flat_map(move |b| {
                (0..n)
                    .filter(move |&j| j != a && j != b)
                    .map(move |j| ((a, b, j), self.trees_with_cherry_at(a, b, j)))
            })
        })
    }
}

/// Enumerates every tree on `n <= cap` vertices (in parallel blocks) and
/// tallies cherries.
pub fn cherry_census(n: usize, cap: usize) -> Result<CherryCensus> {
    // validates n against the cap
    enumerate_all_trees(n, cap)?;
    let total = tree_count(n).expect("validated");
    let blocks = 256u64.min(total);
    let census = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let range = (total * b / blocks)..(total * (b + 1) / blocks);
            let mut acc = CherryCensus::zero(n);
            let trees = enumerate_all_trees(n, cap)
                .and_then(|it| it.with_range(range))
                .expect("range within bounds");
            for tree in trees {
                let cherries = find_cherries(&tree);
                let k = cherries.len();
                acc.trees += 1;
                acc.total += k as u64;
                acc.total_squared += (k * k) as u64;
                if acc.histogram.len() <= k {
                    acc.histogram.resize(k + 1, 0);
                }
                acc.histogram[k] += 1;
                for c in cherries {
                    acc.per_triple[(c.u1 * n + c.u2) * n + c.v] += 1;
                }
            }
            acc
        })
        .reduce(|| CherryCensus::zero(n), CherryCensus::merge);
    Ok(census)
}
