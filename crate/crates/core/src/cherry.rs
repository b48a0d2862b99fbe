//! Cherries: two leaves hanging off a common vertex of degree exactly 3.

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

/// A cherry `(u1, u2, v)`, normalized so that `u1 < u2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cherry {
    pub u1: usize,
    pub u2: usize,
    pub v: usize,
}

impl Cherry {
    pub fn vertices(&self) -> [usize; 3] {
        [self.u1, self.u2, self.v]
    }

    /// True iff the two cherries share no vertex.
    pub fn is_disjoint_from(&self, other: &Cherry) -> bool {
        let theirs = other.vertices();
        self.vertices().iter().all(|x| !theirs.contains(x))
    }

    /// Re-checks the four defining conditions against `g`, independently of
    /// how the cherry was found.
    pub fn holds_in(&self, g: &Graph) -> bool {
        let Cherry { u1, u2, v } = *self;
        let in_range = [u1, u2, v].iter().all(|&x| x < g.n());
        in_range
            && u1 < u2
            && u1 != v
            && u2 != v
            && g.has_edge(u1, v)
            && g.has_edge(u2, v)
            && g.neighbors(u1).len() == 1
            && g.neighbors(u2).len() == 1
            && g.neighbors(v).len() == 3
    }
}

/// Every cherry of `g`, sorted lexicographically by `(u1, u2, v)`.
///
/// Works on arbitrary graphs; the conditions are local to the stem `v`.
pub fn find_cherries(g: &Graph) -> Vec<Cherry> {
    let mut out = Vec::new();
    for v in 0..g.n() {
        let nb = g.neighbors(v);
        if nb.len() != 3 {
            continue;
        }
        let leaves: Vec<usize> = nb
            .iter()
            .copied()
            .filter(|&u| g.neighbors(u).len() == 1)
            .collect();
        for (a, &u1) in leaves.iter().enumerate() {
            for &u2 in &leaves[a + 1..] {
                out.push(Cherry { u1, u2, v });
            }
        }
    }
    out.sort_unstable();
    out
}

/// Number of cherries, without materializing them.
pub fn count_cherries(g: &Graph) -> usize {
    (0..g.n())
        .filter(|&v| g.neighbors(v).len() == 3)
        .map(|v| {
            let k = g
                .neighbors(v)
                .iter()
                .filter(|&&u| g.neighbors(u).len() == 1)
                .count();
            k * k.saturating_sub(1) / 2
        })
        .sum()
}

/// Two cherries with pairwise-disjoint vertex triples, if any exist. Picks
/// the lexicographically first such pair.
pub fn disjoint_cherry_pair(cherries: &[Cherry]) -> Option<(Cherry, Cherry)> {
    cherries.iter().enumerate().find_map(|(i, a)| {
        cherries[i + 1..]
            .iter()
            .find(|b| a.is_disjoint_from(b))
            .map(|b| (*a, *b))
    })
}
