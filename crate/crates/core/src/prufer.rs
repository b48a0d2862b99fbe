//! Prüfer sequences: the bijection between sequences in `{0..n}^(n-2)` and
//! labelled trees on `n` vertices, and exhaustive enumeration built on it.

use std::collections::VecDeque;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default upper bound on `n` for exhaustive enumeration (9^7 ≈ 4.8M trees).
pub const DEFAULT_ENUMERATION_CAP: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrueferSequence {
    n: usize,
    seq: Vec<usize>,
}

impl PrueferSequence {
    pub fn new(n: usize, seq: Vec<usize>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "Prüfer sequences need n >= 2, got {n}"
            )));
        }
        if seq.len() != n - 2 {
            return Err(Error::LengthMismatch {
                expected: n - 2,
                found: seq.len(),
            });
        }
        if let Some((position, &value)) = seq.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(Error::PrueferEntry { position, value, n });
        }
        Ok(Self { n, seq })
    }

    /// The `index`-th sequence in lexicographic order, reading `index` as a
    /// base-`n` numeral with the first entry most significant.
    pub fn from_index(n: usize, mut index: u64) -> Result<Self> {
        let total = tree_count(n)
            .ok_or_else(|| Error::InvalidArgument(format!("n^(n-2) overflows u64 for n = {n}")))?;
        if index >= total {
            return Err(Error::InvalidArgument(format!(
                "index {index} out of range for {total} sequences"
            )));
        }
        let mut seq = vec![0; n - 2];
        for slot in seq.iter_mut().rev() {
            *slot = (index % n as u64) as usize;
            index /= n as u64;
        }
        Ok(Self { n, seq })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.seq
    }

    /// Decodes to the corresponding tree; see [`prufer_decode`].
    pub fn decode(&self) -> Graph {
        decode_unchecked(self.n, &self.seq)
    }
}

/// `n^(n-2)`, the number of labelled trees on `n >= 1` vertices, if it fits.
pub fn tree_count(n: usize) -> Option<u64> {
    match n {
        0 => None,
        1 | 2 => Some(1),
        _ => (n as u64).checked_pow(u32::try_from(n - 2).ok()?),
    }
}

/// Decodes a Prüfer sequence into its labelled tree.
///
/// Linear-time leaf scan: at every step the smallest current leaf is joined
/// to the next sequence entry.
pub fn prufer_decode(s: &PrueferSequence) -> Graph {
    s.decode()
}

fn decode_unchecked(n: usize, seq: &[usize]) -> Graph {
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut adj: Vec<Vec<usize>> = degree.iter().map(|&d| Vec::with_capacity(d)).collect();
    let link = |a: usize, b: usize, adj: &mut Vec<Vec<usize>>| {
        adj[a].push(b);
        adj[b].push(a);
    };

    let mut ptr = degree.iter().position(|&d| d == 1).expect("a leaf exists");
    let mut leaf = ptr;
    for &v in seq {
        link(leaf, v, &mut adj);
        degree[v] -= 1;
        if degree[v] == 1 && v < ptr {
            leaf = v;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    link(leaf, n - 1, &mut adj);
    for list in &mut adj {
        list.sort_unstable();
    }
    Graph::from_sorted_adjacency(adj)
}

/// Encodes a tree as its Prüfer sequence; inverse of [`prufer_decode`].
pub fn prufer_encode(t: &Graph) -> Result<PrueferSequence> {
    let n = t.n();
    if n < 2 || !t.is_tree() {
        return Err(Error::NotATree);
    }
    // parent pointers towards the root n-1
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::from([n - 1]);
    parent[n - 1] = n - 1;
    while let Some(v) = queue.pop_front() {
        for &u in t.neighbors(v) {
            if parent[u] == usize::MAX {
                parent[u] = v;
                queue.push_back(u);
            }
        }
    }

    let mut degree = t.degrees();
    let mut seq = Vec::with_capacity(n - 2);
    let mut ptr = degree.iter().position(|&d| d == 1).expect("a leaf exists");
    let mut leaf = ptr;
    for _ in 0..n - 2 {
        let next = parent[leaf];
        seq.push(next);
        degree[next] -= 1;
        if degree[next] == 1 && next < ptr {
            leaf = next;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    Ok(PrueferSequence { n, seq })
}

/// All labelled trees on `n` vertices, one per Prüfer sequence in
/// lexicographic order. Refuses `n` above `cap`.
pub fn enumerate_all_trees(n: usize, cap: usize) -> Result<AllTrees> {
    AllTrees::new(n, cap)
}

/// Iterator over a contiguous block of Prüfer indices, decoding each.
#[derive(Clone, Debug)]
pub struct AllTrees {
    n: usize,
    seq: Vec<usize>,
    next: u64,
    end: u64,
}

impl AllTrees {
    pub fn new(n: usize, cap: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "tree enumeration needs n >= 2, got {n}"
            )));
        }
        if n > cap {
            return Err(Error::CapExceeded {
                what: "tree enumeration",
                n,
                cap,
            });
        }
        let total = tree_count(n).ok_or(Error::CapExceeded {
            what: "tree enumeration",
            n,
            cap,
        })?;
        Ok(Self {
            n,
            seq: vec![0; n - 2],
            next: 0,
            end: total,
        })
    }

    /// Restricts the iterator to Prüfer indices in `range`, for splitting
    /// an enumeration across workers.
    pub fn with_range(mut self, range: Range<u64>) -> Result<Self> {
        let total = tree_count(self.n).expect("checked in new");
        if range.start > range.end || range.end > total {
            return Err(Error::InvalidArgument(format!(
                "range {range:?} outside 0..{total}"
            )));
        }
        if range.start < total {
            self.seq = PrueferSequence::from_index(self.n, range.start)?.seq;
        }
        self.next = range.start;
        self.end = range.end;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sequence that the next call to `next()` will decode.
    pub fn current_sequence(&self) -> &[usize] {
        &self.seq
    }

    fn advance(&mut self) {
        for slot in self.seq.iter_mut().rev() {
            *slot += 1;
            if *slot < self.n {
                return;
            }
            *slot = 0;
        }
    }
}

impl Iterator for AllTrees {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.next >= self.end {
            return None;
        }
        let tree = decode_unchecked(self.n, &self.seq);
        self.next += 1;
        self.advance();
        Some(tree)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for AllTrees {}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use proptest::prelude::*;

    use super::*;

    #[test]
    fn two_vertices() {
        let s = PrueferSequence::new(2, vec![]).unwrap();
        assert_eq!(prufer_decode(&s), Graph::path(2));
        assert_eq!(
            prufer_encode(&Graph::path(2)).unwrap().as_slice(),
            &[] as &[usize]
        );
    }

    #[test]
    fn star_sequence() {
        // Leaves 1 and 2 attach to 0, then 0 joins the final vertex 3.
        let s = PrueferSequence::new(4, vec![0, 0]).unwrap();
        let t = prufer_decode(&s);
        assert_eq!(t, Graph::star(3));
        assert_eq!(t.degree(0).unwrap(), 3);
        assert_eq!(prufer_encode(&Graph::star(3)).unwrap(), s);
    }

    #[test]
    fn path_sequence() {
        // path 0-1-2-3-4: leaves peeled 0, then 1, then 2.
        let t = Graph::path(5);
        assert_eq!(prufer_encode(&t).unwrap().as_slice(), &[1, 2, 3]);
    }

    #[test]
    fn all_sixteen_trees_on_four_vertices_are_distinct() {
        let trees: HashSet<Graph> = enumerate_all_trees(4, DEFAULT_ENUMERATION_CAP)
            .unwrap()
            .collect();
        assert_eq!(trees.len(), 16);
        assert!(trees.iter().all(Graph::is_tree));
    }

    #[test]
    fn enumeration_counts() {
        for (n, count) in [(2, 1), (3, 3), (5, 125), (6, 1296)] {
            assert_eq!(enumerate_all_trees(n, 9).unwrap().count(), count);
        }
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        assert_eq!(
            enumerate_all_trees(10, 9).unwrap_err(),
            Error::CapExceeded {
                what: "tree enumeration",
                n: 10,
                cap: 9
            }
        );
        assert!(enumerate_all_trees(1, 9).is_err());
    }

    #[test]
    fn ranges_partition_the_enumeration() {
        let all: Vec<Graph> = enumerate_all_trees(5, 9).unwrap().collect();
        let mut pieces = Vec::new();
        for r in [0..40u64, 40..41, 41..125] {
            pieces.extend(enumerate_all_trees(5, 9).unwrap().with_range(r).unwrap());
        }
        assert_eq!(all, pieces);
        assert!(enumerate_all_trees(5, 9)
            .unwrap()
            .with_range(0..126)
            .is_err());
    }

    #[test]
    fn sequence_validation() {
        assert!(matches!(
            PrueferSequence::new(4, vec![0, 4]),
            Err(Error::PrueferEntry {
                position: 1,
                value: 4,
                n: 4
            })
        ));
        assert!(PrueferSequence::new(4, vec![0]).is_err());
        assert!(PrueferSequence::new(1, vec![]).is_err());
        assert_eq!(prufer_encode(&Graph::cycle(4)), Err(Error::NotATree));
    }

    #[test]
    fn index_matches_lexicographic_order() {
        let mut it = enumerate_all_trees(5, 9).unwrap();
        for index in 0..125 {
            let expected = PrueferSequence::from_index(5, index).unwrap();
            assert_eq!(it.current_sequence(), expected.as_slice());
            assert_eq!(it.next().unwrap(), expected.decode());
        }
    }

    #[test]
    fn exhaustive_bijection_small_n() {
        for n in 2..=6 {
            for index in 0..tree_count(n).unwrap() {
                let s = PrueferSequence::from_index(n, index).unwrap();
                let tree = s.decode();
                assert!(tree.is_tree());
                assert_eq!(prufer_encode(&tree).unwrap(), s);
            }
        }
    }

    proptest! {
        #[test]
        fn round_trip_random_sequences(n in 2usize..500, raw in proptest::collection::vec(any::<usize>(), 498)) {
            let seq: Vec<usize> = raw[..n - 2].iter().map(|v| v % n).collect();
            let s = PrueferSequence::new(n, seq).unwrap();
            let t = prufer_decode(&s);
            prop_assert!(t.is_tree());
            prop_assert_eq!(prufer_encode(&t).unwrap(), s);
        }
    }
}
