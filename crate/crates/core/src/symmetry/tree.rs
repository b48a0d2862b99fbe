//! Tree automorphism groups through AHU-style canonical subtree codes.
//!
//! The tree is rooted at its center, or at the central edge when there are
//! two centers. Each rooted subtree gets an integer code: two subtrees share
//! a code iff they are isomorphic as rooted trees (codes are interned from
//! the sorted list of child codes). Every group of `k` siblings with equal
//! codes contributes a factor `k!`, and a bicentral tree whose two halves
//! share a code contributes a final factor 2.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigUint;
use num_traits::One;

use super::AutomorphismReport;
use crate::error::{Error, Result};
use crate::graph::{Graph, Permutation};

const NONE: usize = usize::MAX;

/// A tree rooted at its center(s) with canonical codes on every vertex.
#[derive(Debug, Clone)]
pub struct CanonicalTree {
    /// One center, or the two endpoints of the central edge.
    pub roots: Vec<usize>,
    /// Children of every vertex, sorted by `(code, label)`.
    pub children: Vec<Vec<usize>>,
    pub code: Vec<u32>,
}

/// Vertices of minimum eccentricity, found by peeling leaves layer by layer.
pub fn centers(t: &Graph) -> Vec<usize> {
    let n = t.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree = t.degrees();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &u in t.neighbors(v) {
                degree[u] -= 1;
                if degree[u] == 1 {
                    next.push(u);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

impl CanonicalTree {
    pub fn new(t: &Graph) -> Result<Self> {
        if !t.is_tree() {
            return Err(Error::NotATree);
        }
        let n = t.n();
        let roots = centers(t);

        // BFS from the root(s); the central edge is never traversed because
        // both of its endpoints start out visited.
        let mut parent = vec![NONE; n];
        let mut visited = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut queue: VecDeque<usize> = roots.iter().copied().collect();
        for &r in &roots {
            visited[r] = true;
        }
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &u in t.neighbors(v) {
                if !visited[u] {
                    visited[u] = true;
                    parent[u] = v;
                    queue.push_back(u);
                }
            }
        }

        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &v in &order {
            if parent[v] != NONE {
                children[parent[v]].push(v);
            }
        }
        let mut code = vec![0u32; n];
        let mut interned: HashMap<Vec<u32>, u32> = HashMap::new();
        for &v in order.iter().rev() {
            let kids = &mut children[v];
            kids.sort_unstable_by_key(|&c| (code[c], c));
            let key: Vec<u32> = kids.iter().map(|&c| code[c]).collect();
            let fresh = interned.len() as u32;
            code[v] = *interned.entry(key).or_insert(fresh);
        }
        Ok(Self {
            roots,
            children,
            code,
        })
    }

    /// `|Aut(T)|` from the sibling multiplicities.
    pub fn group_order(&self) -> BigUint {
        let mut order = BigUint::one();
        for kids in &self.children {
            for run in kids.chunk_by(|&a, &b| self.code[a] == self.code[b]) {
                for k in 2..=run.len() {
                    order *= BigUint::from(k);
                }
            }
        }
        if let [a, b] = self.roots[..] {
            if self.code[a] == self.code[b] {
                order *= BigUint::from(2u32);
            }
        }
        order
    }

    /// The involution exchanging the isomorphic subtrees below `a` and `b`,
    /// matching children in canonical order.
    fn subtree_swap(&self, a: usize, b: usize) -> Permutation {
        let mut image: Vec<usize> = (0..self.code.len()).collect();
        let mut stack = vec![(a, b)];
        while let Some((x, y)) = stack.pop() {
            image[x] = y;
            image[y] = x;
            stack.extend(
                self.children[x]
                    .iter()
                    .copied()
                    .zip(self.children[y].iter().copied()),
            );
        }
        Permutation::from_image_unchecked(image)
    }

    /// Swaps of adjacent equal-code siblings, plus the half swap for a
    /// symmetric bicentral tree. These generate the full group.
    pub fn generators(&self) -> Vec<Permutation> {
        let mut out = Vec::new();
        for kids in &self.children {
            for pair in kids.windows(2) {
                if self.code[pair[0]] == self.code[pair[1]] {
                    out.push(self.subtree_swap(pair[0], pair[1]));
                }
            }
        }
        if let [a, b] = self.roots[..] {
            if self.code[a] == self.code[b] {
                out.push(self.subtree_swap(a, b));
            }
        }
        out
    }
}

/// Exact automorphism group of a tree, with generators.
pub fn tree_automorphism_order(t: &Graph) -> Result<AutomorphismReport> {
    let canon = CanonicalTree::new(t)?;
    Ok(AutomorphismReport {
        group_order: canon.group_order(),
        generators: canon.generators(),
    })
}

/// `|Aut(T)|` only, skipping generator construction (which costs up to
/// `O(n)` per generator).
pub fn tree_automorphism_group_order(t: &Graph) -> Result<BigUint> {
    Ok(CanonicalTree::new(t)?.group_order())
}
