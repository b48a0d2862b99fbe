//! Finite simple undirected graphs on the vertex set `0..n`, their adjacency
//! matrices, and vertex permutations.
//!
//! Vertices are 0-based contiguous integers. Adjacency is stored as sorted
//! neighbour lists; the dense [`AdjacencyMatrix`] is only materialized on
//! request, so trees with millions of vertices stay cheap.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// The graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) are merged; loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut edge_count = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        Ok(Self {
            adj,
            edge_count: edge_count / 2,
        })
    }

    /// Builds a graph from sorted, deduplicated, symmetric neighbour lists.
    /// Only for internal constructors that guarantee those properties.
    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<usize>>) -> Self {
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        debug_assert!(adj
            .iter()
            .enumerate()
            .all(|(v, l)| l.windows(2).all(|w| w[0] < w[1]) && !l.contains(&v)));
        Self { adj, edge_count }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n)
            .map(|v| (0..n).filter(|&u| u != v).collect())
            .collect();
        Self::from_sorted_adjacency(adj)
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("valid path")
    }

    /// Star with center 0 and leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Self {
        Self::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("valid star")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs at least 3 vertices");
        Self::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("valid cycle")
    }

    /// Number of vertices.
    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted neighbours of `v`. Panics if `v` is out of range.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Number of neighbours of `v`.
    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adj[v].len())
    }

    /// Degree of every vertex, indexed by vertex.
    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &u in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    reached += 1;
                    queue.push_back(u);
                }
            }
        }
        reached == n
    }

    /// A tree is a connected acyclic graph. For a graph on `n >= 1`
    /// vertices this is equivalent to being connected with exactly `n - 1`
    /// edges: a connected graph has a spanning tree with `n - 1` edges, and
    /// any further edge closes a cycle.
    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.edge_count + 1 == self.n() && self.is_connected()
    }

    /// Dense 0/1 view of the adjacency relation.
    pub fn adjacency_matrix(&self) -> AdjacencyMatrix {
        let n = self.n();
        let mut data = vec![0u8; n * n];
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                data[u * n + v] = 1;
            }
        }
        AdjacencyMatrix { n, data }
    }

    /// True iff `p` maps edges onto edges.
    ///
    /// Because `p` is a bijection on vertices it is injective on vertex
    /// pairs; mapping every edge to an edge therefore maps the (finite) edge
    /// set onto itself, and non-edges onto non-edges.
    pub fn is_automorphism(&self, p: &Permutation) -> Result<bool> {
        if p.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                found: p.len(),
            });
        }
        Ok(self
            .edges()
            .all(|(u, v)| self.has_edge(p.apply(u), p.apply(v))))
    }

    /// Graph obtained by relabelling vertex `v` as `p(v)`.
    pub fn relabel(&self, p: &Permutation) -> Result<Self> {
        if p.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                found: p.len(),
            });
        }
        Self::from_edges(
            self.n(),
            self.edges().map(|(u, v)| (p.apply(u), p.apply(v))),
        )
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let edges = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + shift, v + shift)));
        Self::from_edges(shift + other.n(), edges.collect::<Vec<_>>()).expect("valid union")
    }

    /// Plain-text adjacency list: the vertex count on the first line, then
    /// one `u v` line per edge.
    pub fn to_edge_list_text(&self) -> String {
        let mut out = format!("{}\n", self.n());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Parses the format written by [`Graph::to_edge_list_text`]. Blank
    /// lines are ignored.
    pub fn from_edge_list_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidArgument("missing vertex count".into()))?;
        let n: usize = header
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad vertex count {header:?}")))?;
        let mut edges = Vec::new();
        for line in lines {
            let mut parts = line.split_whitespace().map(str::parse::<usize>);
            match (parts.next(), parts.next(), parts.next()) {
                (Some(Ok(u)), Some(Ok(v)), None) => edges.push((u, v)),
                _ => return Err(Error::InvalidArgument(format!("bad edge line {line:?}"))),
            }
        }
        Self::from_edges(n, edges)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Dense symmetric 0/1 adjacency matrix with zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    n: usize,
    data: Vec<u8>,
}

impl AdjacencyMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.n + j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i) == 0)
    }

    /// Checks `P A = A P` for the permutation matrix `P` of `p`, where
    /// `P[p(i)][i] = 1`. Entrywise this reads `A[p(i)][p(j)] = A[i][j]`.
    pub fn commutes_with(&self, p: &Permutation) -> bool {
        p.len() == self.n
            && (0..self.n)
                .all(|i| (0..self.n).all(|j| self.get(p.apply(i), p.apply(j)) == self.get(i, j)))
    }
}

/// A bijection on `0..n`, stored as its image array.
///
/// Composition follows `(p ∘ q)(i) = p(q(i))` throughout the crate.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for (position, &image_of) in image.iter().enumerate() {
            if image_of >= n || seen[image_of] {
                return Err(Error::InvalidPermutation {
                    position,
                    image: image_of,
                });
            }
            seen[image_of] = true;
        }
        Ok(Self { image })
    }

    pub(crate) fn from_image_unchecked(image: Vec<usize>) -> Self {
        debug_assert!(Self::new(image.clone()).is_ok());
        Self { image }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            image: (0..n).collect(),
        }
    }

    /// The transposition exchanging `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        for v in [a, b] {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        let mut image: Vec<usize> = (0..n).collect();
        image.swap(a, b);
        Ok(Self { image })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.image.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.image[v]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(Self {
            image: other.image.iter().map(|&v| self.image[v]).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut image = vec![0; self.len()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v] = i;
        }
        Self { image }
    }

    /// Vertices moved by the permutation, in increasing order.
    pub fn support(&self) -> Vec<usize> {
        self.image
            .iter()
            .enumerate()
            .filter_map(|(i, &v)| (i != v).then_some(i))
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// True iff the supports of `self` and `other` do not intersect.
    pub fn support_disjoint(&self, other: &Permutation) -> bool {
        self.len() == other.len()
            && self
                .image
                .iter()
                .zip(&other.image)
                .enumerate()
                .all(|(i, (&a, &b))| a == i || b == i)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(image: Vec<usize>) -> Result<Self> {
        Self::new(image)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.image
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.image)
    }
}
