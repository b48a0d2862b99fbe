//! Coherent configurations: partitions of `V × V` whose class matrices span a
//! coherent algebra.
//!
//! [`wl2_stabilize`] computes the coherent closure of a graph (the
//! configuration of the coherent algebra generated by its adjacency matrix)
//! with two-dimensional Weisfeiler–Leman refinement. [`orbital_configuration`]
//! builds the orbit partition of `Aut(Γ)` on ordered pairs, which always
//! refines the closure.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::symmetry::brute::brute_force_automorphisms;
use crate::symmetry::ser_biguint;

/// Default largest `n` accepted by [`wl2_stabilize`].
pub const DEFAULT_WL_CAP: usize = 256;

/// A partition of ordered vertex pairs into classes `0..num_classes`.
///
/// Class indices are numbered by first occurrence in row-major pair order,
/// so equal partitions always have identical arrays. Equality compares the
/// partitions only, not the refinement history.
#[derive(Clone, Debug, Serialize)]
pub struct CoherentConfiguration {
    n: usize,
    num_classes: usize,
    class_of: Vec<u32>,
    /// Class count of the initial colouring and after every refinement
    /// round; empty for configurations not produced by refinement.
    round_counts: Vec<usize>,
}

impl PartialEq for CoherentConfiguration {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.class_of == other.class_of
    }
}

impl Eq for CoherentConfiguration {}

impl CoherentConfiguration {
    /// Builds a configuration from arbitrary pair labels (row-major,
    /// length `n²`), renumbering them canonically.
    pub fn from_labels<T: Copy + Eq + std::hash::Hash>(n: usize, labels: &[T]) -> Result<Self> {
        if labels.len() != n * n {
            return Err(Error::LengthMismatch {
                expected: n * n,
                found: labels.len(),
            });
        }
        let mut ids: HashMap<T, u32> = HashMap::new();
        let class_of: Vec<u32> = labels
            .iter()
            .map(|l| {
                let fresh = ids.len() as u32;
                *ids.entry(*l).or_insert(fresh)
            })
            .collect();
        Ok(Self {
            n,
            num_classes: ids.len(),
            class_of,
            round_counts: Vec::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    #[inline]
    pub fn class(&self, u: usize, v: usize) -> u32 {
        self.class_of[u * self.n + v]
    }

    /// Row-major class indices.
    pub fn class_array(&self) -> &[u32] {
        &self.class_of
    }

    pub fn round_counts(&self) -> &[usize] {
        &self.round_counts
    }

    /// Number of pairs in each class.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_classes];
        for &c in &self.class_of {
            sizes[c as usize] += 1;
        }
        sizes
    }

    /// Class sizes in increasing order; an isomorphism invariant.
    pub fn sorted_class_sizes(&self) -> Vec<usize> {
        let mut sizes = self.class_sizes();
        sizes.sort_unstable();
        sizes
    }

    /// True iff every ordered pair is its own class, i.e. the algebra is
    /// all of `M_n`.
    pub fn is_full(&self) -> bool {
        self.num_classes == self.n * self.n
    }

    /// True iff every class of `self` lies inside a single class of
    /// `coarser`.
    pub fn refines(&self, coarser: &CoherentConfiguration) -> bool {
        if self.n != coarser.n {
            return false;
        }
        let mut target = vec![u32::MAX; self.num_classes];
        self.class_of
            .iter()
            .zip(&coarser.class_of)
            .all(|(&fine, &coarse)| {
                let slot = &mut target[fine as usize];
                if *slot == u32::MAX {
                    *slot = coarse;
                }
                *slot == coarse
            })
    }

    /// `"n num_classes"` on the first line, the `n²` row-major class
    /// indices on the second.
    pub fn to_text(&self) -> String {
        let body: Vec<String> = self.class_of.iter().map(u32::to_string).collect();
        format!("{} {}\n{}\n", self.n, self.num_classes, body.join(" "))
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |what: &str| Error::InvalidArgument(format!("configuration text: {what}"));
        let mut tokens = text.split_whitespace().map(str::parse::<usize>);
        let mut next = |what: &str| -> Result<usize> {
            tokens.next().and_then(|t| t.ok()).ok_or_else(|| bad(what))
        };
        let n = next("vertex count")?;
        let declared = next("class count")?;
        let labels = (0..n * n)
            .map(|_| next("class index"))
            .collect::<Result<Vec<_>>>()?;
        if tokens.next().is_some() {
            return Err(bad("trailing data"));
        }
        let config = Self::from_labels(n, &labels)?;
        if config.num_classes != declared
            || labels
                .iter()
                .zip(&config.class_of)
                .any(|(&a, &b)| a != b as usize)
        {
            return Err(bad("class indices are not canonically numbered"));
        }
        Ok(config)
    }
}

/// The two-dimensional Weisfeiler–Leman stable colouring of `g`.
///
/// Pairs start coloured diagonal / edge / non-edge. Each round recolours
/// `(u, v)` by its old colour together with the multiset
/// `{(c(u, w), c(w, v)) : w ∈ V}`; new colours are interned by their full
/// encoding, so distinct encodings never collide. Refinement stops as soon
/// as a round leaves the partition unchanged.
pub fn wl2_stabilize(g: &Graph, cap: usize) -> Result<CoherentConfiguration> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidArgument("WL refinement needs n >= 1".into()));
    }
    if n > cap {
        return Err(Error::CapExceeded {
            what: "2-dimensional WL refinement",
            n,
            cap,
        });
    }
    let initial: Vec<u8> = (0..n * n)
        .map(|i| {
            let (u, v) = (i / n, i % n);
            if u == v {
                0
            } else if g.has_edge(u, v) {
                1
            } else {
                2
            }
        })
        .collect();
    let mut config = CoherentConfiguration::from_labels(n, &initial)?;
    config.round_counts.push(config.num_classes);

    let max_rounds = n * n;
    for _ in 0..max_rounds {
        let (class_of, num_classes) = refine_once(&config);
        let stable = num_classes == config.num_classes && class_of == config.class_of;
        if stable {
            return Ok(config);
        }
        debug_assert!(num_classes > config.num_classes);
        config.class_of = class_of;
        config.num_classes = num_classes;
        config.round_counts.push(num_classes);
    }
    unreachable!("refinement strictly increases the class count, which is at most n²")
}

const ROW_CHUNK: usize = 16;

fn pair_signature(c: &CoherentConfiguration, transposed: &[u32], u: usize, v: usize) -> Vec<u64> {
    let n = c.n;
    let row = &c.class_of[u * n..(u + 1) * n];
    let col = &transposed[v * n..(v + 1) * n];
    let mut sig: Vec<u64> = Vec::with_capacity(n + 1);
    sig.extend(
        row.iter()
            .zip(col)
            .map(|(&a, &b)| (u64::from(a) << 32) | u64::from(b)),
    );
    sig.sort_unstable();
    sig.push(u64::from(c.class(u, v)));
    sig
}

fn transpose(c: &CoherentConfiguration) -> Vec<u32> {
    let n = c.n;
    let mut t = vec![0u32; n * n];
    for u in 0..n {
        for v in 0..n {
            t[v * n + u] = c.class_of[u * n + v];
        }
    }
    t
}

fn refine_once(c: &CoherentConfiguration) -> (Vec<u32>, usize) {
    let n = c.n;
    let transposed = transpose(c);
    let mut ids: HashMap<Vec<u64>, u32> = HashMap::new();
    let mut class_of = Vec::with_capacity(n * n);
    for start in (0..n).step_by(ROW_CHUNK) {
        let rows: Vec<Vec<Vec<u64>>> = (start..(start + ROW_CHUNK).min(n))
            .into_par_iter()
            .map(|u| {
                (0..n)
                    .map(|v| pair_signature(c, &transposed, u, v))
                    .collect()
            })
            .collect();
        for sig in rows.into_iter().flatten() {
            let fresh = ids.len() as u32;
            class_of.push(*ids.entry(sig).or_insert(fresh));
        }
    }
    (class_of, ids.len())
}

/// Orbits of `Aut(Γ)` on ordered pairs, with the group order they came
/// from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitalConfiguration {
    pub config: CoherentConfiguration,
    #[serde(serialize_with = "ser_biguint")]
    pub group_order: BigUint,
}

/// Orbital configuration from the brute-force automorphism group; refuses
/// `n > cap`.
pub fn orbital_configuration(g: &Graph, cap: usize) -> Result<OrbitalConfiguration> {
    let report = brute_force_automorphisms(g, cap)?;
    let n = g.n();
    let mut parent: Vec<usize> = (0..n * n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for sigma in &report.generators {
        for u in 0..n {
            for v in 0..n {
                let a = find(&mut parent, u * n + v);
                let b = find(&mut parent, sigma.apply(u) * n + sigma.apply(v));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let roots: Vec<usize> = (0..n * n).map(|i| find(&mut parent, i)).collect();
    Ok(OrbitalConfiguration {
        config: CoherentConfiguration::from_labels(n, &roots)?,
        group_order: report.group_order,
    })
}

/// A located failure of one of the coherent-configuration axioms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum AxiomViolation {
    /// Class indices are out of range or some class is empty.
    NotAPartition { class: usize },
    /// A class contains both diagonal and off-diagonal pairs.
    MixedDiagonal {
        class: u32,
        diagonal: (usize, usize),
        off_diagonal: (usize, usize),
    },
    /// The transpose of `class` is not a single class.
    NotTransposeClosed {
        class: u32,
        pair: (usize, usize),
        expected: u32,
        found: u32,
    },
    /// Two pairs of `class` see different numbers of paths `(u, w, v)` with
    /// `(u, w)` in `first` and `(w, v)` in `second`.
    IntersectionNumber {
        class: u32,
        first: u32,
        second: u32,
        pair: (usize, usize),
        count: usize,
        reference_pair: (usize, usize),
        reference_count: usize,
    },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotAPartition { class } => write!(f, "class {class} is empty or out of range"),
            Self::MixedDiagonal { class, diagonal, off_diagonal } => write!(
                f,
                "class {class} holds diagonal pair {diagonal:?} and off-diagonal pair {off_diagonal:?}"
            ),
            Self::NotTransposeClosed { class, pair, expected, found } => write!(
                f,
                "transpose of class {class} splits: {pair:?} reverses into {found}, expected {expected}"
            ),
            Self::IntersectionNumber {
                class,
                first,
                second,
                pair,
                count,
                reference_pair,
                reference_count,
            } => write!(
                f,
                "intersection number p({first},{second}; {class}) is {count} at {pair:?} but {reference_count} at {reference_pair:?}"
            ),
        }
    }
}

/// Checks that `c` is a coherent configuration: a partition of `V × V`
/// with the diagonal a union of classes, closed under transposition, and
/// with well-defined intersection numbers. (Closure under the Schur product
/// holds for every partition: class matrices are disjoint 0/1 matrices.)
pub fn verify_coherence_axioms(c: &CoherentConfiguration) -> Result<(), AxiomViolation> {
    let n = c.n;
    let k = c.num_classes;

    let mut first_pair = vec![None; k];
    for (i, &cls) in c.class_of.iter().enumerate() {
        let slot = first_pair
            .get_mut(cls as usize)
            .ok_or(AxiomViolation::NotAPartition {
                class: cls as usize,
            })?;
        slot.get_or_insert((i / n, i % n));
    }
    if let Some(class) = first_pair.iter().position(Option::is_none) {
        return Err(AxiomViolation::NotAPartition { class });
    }
    let rep: Vec<(usize, usize)> = first_pair.into_iter().map(Option::unwrap).collect();

    for u in 0..n {
        for v in 0..n {
            let cls = c.class(u, v);
            let (ru, rv) = rep[cls as usize];
            if (ru == rv) != (u == v) {
                let (diagonal, off_diagonal) = if u == v {
                    ((u, v), (ru, rv))
                } else {
                    ((ru, rv), (u, v))
                };
                return Err(AxiomViolation::MixedDiagonal {
                    class: cls,
                    diagonal,
                    off_diagonal,
                });
            }
            let expected = c.class(rv, ru);
            let found = c.class(v, u);
            if found != expected {
                return Err(AxiomViolation::NotTransposeClosed {
                    class: cls,
                    pair: (u, v),
                    expected,
                    found,
                });
            }
        }
    }

    let transposed = transpose(c);
    let signatures: Vec<Vec<u64>> = rep
        .par_iter()
        .map(|&(u, v)| pair_signature(c, &transposed, u, v))
        .collect();
    let violation = (0..n * n).into_par_iter().find_map_first(|i| {
        let (u, v) = (i / n, i % n);
        let cls = c.class(u, v) as usize;
        let sig = pair_signature(c, &transposed, u, v);
        (sig != signatures[cls])
            .then(|| locate(c, cls as u32, (u, v), &sig, rep[cls], &signatures[cls]))
    });
    match violation {
        Some(v) => Err(v),
        None => Ok(()),
    }
}

fn locate(
    _c: &CoherentConfiguration,
    class: u32,
    pair: (usize, usize),
    sig: &[u64],
    reference_pair: (usize, usize),
    reference: &[u64],
) -> AxiomViolation {
    let counts = |s: &[u64]| -> HashMap<u64, usize> {
        let mut m = HashMap::new();
        // the final entry is the pair's own class, not a path count
        for &x in &s[..s.len() - 1] {
            *m.entry(x).or_insert(0) += 1;
        }
        m
    };
    let (here, there) = (counts(sig), counts(reference));
    let mut keys: Vec<u64> = here.keys().chain(there.keys()).copied().collect();
    keys.sort_unstable();
    let key = keys
        .into_iter()
        .find(|k| here.get(k) != there.get(k))
        .expect("signatures differ in some path count");
    AxiomViolation::IntersectionNumber {
        class,
        first: (key >> 32) as u32,
        second: key as u32,
        pair,
        count: here.get(&key).copied().unwrap_or(0),
        reference_pair,
        reference_count: there.get(&key).copied().unwrap_or(0),
    }
}

/// Boolean form of [`verify_coherence_axioms`].
pub fn is_coherent(c: &CoherentConfiguration) -> bool {
    verify_coherence_axioms(c).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_and_empty_graphs_have_two_classes() {
        for n in 2..8 {
            assert_eq!(
                wl2_stabilize(&Graph::complete(n), 256)
                    .unwrap()
                    .num_classes(),
                2
            );
            assert_eq!(
                wl2_stabilize(&Graph::empty(n), 256).unwrap().num_classes(),
                2
            );
        }
    }

    #[test]
    fn single_vertex_is_full() {
        let c = wl2_stabilize(&Graph::empty(1), 256).unwrap();
        assert_eq!(c.num_classes(), 1);
        assert!(c.is_full());
        assert!(!wl2_stabilize(&Graph::complete(3), 256).unwrap().is_full());
    }

    #[test]
    fn path_on_three_vertices_matches_orbitals() {
        // orbits of {id, (0 2)} on the 9 ordered pairs:
        // {00,22} {11} {01,21} {10,12} {02,20}
        let g = Graph::path(3);
        let wl = wl2_stabilize(&g, 256).unwrap();
        let orb = orbital_configuration(&g, 10).unwrap().config;
        assert_eq!(orb.num_classes(), 5);
        assert_eq!(wl.num_classes(), 5);
        assert_eq!(wl, orb);
    }

    #[test]
    fn orbital_examples() {
        let asym = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (5, 6)]).unwrap();
        assert_eq!(
            orbital_configuration(&asym, 10)
                .unwrap()
                .config
                .num_classes(),
            49
        );
        assert_eq!(
            orbital_configuration(&Graph::complete(3), 10)
                .unwrap()
                .config
                .num_classes(),
            2
        );
        let star = orbital_configuration(&Graph::star(3), 10).unwrap();
        assert_eq!(star.config.num_classes(), 5);
        assert_eq!(star.group_order, BigUint::from(6u32));
        assert!(orbital_configuration(&Graph::path(11), 10).is_err());
    }

    #[test]
    fn refinement_history_is_strictly_increasing() {
        let g = Graph::path(9);
        let c = wl2_stabilize(&g, 256).unwrap();
        assert_eq!(c.round_counts()[0], 3);
        assert!(c.round_counts().windows(2).all(|w| w[0] < w[1]));
        assert_eq!(*c.round_counts().last().unwrap(), c.num_classes());
    }

    #[test]
    fn merged_classes_of_p4_break_coherence() {
        let g = Graph::path(4);
        let wl = wl2_stabilize(&g, 256).unwrap();
        assert!(is_coherent(&wl));
        // merge the class of (0,0) (an end) with that of (1,1) (an inner vertex)
        let (a, b) = (wl.class(0, 0), wl.class(1, 1));
        assert_ne!(a, b);
        let merged: Vec<u32> = wl
            .class_array()
            .iter()
            .map(|&x| if x == b { a } else { x })
            .collect();
        let broken = CoherentConfiguration::from_labels(4, &merged).unwrap();
        match verify_coherence_axioms(&broken) {
            Err(AxiomViolation::IntersectionNumber {
                class,
                first,
                second,
                pair,
                count,
                reference_pair,
                reference_count,
            }) => {
                assert_ne!(count, reference_count);
                // recount the witness by hand
                let recount = |(u, v): (usize, usize)| {
                    (0..4)
                        .filter(|&w| broken.class(u, w) == first && broken.class(w, v) == second)
                        .count()
                };
                assert_eq!(recount(pair), count);
                assert_eq!(recount(reference_pair), reference_count);
                assert_eq!(broken.class(pair.0, pair.1), class);
                assert_eq!(broken.class(reference_pair.0, reference_pair.1), class);
            }
            other => panic!("expected an intersection-number violation, got {other:?}"),
        }
    }

    #[test]
    fn transpose_and_diagonal_violations() {
        // (0,1) and (1,0) in different classes, but (0,1) shares with (1,2)
        // whose reverse (2,1) is yet another class.
        let labels = [0, 1, 2, 3, 0, 1, 4, 5, 0];
        let c = CoherentConfiguration::from_labels(3, &labels).unwrap();
        assert!(matches!(
            verify_coherence_axioms(&c),
            Err(AxiomViolation::NotTransposeClosed { .. })
        ));
        let labels = [0, 0, 0, 0];
        let c = CoherentConfiguration::from_labels(2, &labels).unwrap();
        assert!(matches!(
            verify_coherence_axioms(&c),
            Err(AxiomViolation::MixedDiagonal { .. })
        ));
    }

    #[test]
    fn text_round_trip() {
        let c = wl2_stabilize(&Graph::star(3), 256).unwrap();
        let text = c.to_text();
        assert!(text.starts_with("4 5\n0 1 1 1 2 3 4 4"));
        let back = CoherentConfiguration::from_text(&text).unwrap();
        assert_eq!(back.class_array(), c.class_array());
        assert!(CoherentConfiguration::from_text("2 2 0 1 1").is_err());
        assert!(CoherentConfiguration::from_text("2 2 1 0 0 1").is_err());
    }

    #[test]
    fn cap_and_empty_graph() {
        assert!(matches!(
            wl2_stabilize(&Graph::path(10), 9),
            Err(Error::CapExceeded { .. })
        ));
        assert!(wl2_stabilize(&Graph::empty(0), 9).is_err());
    }
}
