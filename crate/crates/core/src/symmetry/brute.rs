//! Backtracking automorphism search for small graphs.

use std::collections::HashSet;
use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_traits::One;

use super::AutomorphismReport;
use crate::error::{Error, Result};
use crate::graph::{Graph, Permutation};

/// Default largest `n` accepted by the brute-force engine.
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 10;

const UNSET: usize = usize::MAX;

/// Degree-pruned backtracking over vertex images.
pub(crate) struct Searcher {
    n: usize,
    adj: Vec<bool>,
    degree: Vec<usize>,
}

impl Searcher {
    pub(crate) fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut adj = vec![false; n * n];
        for (u, v) in g.edges() {
            adj[u * n + v] = true;
            adj[v * n + u] = true;
        }
        Self {
            n,
            adj,
            degree: g.degrees(),
        }
    }

    #[inline]
    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    /// Can vertex `k` be sent to `t` given the images fixed so far?
    fn compatible(&self, map: &[usize], k: usize, t: usize) -> bool {
        self.degree[k] == self.degree[t]
            && (0..self.n)
                .all(|j| map[j] == UNSET || self.adjacent(k, j) == self.adjacent(t, map[j]))
    }

    /// Visits every automorphism extending the forced pairs `(v, image)`.
    pub(crate) fn for_each<F>(&self, forced: &[(usize, usize)], mut visit: F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let mut map = vec![UNSET; self.n];
        let mut used = vec![false; self.n];
        for &(v, t) in forced {
            if map[v] != UNSET || used[t] || !self.compatible(&map, v, t) {
                return ControlFlow::Continue(());
            }
            map[v] = t;
            used[t] = true;
        }
        let free: Vec<usize> = (0..self.n).filter(|&v| map[v] == UNSET).collect();
        self.extend(&free, 0, &mut map, &mut used, &mut visit)
    }

    fn extend<F>(
        &self,
        free: &[usize],
        depth: usize,
        map: &mut [usize],
        used: &mut [bool],
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let Some(&k) = free.get(depth) else {
            return visit(map);
        };
        for t in 0..self.n {
            if used[t] || !self.compatible(map, k, t) {
                continue;
            }
            map[k] = t;
            used[t] = true;
            let flow = self.extend(free, depth + 1, map, used, visit);
            map[k] = UNSET;
            used[t] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }

    /// First automorphism extending `forced`, if any.
    pub(crate) fn find(&self, forced: &[(usize, usize)]) -> Option<Permutation> {
        let mut found = None;
        let _ = self.for_each(forced, |m| {
            found = Some(m.to_vec());
            ControlFlow::Break(())
        });
        found.map(Permutation::from_image_unchecked)
    }

    /// First non-identity automorphism fixing every vertex of `fixed`.
    pub(crate) fn find_nontrivial_fixing(&self, fixed: &[usize]) -> Option<Permutation> {
        let forced: Vec<(usize, usize)> = fixed.iter().map(|&v| (v, v)).collect();
        let mut found = None;
        let _ = self.for_each(&forced, |m| {
            if m.iter().enumerate().any(|(i, &v)| i != v) {
                found = Some(m.to_vec());
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        found.map(Permutation::from_image_unchecked)
    }

    /// Order and strong generating set via the pointwise stabilizer chain
    /// `G ≥ G_0 ≥ G_{0,1} ≥ ...`: `|G|` is the product of the orbit length of
    /// vertex `i` in the stabilizer of `0..i`.
    pub(crate) fn stabilizer_chain(&self) -> AutomorphismReport {
        let n = self.n;
        let mut group_order = BigUint::one();
        let mut generators = Vec::new();
        for i in 0..n {
            let forced: Vec<(usize, usize)> = (0..i).map(|j| (j, j)).collect();
            let mut in_orbit = vec![false; n];
            in_orbit[i] = true;
            let mut orbit = vec![i];
            let mut level: Vec<Permutation> = Vec::new();
            for t in i + 1..n {
                if in_orbit[t] || self.degree[t] != self.degree[i] {
                    continue;
                }
                let mut pairs = forced.clone();
                pairs.push((i, t));
                let Some(sigma) = self.find(&pairs) else {
                    continue;
                };
                level.push(sigma);
                // re-close the whole orbit under this level's generators
                let mut head = 0;
                orbit.push(t);
                in_orbit[t] = true;
                while head < orbit.len() {
                    let x = orbit[head];
                    head += 1;
                    for g in &level {
                        let y = g.apply(x);
                        if !in_orbit[y] {
                            in_orbit[y] = true;
                            orbit.push(y);
                        }
                    }
                }
            }
            group_order *= BigUint::from(orbit.len());
            generators.extend(level);
        }
        AutomorphismReport {
            group_order,
            generators,
        }
    }
}

fn check_cap(g: &Graph, cap: usize, what: &'static str) -> Result<()> {
    if g.n() > cap {
        Err(Error::CapExceeded {
            what,
            n: g.n(),
            cap,
        })
    } else {
        Ok(())
    }
}

/// Exact automorphism group order and a generating set by exhaustive
/// search. Refuses graphs with more than `cap` vertices.
pub fn brute_force_automorphisms(g: &Graph, cap: usize) -> Result<AutomorphismReport> {
    check_cap(g, cap, "brute-force automorphism search")?;
    Ok(Searcher::new(g).stabilizer_chain())
}

/// Every automorphism of `g`, in lexicographic order of image arrays.
pub fn all_automorphisms(g: &Graph, cap: usize) -> Result<Vec<Permutation>> {
    check_cap(g, cap, "automorphism enumeration")?;
    let mut out = Vec::new();
    let _ = Searcher::new(g).for_each(&[], |m| {
        out.push(Permutation::from_image_unchecked(m.to_vec()));
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// Searches the whole automorphism group for two non-trivial elements with
/// disjoint supports.
///
/// A non-trivial `τ` has support disjoint from `supp(σ)` exactly when it
/// fixes `supp(σ)` pointwise, so each distinct support needs one
/// stabilizer search.
pub fn exhaustive_disjoint_pair(
    g: &Graph,
    cap: usize,
) -> Result<Option<(Permutation, Permutation)>> {
    check_cap(g, cap, "exhaustive disjoint-automorphism search")?;
    let searcher = Searcher::new(g);
    let mut tried: HashSet<Vec<usize>> = HashSet::new();
    let mut result = None;
    let _ = searcher.for_each(&[], |m| {
        let support: Vec<usize> = (0..m.len()).filter(|&i| m[i] != i).collect();
        if support.is_empty() || !tried.insert(support.clone()) {
            return ControlFlow::Continue(());
        }
        match searcher.find_nontrivial_fixing(&support) {
            Some(tau) => {
                result = Some((Permutation::from_image_unchecked(m.to_vec()), tau));
                ControlFlow::Break(())
            }
            None => ControlFlow::Continue(()),
        }
    });
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(g: &Graph) -> u64 {
        let r = brute_force_automorphisms(g, 10).unwrap();
        assert!(r.generators.iter().all(|p| g.is_automorphism(p).unwrap()));
        r.group_order.try_into().unwrap()
    }

    #[test]
    fn small_orders() {
        assert_eq!(order(&Graph::path(3)), 2);
        assert_eq!(order(&Graph::star(3)), 6);
        assert_eq!(order(&Graph::complete(5)), 120);
        assert_eq!(order(&Graph::cycle(6)), 12);
        assert_eq!(order(&Graph::empty(4)), 24);
        assert_eq!(order(&Graph::empty(1)), 1);
        assert_eq!(order(&Graph::empty(0)), 1);
        // Petersen graph
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let petersen = Graph::from_edges(10, outer.chain(spokes).chain(inner)).unwrap();
        assert_eq!(order(&petersen), 120);
    }

    #[test]
    fn asymmetric_tree_on_seven_vertices() {
        // spine 0-1-2-3-4 with 5 on 1 and 6 on 5
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (5, 6)]).unwrap();
        let r = brute_force_automorphisms(&g, 10).unwrap();
        assert!(r.is_trivial() && r.generators.is_empty());
    }

    #[test]
    fn order_matches_full_enumeration() {
        let g = Graph::from_edges(8, [(0, 1), (1, 2), (2, 0), (3, 4), (5, 6), (6, 7)]).unwrap();
        let all = all_automorphisms(&g, 10).unwrap();
        assert_eq!(
            BigUint::from(all.len()),
            brute_force_automorphisms(&g, 10).unwrap().group_order
        );
        assert!(all.iter().all(|p| g.is_automorphism(p).unwrap()));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            brute_force_automorphisms(&Graph::path(11), 10),
            Err(Error::CapExceeded { n: 11, cap: 10, .. })
        ));
    }

    #[test]
    fn disjoint_pair_search() {
        assert!(exhaustive_disjoint_pair(&Graph::star(3), 10)
            .unwrap()
            .is_none());
        assert!(exhaustive_disjoint_pair(&Graph::path(5), 10)
            .unwrap()
            .is_none());
        assert!(exhaustive_disjoint_pair(&Graph::complete(3), 10)
            .unwrap()
            .is_none());
        let (a, b) = exhaustive_disjoint_pair(&Graph::complete(4), 10)
            .unwrap()
            .unwrap();
        assert!(a.support_disjoint(&b) && !a.is_identity() && !b.is_identity());
        // 4-cycle: the two reflections through opposite vertices
        let (a, b) = exhaustive_disjoint_pair(&Graph::cycle(4), 10)
            .unwrap()
            .unwrap();
        assert!(a.support_disjoint(&b));
        assert!(Graph::cycle(4).is_automorphism(&a).unwrap());
        assert!(Graph::cycle(4).is_automorphism(&b).unwrap());
    }
}
