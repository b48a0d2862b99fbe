//! Deciding quantum symmetry through two sufficient criteria.
//!
//! Two non-trivial automorphisms with disjoint supports force quantum
//! symmetry; a full coherent algebra (`n²` WL classes) forces quantum
//! asymmetry. When neither applies the quantum status stays undetermined.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Serialize, Serializer};

use super::brute::{brute_force_automorphisms, exhaustive_disjoint_pair, DEFAULT_BRUTE_FORCE_CAP};
use super::tree::tree_automorphism_group_order;
use crate::cherry::{disjoint_cherry_pair, find_cherries, Cherry};
use crate::coherent::{wl2_stabilize, DEFAULT_WL_CAP};
use crate::graph::{Graph, Permutation};

/// The transposition `(u1 u2)` on `n` points.
pub fn cherry_swap(c: &Cherry, n: usize) -> Permutation {
    assert!(
        c.u1 < n && c.u2 < n && c.u1 != c.u2,
        "cherry {c:?} outside 0..{n}"
    );
    let mut image: Vec<usize> = (0..n).collect();
    image.swap(c.u1, c.u2);
    Permutation::from_image_unchecked(image)
}

/// Two non-trivial automorphisms with disjoint supports, if one is found.
///
/// Two vertex-disjoint cherries give the pair directly. Otherwise graphs
/// with at most `brute_cap` vertices are searched exhaustively; for larger
/// graphs `None` proves nothing.
pub fn find_disjoint_automorphism_pair(
    g: &Graph,
    brute_cap: usize,
) -> Option<(Permutation, Permutation)> {
    if let Some((a, b)) = disjoint_cherry_pair(&find_cherries(g)) {
        return Some((cherry_swap(&a, g.n()), cherry_swap(&b, g.n())));
    }
    if g.n() <= brute_cap {
        return exhaustive_disjoint_pair(g, brute_cap).expect("n is within the cap");
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub brute_force_cap: usize,
    pub wl_cap: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            brute_force_cap: DEFAULT_BRUTE_FORCE_CAP,
            wl_cap: DEFAULT_WL_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum QuantumStatus {
    QuantumSymmetric,
    QuantumAsymmetric,
    SymmetricUndeterminedQuantum,
    AsymmetricUndeterminedQuantum,
    /// Neither the classical nor the quantum status could be decided within
    /// the caps.
    Undetermined,
}

impl QuantumStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::QuantumSymmetric => "QUANTUM_SYMMETRIC",
            Self::QuantumAsymmetric => "QUANTUM_ASYMMETRIC",
            Self::SymmetricUndeterminedQuantum => "SYMMETRIC_UNDETERMINED_QUANTUM",
            Self::AsymmetricUndeterminedQuantum => "ASYMMETRIC_UNDETERMINED_QUANTUM",
            Self::Undetermined => "UNDETERMINED",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClassicalStatus {
    Symmetric,
    Asymmetric,
    Unknown,
}

impl ClassicalStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Symmetric => "SYMMETRIC",
            Self::Asymmetric => "ASYMMETRIC",
            Self::Unknown => "UNKNOWN",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Two non-trivial automorphisms with disjoint supports, as image arrays.
    DisjointAutomorphisms {
        first: Permutation,
        second: Permutation,
    },
    /// The WL class count of a full coherent configuration (`n²`).
    FullCoherentAlgebra { n: usize, num_classes: usize },
}

fn ser_opt_biguint<S: Serializer>(x: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_some(&x.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuantumSymmetryVerdict {
    pub status: QuantumStatus,
    pub classical: ClassicalStatus,
    /// `|Aut(Γ)|` when it was computed exactly.
    #[serde(serialize_with = "ser_opt_biguint")]
    pub group_order: Option<BigUint>,
    pub certificate: Option<Certificate>,
}

impl QuantumSymmetryVerdict {
    /// Re-checks the certificate against `g` from scratch.
    pub fn verify(&self, g: &Graph) -> bool {
        match (&self.status, &self.certificate) {
            (
                QuantumStatus::QuantumSymmetric,
                Some(Certificate::DisjointAutomorphisms { first, second }),
            ) => {
                first.len() == g.n()
                    && second.len() == g.n()
                    && !first.is_identity()
                    && !second.is_identity()
                    && first.support_disjoint(second)
                    && g.is_automorphism(first).unwrap_or(false)
                    && g.is_automorphism(second).unwrap_or(false)
            }
            (
                QuantumStatus::QuantumAsymmetric,
                Some(Certificate::FullCoherentAlgebra { n, num_classes }),
            ) => {
                *n == g.n()
                    && *num_classes == n * n
                    && wl2_stabilize(g, g.n())
                        .map(|c| c.is_full())
                        .unwrap_or(false)
            }
            (QuantumStatus::QuantumSymmetric | QuantumStatus::QuantumAsymmetric, _) => false,
            (_, None) => true,
            (_, Some(_)) => false,
        }
    }

    /// True iff the certificate is a pair of transpositions.
    pub fn has_transposition_pair(&self) -> bool {
        matches!(
            &self.certificate,
            Some(Certificate::DisjointAutomorphisms { first, second })
                if first.support().len() == 2 && second.support().len() == 2
        )
    }
}

fn classical_status(g: &Graph, opts: &ClassifyOptions) -> (ClassicalStatus, Option<BigUint>) {
    let order = if g.n() >= 1 && g.is_tree() {
        Some(tree_automorphism_group_order(g).expect("checked to be a tree"))
    } else if g.n() <= opts.brute_force_cap {
        Some(
            brute_force_automorphisms(g, opts.brute_force_cap)
                .expect("n is within the cap")
                .group_order,
        )
    } else {
        None
    };
    match order {
        Some(order) if order.is_one() => (ClassicalStatus::Asymmetric, Some(order)),
        Some(order) => (ClassicalStatus::Symmetric, Some(order)),
        // a cherry swap is a non-trivial automorphism
        None if !find_cherries(g).is_empty() => (ClassicalStatus::Symmetric, None),
        None => (ClassicalStatus::Unknown, None),
    }
}

/// Runs both criteria on `g`.
///
/// A disjoint automorphism pair gives `QUANTUM_SYMMETRIC`; otherwise a full
/// coherent algebra gives `QUANTUM_ASYMMETRIC`; otherwise the classical
/// status is reported with the quantum status left open. WL refinement is
/// skipped when a non-trivial automorphism is already known, since the
/// algebra cannot be full then.
pub fn classify(g: &Graph, opts: &ClassifyOptions) -> QuantumSymmetryVerdict {
    let (classical, group_order) = classical_status(g, opts);
    if let Some((first, second)) = find_disjoint_automorphism_pair(g, opts.brute_force_cap) {
        return QuantumSymmetryVerdict {
            status: QuantumStatus::QuantumSymmetric,
            classical: ClassicalStatus::Symmetric,
            group_order,
            certificate: Some(Certificate::DisjointAutomorphisms { first, second }),
        };
    }
    if classical != ClassicalStatus::Symmetric && g.n() >= 1 && g.n() <= opts.wl_cap {
        let config = wl2_stabilize(g, opts.wl_cap).expect("n is within the cap");
        if config.is_full() {
            assert!(
                group_order.as_ref().is_none_or(One::is_one),
                "full coherent algebra on a graph with a non-trivial automorphism"
            );
            return QuantumSymmetryVerdict {
                status: QuantumStatus::QuantumAsymmetric,
                classical: ClassicalStatus::Asymmetric,
                group_order: Some(BigUint::one()),
                certificate: Some(Certificate::FullCoherentAlgebra {
                    n: g.n(),
                    num_classes: config.num_classes(),
                }),
            };
        }
    }
    let status = match classical {
        ClassicalStatus::Symmetric => QuantumStatus::SymmetricUndeterminedQuantum,
        ClassicalStatus::Asymmetric => QuantumStatus::AsymmetricUndeterminedQuantum,
        ClassicalStatus::Unknown => QuantumStatus::Undetermined,
    };
    QuantumSymmetryVerdict {
        status,
        classical,
        group_order,
        certificate: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn double_star() -> Graph {
        // a=0, b=1; x,y=2,3 on a; z,w=4,5 on b
        Graph::from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap()
    }

    #[test]
    fn swap_of_star_cherry() {
        let star = Graph::star(3);
        let c = Cherry { u1: 1, u2: 2, v: 0 };
        let s = cherry_swap(&c, 4);
        assert_eq!(s.image(), &[0, 2, 1, 3]);
        assert_eq!(s.support(), vec![1, 2]);
        assert!(s.compose(&s).unwrap().is_identity());
        assert!(star.is_automorphism(&s).unwrap());
    }

    #[test]
    fn double_star_is_quantum_symmetric() {
        let g = double_star();
        let (a, b) = find_disjoint_automorphism_pair(&g, 10).unwrap();
        assert_eq!(a.support(), vec![2, 3]);
        assert_eq!(b.support(), vec![4, 5]);
        let v = classify(&g, &ClassifyOptions::default());
        assert_eq!(v.status, QuantumStatus::QuantumSymmetric);
        assert_eq!(v.group_order, Some(BigUint::from(8u32)));
        assert!(v.verify(&g) && v.has_transposition_pair());
        let json = serde_json::to_string(&v).unwrap();
        assert!(json.contains(r#""first":[0,1,3,2,4,5]"#), "{json}");
        assert!(json.contains(r#""status":"QUANTUM_SYMMETRIC""#));
    }

    #[test]
    fn star_and_triangle_stay_undetermined() {
        for g in [Graph::star(3), Graph::complete(3)] {
            assert!(find_disjoint_automorphism_pair(&g, 10).is_none());
            let v = classify(&g, &ClassifyOptions::default());
            assert_eq!(v.status, QuantumStatus::SymmetricUndeterminedQuantum);
            assert_eq!(v.group_order, Some(BigUint::from(6u32)));
            assert!(v.verify(&g));
        }
        assert!(find_disjoint_automorphism_pair(&Graph::path(5), 10).is_none());
    }

    #[test]
    fn asymmetric_tree_is_quantum_asymmetric() {
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (5, 6)]).unwrap();
        let v = classify(&g, &ClassifyOptions::default());
        assert_eq!(v.status, QuantumStatus::QuantumAsymmetric);
        assert_eq!(
            v.certificate,
            Some(Certificate::FullCoherentAlgebra {
                n: 7,
                num_classes: 49
            })
        );
        assert!(v.verify(&g));
    }

    #[test]
    fn caps_bound_the_work() {
        // asymmetric tree, but both engines refused except the tree one
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (5, 6)]).unwrap();
        let opts = ClassifyOptions {
            brute_force_cap: 3,
            wl_cap: 3,
        };
        let v = classify(&g, &opts);
        assert_eq!(v.status, QuantumStatus::AsymmetricUndeterminedQuantum);
        // a 7-cycle plus chord is not a tree; with tiny caps nothing is known
        let g = Graph::from_edges(7, (0..7).map(|i| (i, (i + 1) % 7)).chain([(0, 3)])).unwrap();
        assert_eq!(classify(&g, &opts).status, QuantumStatus::Undetermined);
    }

    #[test]
    fn tampered_certificates_fail_verification() {
        let g = double_star();
        let mut v = classify(&g, &ClassifyOptions::default());
        v.certificate = Some(Certificate::DisjointAutomorphisms {
            first: Permutation::transposition(6, 2, 3).unwrap(),
            second: Permutation::transposition(6, 3, 4).unwrap(),
        });
        assert!(!v.verify(&g));
        v.certificate = None;
        assert!(!v.verify(&g));
    }
}
