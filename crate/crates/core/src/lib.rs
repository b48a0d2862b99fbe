//! Symmetry and quantum symmetry of graphs and random labelled trees.
//!
//! * [`graph`], [`graph6`]: simple graphs, permutations, graph6 I/O.
//! * [`prufer`], [`sampling`]: the Prüfer bijection, exhaustive tree
//!   enumeration, and seeded random trees and `G(n, p)` graphs.
//! * [`cherry`], [`moments`], [`census`], [`montecarlo`]: cherry counts, their
//!   exact moments, exhaustive tallies and Monte Carlo estimates.
//! * [`symmetry`]: automorphism groups (brute force and trees) and the
//!   quantum-symmetry classifier.
//! * [`coherent`]: WL-2 coherent configurations and orbitals.
//!
//! Permutations compose as `(p ∘ q)(i) = p(q(i))` everywhere.

pub mod census;
pub mod cherry;
pub mod coherent;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod moments;
pub mod montecarlo;
pub mod prufer;
pub mod sampling;
pub mod symmetry;

pub use cherry::{count_cherries, disjoint_cherry_pair, find_cherries, Cherry};
pub use coherent::{
    is_coherent, orbital_configuration, verify_coherence_axioms, wl2_stabilize, AxiomViolation,
    CoherentConfiguration, OrbitalConfiguration, DEFAULT_WL_CAP,
};
pub use error::{Error, Result};
pub use graph::{AdjacencyMatrix, Graph, Permutation};
pub use moments::{AsymptoticMoments, MomentReport};
pub use montecarlo::{Proportion, TrialSummary};
pub use prufer::{
    enumerate_all_trees, prufer_decode, prufer_encode, tree_count, PrueferSequence,
    DEFAULT_ENUMERATION_CAP,
};
pub use sampling::{SampleKind, SampleStream};
pub use symmetry::{
    brute_force_automorphisms, classify, find_disjoint_automorphism_pair, tree_automorphism_order,
    AutomorphismReport, ClassicalStatus, ClassifyOptions, QuantumStatus, QuantumSymmetryVerdict,
    DEFAULT_BRUTE_FORCE_CAP,
};
