//! Classical automorphism groups and the sufficient criteria for quantum
//! symmetry and quantum asymmetry.

pub mod brute;
pub mod quantum;
pub mod tree;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::graph::Permutation;

pub use brute::{
    all_automorphisms, brute_force_automorphisms, exhaustive_disjoint_pair, DEFAULT_BRUTE_FORCE_CAP,
};
pub use quantum::{
    cherry_swap, classify, find_disjoint_automorphism_pair, Certificate, ClassicalStatus,
    ClassifyOptions, QuantumStatus, QuantumSymmetryVerdict,
};
pub use tree::{tree_automorphism_group_order, tree_automorphism_order, CanonicalTree};

pub(crate) fn ser_biguint<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Exact group order plus a generating set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutomorphismReport {
    #[serde(serialize_with = "ser_biguint")]
    pub group_order: BigUint,
    pub generators: Vec<Permutation>,
}

impl AutomorphismReport {
    pub fn is_trivial(&self) -> bool {
        self.group_order.is_one()
    }
}
