//! Canonical representations in finite semidistributive lattices, lattice
//! congruences and quotients, and the arc model of the weak order on
//! permutations: non-crossing arc diagrams, semi-crossing arc bidiagrams,
//! weak order interval posets, and Kreweras maps in weak-order quotients.
//!
//! The building blocks:
//!
//! - [`FiniteLattice`]: dense finite lattices with joins, meets,
//!   irreducibles, canonical join/meet representations and the kappa maps.
//! - [`Congruence`]: lattice congruences, the forcing preorder, and
//!   quotient lattices.
//! - [`FlagComplex`]: the canonical join, canonical meet, and canonical
//!   complexes, stored as flag complexes (vertices + edges).
//! - [`Permutation`], [`Arc`], [`Ncad`], [`Scab`]: the weak order and its
//!   arc diagram combinatorics.
//! - [`Woip`]: weak order interval posets and their bijections with
//!   semi-crossing arc bidiagrams.
//! - [`ArcIdeal`] and the Kreweras maps in arbitrary weak-order quotients,
//!   specializing to the classical Kreweras complement on non-crossing
//!   partitions and to rowmotion on distributive lattices.

mod arc;
mod bitset;
mod complex;
mod congruence;
mod diagram;
mod distributive;
mod kreweras;
mod lattice;
mod perm;
mod poset;
mod woip;

use serde::{Deserialize, Serialize};

/// Which of the two lattice operations an object is attached to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Join,
    Meet,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Join => Side::Meet,
            Side::Meet => Side::Join,
        }
    }
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Join => write!(f, "join"),
            Side::Meet => write!(f, "meet"),
        }
    }
}

pub use arc::{
    enumerate_arcs, join_irreducible_permutation, meet_irreducible_permutation,
    semi_cross_conflict, Arc, ArcError, MAX_ARC_POINTS,
};
pub use complex::{
    canonical_complex, canonical_join_complex, canonical_meet_complex, cc_face_of_interval,
    cc_faces, cc_interval_of_face, kappa_vertex, restrict_to_congruence,
    restriction_matches_quotient, verify_flagness, CanonicalVertex, ComplexError, ComplexJson,
    Face, FlagComplex, VertexJson, DEFAULT_FACE_CAP,
};
pub use congruence::{
    cjr_of_projection, congruence_from_uncontracted, forcing_preorder, quotient, Congruence,
    CongruenceError, CongruenceJson, ForcingPreorder, QuotientLattice,
};
pub use diagram::{
    interval_table, join_diagram, meet_diagram, permutation_of_join_diagram,
    permutation_of_meet_diagram, semi_crossing_complex, Ncad, Scab, ScabJson, MAX_TABLE_N,
};
pub use distributive::{distributive_from_poset, rowmotion, DistributiveLattice};
pub use kreweras::{
    all_noncrossing_partitions, kreweras_complement, kreweras_join, kreweras_join_in_ideal,
    kreweras_meet, kreweras_meet_in_ideal, partition_to_up_arc_diagram, project_diagram,
    up_arc_diagram_to_partition, ArcIdeal, KrewerasError, NoncrossingPartition,
};
pub use lattice::{
    ElementId, FiniteLattice, IrreducibleInfo, LatticeError, LatticeJson, Representation,
    BRUTE_FORCE_MAX_CANDIDATES, MAX_LATTICE_SIZE,
};
pub use perm::{weak_order_lattice, PermError, Permutation, WeakOrder, MAX_WEAK_ORDER_N};
pub use poset::{all_posets, Poset, PosetError};
pub use woip::{Woip, WoipError, WoipJson};
