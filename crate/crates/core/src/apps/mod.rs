//! Bijoin decomposition of undirected graphs and tournaments.
//!
//! The umodules of the standard relation of a graph or tournament are its
//! bijoins. Totally decomposable tournaments are exactly the locally
//! transitive ones; they carry a circular order that drives isomorphism
//! testing and a feedback vertex set procedure.

pub mod bijoin;
pub mod extension;
pub mod graph;
pub mod tournament;

pub use bijoin::{bijoin_witness, BijoinWitness};
pub use extension::{extension_sequence, ExtensionKind, ExtensionSequence, ExtensionStep};
pub use tournament::{
    circular_order, decomposability_checks, diamond_witness, feedback_vertex_set, is_diamond_free,
    is_locally_transitive, is_totally_decomposable, isomorphic_decomposable, CircularOrder,
};
