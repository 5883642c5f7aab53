//! Umodular decomposition of homogeneous relations.
//!
//! A homogeneous relation assigns to every element `x` an equivalence
//! relation on the other elements. A *umodule* is a set whose members all
//! induce the same partition on the outside. This crate tests umodules,
//! computes maximal umodules by partition refinement, builds the inclusion
//! tree of strong umodules and, for self-complemented families, the unrooted
//! umodular decomposition tree, either generically or through a Seidel switch.
//! Applications cover bijoins of graphs and tournaments.

pub mod apps;
pub mod bitree;
pub mod error;
pub mod gen;
pub mod modular;
pub mod oracle;
pub mod partition;
pub mod relation;
pub mod seidel;
pub mod strong;
pub mod structures;
pub mod threshold;

pub use bitree::{build_umodular_tree, ensure_self_complemented, CanonicalTree, NodeKind, UDecompTree};
pub use error::{Error, Result};
pub use modular::{modular_strong_tree, ModKind, ModularTree};
pub use partition::{mu, mu_hopcroft, mu_naive, refine, signature, MuStrategy, Partition};
pub use relation::{build_standard_relation, HomogeneousRelation, Origin, StandardRelation};
pub use seidel::{fast_umodular_tree, seidel_switch, verify_switch_correspondence, SwitchedRelation};
pub use strong::{check_crossing_family, is_umodular_prime, strong_umodules, LaminarTree};
pub use structures::{ArcStructure, GroundSet, Tournament, TwoStructure, UndirectedGraph};
pub use threshold::{check_threshold_umodule_property, is_threshold_graph};
