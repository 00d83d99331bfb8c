//! Antimatroids and bipartite matchings.
//!
//! Two maps from left-vertex subsets to right-vertex subsets are built here:
//! one from deferred acceptance on a stable matching instance, one from the
//! canonical maximum-weight matching of a weighted instance. Both induce
//! antimatroids on the right side, which [`induced`] enumerates and checks.
//! [`representation`] goes the other way and turns any antimatroid into a
//! stable or weighted instance whose induced family is exactly that
//! antimatroid.
//!
//! Every algorithm has a brute-force counterpart (matching enumeration,
//! exhaustive sweeps) so the claims can be cross-checked at small sizes.

pub mod antimatroid;
pub mod error;
pub mod generate;
pub mod graph;
pub mod induced;
pub mod io;
pub mod representation;
pub mod stable;
pub mod subset;
pub mod weighted;

pub use antimatroid::{AxiomViolation, ChainDecoration, SetFamily, SetMask};
pub use error::{Error, Result};
pub use generate::{random_stable, random_weighted, InstanceShape};
pub use graph::{BipartiteGraph, Component, ComponentShape, EdgeId, Matching, Vertex};
pub use induced::{InducedFamilyReport, InstanceKind, Sweep};
pub use representation::{
    RepresentationBundle, RepresentationKind, RepresentedInstance, WeightFormula,
};
pub use stable::{PreferenceProfile, ProposalOrder, StableMatchingInstance};
pub use subset::LeftSet;
pub use weighted::{Weight, WeightFunction, WeightedInstance};

/// Default cap on the edge count handed to exhaustive matching enumeration.
pub const DEFAULT_ORACLE_LIMIT: usize = 24;

/// Default cap on `|U|` for the full `2^|U|` codomain sweep.
pub const DEFAULT_SWEEP_LIMIT: usize = 20;
