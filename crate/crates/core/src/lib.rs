//! Exhaustive generation, verification and certifying coloring for
//! k-vertex-critical (P5, dart)-free graphs.
//!
//! Module map:
//! - [`graph`], [`graph6`], [`canon`]: graph values, the interchange format and
//!   canonical labeling.
//! - [`detect`]: induced-subgraph search and the special configurations
//!   (holes, antiholes, comparable pairs, homogeneous sets).
//! - [`coloring`]: exact k-colorability and chromatic number.
//! - [`criticality`]: vertex-criticality, family-relative criticality and
//!   the obstruction checkers for critical graphs.
//! - [`enumerate`]: the vertex-by-vertex extension search.
//! - [`structure`]: partitions around an induced C5 or odd antihole and their
//!   property checks.
//! - [`certify`]: certifying k-colorability against a critical-graph database.
//! - [`manifest`]: corpus and database file formats.

pub mod canon;
pub mod certify;
pub mod coloring;
pub mod criticality;
pub mod detect;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod manifest;
pub mod structure;

pub use canon::{are_isomorphic, canonical_form, canonical_labeling, CanonicalForm};
pub use error::{Error, GraphError, Result};
pub use graph::{Graph, NamedGraph, VertexSet, MAX_VERTICES};
