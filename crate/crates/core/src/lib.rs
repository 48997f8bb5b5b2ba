//! Cayley-graph interconnection networks.
//!
//! Builds symmetric network topologies (hypercubes, folded and augmented
//! cubes, star and transposition graphs, tori, circulants, graphs from binary
//! matrices) as Cayley graphs, and checks their structure exactly at desk
//! scale: distances, vertex and edge connectivity with certificates,
//! parallel-path containers, automorphism groups, transitivity and normality.

pub mod codes;
pub mod connectivity;
pub mod containers;
pub mod error;
pub mod graph;
pub mod groups;
pub mod guard;
pub mod io;
pub mod metrics;
pub mod symmetry;
pub mod transpositions;

pub use error::{Error, Result};
pub use graph::{CayleyGraph, FamilySpec, Graph};
pub use groups::{GeneratingSet, GroupElement, GroupSpec};
pub use guard::Guards;
