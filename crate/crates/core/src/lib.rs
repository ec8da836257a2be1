//! Lagged random walk sampling on simple undirected graphs.
//!
//! The crate covers the walk itself ([`kernel`], [`chain`]), what a walk
//! observes ([`sampling`]) and the estimators built on those observations
//! ([`estimators`]). Ground truth for the estimators comes from brute-force
//! enumeration in [`motif`].

pub mod chain;
pub mod error;
pub mod estimators;
pub mod graph;
pub mod kernel;
pub mod motif;
pub mod rng;
pub mod sampling;

pub use error::{Error, Result};
pub use graph::{Graph, NodeId, Topology};
pub use kernel::{Init, Normalization, WalkConfig};
pub use motif::{MotifKind, MotifOccurrence, MotifValue};
