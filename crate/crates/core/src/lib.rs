//! Exact combinatorics for Ramsey properties of r-uniform hypergraphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`hypergraph`]: the data model with its text/JSON formats, copy
//!   enumeration and canonical forms.
//! * [`density`]: exact maximum densities and the predicates built on them.
//! * [`classes`]: membership in the highly connected families `X_r`, `Y_r`
//!   and a sufficient condition for Ramsey-denseness.
//! * [`arrowing`]: the `G → (F_1, …, F_s)` decision search and small Ramsey
//!   numbers.
//! * [`containment`]: the partition condition for Ramsey-class containment
//!   and Ramsey equivalence.
//! * [`randlab`]: seeded random hypergraphs and threshold experiments.
//! * [`catalog`]: named small hypergraphs.

pub mod arrowing;
pub mod catalog;
pub mod classes;
pub mod containment;
pub mod density;
pub mod hypergraph;
pub mod randlab;

pub use hypergraph::{Hypergraph, HypergraphError, VertexSet};
