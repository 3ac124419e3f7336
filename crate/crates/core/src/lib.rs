//! Certified clique minors in Cartesian products of graphs.
//!
//! Every construction in this crate emits a [`minor::MinorModel`] (explicit
//! branch sets) that has been run through the verifier before it is returned.
//! Exact desk-scale oracles for the chromatic number, the Hadwiger number and
//! product factorization back the constructions up.

pub mod affine;
pub mod coloring;
pub mod construction;
pub mod error;
pub mod graph;
pub mod minor;
pub mod product;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use minor::MinorModel;
