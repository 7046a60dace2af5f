//! Exact computation for linear index coding over small prime fields.
//!
//! The crate decides whether a generator matrix is a linear index code for a
//! side-information graph, derives and simulates the receivers' decoders,
//! computes minrank and its classical bounds exactly on small graphs, searches
//! the locally decodable and low-density restricted models, builds families of
//! small dependence sets, and drives seeded random-graph experiments.

pub mod code;
pub mod depsets;
pub mod error;
pub mod experiment;
pub mod gf;
pub mod graph;
pub mod rng;
pub mod solve;

pub use code::{DecodingScheme, IndexCode};
pub use error::{Error, Result};
pub use gf::{Field, FieldElement, Matrix};
pub use graph::{GnpConfig, Graph};
pub use solve::{Budgets, SolveResult};
