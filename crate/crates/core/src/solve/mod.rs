//! Exact optimization over linear index codes and the classical bounds
//! around minrank.

mod bounds;
mod cliques;
mod minrank;
mod restricted;

use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use bounds::{check_product, check_sandwich, Product, Sandwich};
pub use cliques::{clique_cover_number, greedy_clique_cover, greedy_cover_code, independence_number};
pub use minrank::{minrank_exact, minrank_matrix_oracle};
pub use restricted::{ldgm_min_length, local_min_length};

use crate::gf::Field;
use crate::graph::Graph;

/// Exact clique cover is refused above this many vertices.
pub const MAX_EXACT_COVER_VERTICES: usize = 20;

/// Hard limits on exhaustive searches. Exceeding any of them is a refusal,
/// never a truncated answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    /// Subspaces enumerated at a single candidate length.
    pub subspaces: u128,
    /// Representing matrices enumerated by the direct minrank oracle.
    pub matrices: u128,
    /// Search-tree nodes for the low-density search.
    pub nodes: u128,
    /// Query subsets per receiver.
    pub query_subsets: u128,
    /// Span vectors enumerated by the weight-counting checks.
    pub span: u128,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            // [10 choose 5]_2 ≈ 1.09e8 fits.
            subspaces: 1 << 27,
            matrices: 1 << 22,
            nodes: 1 << 26,
            query_subsets: crate::code::QUERY_SUBSET_BUDGET,
            span: crate::gf::SPAN_BUDGET,
        }
    }
}

impl Budgets {
    /// Every limit set to `limit`.
    pub fn uniform(limit: u128) -> Self {
        Budgets {
            subspaces: limit,
            matrices: limit,
            nodes: limit,
            query_subsets: limit,
            span: limit,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult<W> {
    pub value: usize,
    pub witness: W,
    /// Candidates examined (subspaces, matrices, search nodes, ...).
    pub explored: u64,
    pub elapsed_ms: u64,
}

impl<W> SolveResult<W> {
    pub(crate) fn new(value: usize, witness: W, explored: u64, start: Instant) -> Self {
        SolveResult {
            value,
            witness,
            explored,
            elapsed_ms: start.elapsed().as_millis() as u64,
        }
    }

    /// Flat record `graph-hash q field value elapsed_ms`; `q` is the density
    /// or query bound of a restricted search, `-` otherwise.
    pub fn record(&self, g: &Graph, q: Option<usize>, field: Field) -> String {
        let q = q.map_or_else(|| "-".to_string(), |q| q.to_string());
        format!(
            "{:016x} {q} {} {} {}",
            g.stable_hash(),
            field.order(),
            self.value,
            self.elapsed_ms
        )
    }
}

/// Search starts at α(G) for undirected graphs and at 1 for directed ones.
pub(crate) fn length_lower_bound(g: &Graph) -> crate::Result<usize> {
    if g.is_directed() {
        Ok(1)
    } else {
        Ok(independence_number(g)?.value)
    }
}
