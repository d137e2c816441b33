//! Exhaustive and backtracking search.
//!
//! Everything here is built on one engine: depth-first line completion with
//! unit propagation, branching on the most constrained line first. The same
//! engine enumerates t-fold MDS codes, enumerates bitrades, decides
//! splittability, searches for embeddings, and completes partial
//! quasigroups; only the per-line rule and the forced cells differ.
//!
//! Reports are deterministic: for a fixed input and options, the same
//! [`SearchReport`] is produced on every run and for every worker count.
//! Parallel runs split the tree at the first decision level and merge the
//! independent subtree results in branch order.

mod bitrades;
mod embed;
mod engine;
mod mds;
mod quasigroup;
mod spectrum;
mod split;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cube::{CellSet, Params};

pub use bitrades::{brute_force_bitrades, enumerate_bitrades_q3, BruteStrategy};
pub use embed::embedding_search;
pub use mds::enumerate_mds;
pub use quasigroup::{complete_partial_quasigroup, PartialQuasigroup};
pub use spectrum::pairwise_symdiff_spectrum;
pub use split::split_check;

/// Default node budget: the feasibility guard for every search.
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

/// Default bound on stored objects.
pub const DEFAULT_STORE_CAP: usize = 1_000_000;

/// Knobs shared by all searches.
#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Refuse after this many nodes. In parallel runs the budget applies to
    /// each first-level subtree; reported totals are summed.
    pub node_budget: u64,
    /// Keep the found objects in the report (canonically sorted).
    pub store_objects: bool,
    /// Refuse rather than store more objects than this.
    pub store_cap: usize,
    /// Worker threads for subtree-parallel searches. Searches that stop at
    /// the first find run sequentially regardless.
    pub workers: usize,
    /// Re-verify every emitted object against its defining check.
    pub self_check: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            node_budget: DEFAULT_NODE_BUDGET,
            store_objects: false,
            store_cap: DEFAULT_STORE_CAP,
            workers: 1,
            self_check: false,
        }
    }
}

/// Outcome of a search: what was counted, how, and at what cost.
///
/// The histogram maps object size to multiplicity and always totals `count`.
/// `nodes` measures search effort (attempted branch completions, scanned
/// subsets, or examined pairs, depending on the operation).
///
/// JSON: `{"objective", "count", "histogram", "nodes", "objects"?}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    #[serde(skip)]
    pub params: Option<Params>,
    pub objective: String,
    pub count: u64,
    pub histogram: BTreeMap<usize, u64>,
    pub nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub objects: Option<Vec<CellSet>>,
}

impl SearchReport {
    fn new(params: Params, objective: String) -> Self {
        SearchReport {
            params: Some(params),
            objective,
            count: 0,
            histogram: BTreeMap::new(),
            nodes: 0,
            objects: None,
        }
    }
}
