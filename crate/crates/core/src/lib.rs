//! Permutation-group engine for root clusters, minimal generating sets of
//! splitting fields, and cluster towers.
//!
//! Every intermediate field of a splitting field is represented by its
//! subgroup under the Galois correspondence, so the whole crate works with
//! explicit finite permutation groups and exact integer arithmetic; there is
//! no floating point anywhere.

mod error;

pub mod clusters;
pub mod gensets;
pub mod models;
pub mod numtheory;
pub mod permgroup;
pub mod report;
pub mod towers;
pub mod verify;

pub use error::{Error, Result};

/// Enumeration budgets. Defaults are sized for desk-scale runs; the CLI can
/// override each one via flag or environment variable.
#[derive(Debug, Clone, Copy)]
pub struct Budgets {
    /// Maximum number of elements a generator closure may produce.
    pub closure_elements: u64,
    /// Maximum number of candidate subsets tested during minimal-set
    /// enumeration.
    pub subset_tests: u64,
    /// Maximum number of nodes visited by the distinct-tower search.
    pub dfs_nodes: u64,
    /// Maximum number of orderings expanded per root set (|B|! towers).
    pub orderings: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            closure_elements: 1_000_000,
            subset_tests: 10_000_000,
            dfs_nodes: 10_000_000,
            orderings: 3_628_800, // 10!
        }
    }
}
