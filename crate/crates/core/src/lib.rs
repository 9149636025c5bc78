//! Minimum vertex cover for large sparse graphs.
//!
//! The solver builds a starting cover with degree-1 / degree-2 reduction
//! rules (falling back to max-gain picks when no rule fires), then improves it
//! with a greedy exchange local search. Every vertex lives in one slot of a
//! single array that is segmented into alternating `loss-k` / `gain-k`
//! regions ([`AltPartitions`]), so score changes are O(1) and extremal scans
//! cost O(d_max).
//!
//! Reproducibility: all randomness comes from [`SolverRng`] (ChaCha8 seeded
//! from a `u64`), which produces the same stream on every platform.

pub mod bench;
pub mod construct;
pub mod counters;
pub mod cover;
mod error;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod partitions;
pub mod reductions;
pub mod search;

pub use construct::{
    eliminate_redundant, init_vc, max_gain_construct_vc, min_gain_construct_vc, CoverResult,
};
pub use counters::OpCounters;
pub use cover::CoverState;
pub use error::{Error, Result};
pub use graph::{build_graph, random_graph, Graph, VertexId};
pub use partitions::AltPartitions;
pub use reductions::FixedSet;
pub use search::{solve, SearchConfig, SearchState, SolveOutcome};

use rand::SeedableRng;
use serde::{Deserialize, Serialize};

/// Portable seeded generator used by every randomized component.
pub type SolverRng = rand_chacha::ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SolverRng {
    SolverRng::seed_from_u64(seed)
}

/// How ties among equally scored vertices are broken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieBreak {
    /// Uniform over the candidates (one RNG draw).
    #[default]
    Random,
    /// Smallest vertex id among the candidates.
    Deterministic,
}

/// Whether a returned cover is proven minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OptInfo {
    OptimalGuaranteed,
    OptimalNotGuaranteed,
}

impl OptInfo {
    pub fn is_guaranteed(self) -> bool {
        matches!(self, OptInfo::OptimalGuaranteed)
    }
}
