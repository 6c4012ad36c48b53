//! The random greedy embedding: `φ_0 = v` with probability `d(v)/2m`, then
//! each `φ_i` uniform over the unused neighbours of `φ_{a(i)}`.

mod dist;
mod entropy;
mod gamma;
mod sampler;

pub use dist::{exact_distribution, ExactDistribution, LevelEntry, DEFAULT_MAX_ENTRIES};
pub use entropy::{entropy_report, EntropyReport, LevelTerms, PiTerms, RRow};
pub use gamma::{classify_complete, gamma_probability, r_value, Endpoints, GammaSelector, RValue, Restriction};
pub use sampler::{sample_greedy, GreedySampler, SampleOutcome};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, RootedTree};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DistError {
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("exact law needs more than {cap} partial embeddings")]
    BudgetExceeded { cap: usize },
    #[error("level {level} invalid for a tree with {t} edges")]
    InvalidLevel { level: usize, t: usize },
    #[error("path has length {got}, the tree path x_0 -> x_a(i+1) has length {expected}")]
    PathLength { expected: usize, got: usize },
    #[error("no run of the greedy process embeds the whole tree")]
    EmptySupport,
    #[error("internal consistency check failed: {what} (residual {residual:e})")]
    InternalConsistency { what: String, residual: f64 },
}

/// `γ^i = (γ_0, ..., γ_i)`; `images[j]` is the image of `x_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PartialEmbedding {
    pub images: Vec<usize>,
}

impl PartialEmbedding {
    pub fn new(images: Vec<usize>) -> PartialEmbedding {
        PartialEmbedding { images }
    }

    pub fn level(&self) -> usize {
        self.images.len() - 1
    }

    /// Injective and edge-preserving on `T^i`.
    pub fn is_valid(&self, tree: &RootedTree, g: &Graph) -> bool {
        let k = self.images.len();
        if k == 0 || k > tree.vertex_count() || self.images.iter().any(|&v| v >= g.n()) {
            return false;
        }
        let mut sorted = self.images.clone();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() == k && (1..k).all(|j| g.has_edge(self.images[tree.ancestor(j)], self.images[j]))
    }
}
