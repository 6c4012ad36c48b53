use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{DistError, PartialEmbedding};
use crate::graph::{Graph, RootedTree};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SampleOutcome {
    Embedded { images: Vec<usize> },
    /// The run stalled while trying to place `x_{level+1}`.
    DeadEnd { level: usize, images: Vec<usize> },
}

impl SampleOutcome {
    pub fn embedding(&self) -> Option<PartialEmbedding> {
        match self {
            SampleOutcome::Embedded { images } => Some(PartialEmbedding::new(images.clone())),
            SampleOutcome::DeadEnd { .. } => None,
        }
    }
}

/// Reproducible sampler: a seed fixes the whole stream of runs.
pub struct GreedySampler<'a> {
    tree: &'a RootedTree,
    graph: &'a Graph,
    /// Tail of every oriented edge; a uniform pick gives `φ_0 ∝ d(v)`.
    arc_tails: Vec<usize>,
    rng: ChaCha8Rng,
}

impl<'a> GreedySampler<'a> {
    pub fn new(tree: &'a RootedTree, graph: &'a Graph, seed: u64) -> Result<GreedySampler<'a>, DistError> {
        if graph.m() == 0 {
            return Err(DistError::EmptyGraph);
        }
        let arc_tails = (0..graph.n()).flat_map(|v| std::iter::repeat_n(v, graph.degree(v))).collect();
        Ok(GreedySampler { tree, graph, arc_tails, rng: ChaCha8Rng::seed_from_u64(seed) })
    }

    pub fn sample(&mut self) -> SampleOutcome {
        let mut images = Vec::with_capacity(self.tree.vertex_count());
        images.push(self.arc_tails[self.rng.gen_range(0..self.arc_tails.len())]);
        let mut options = Vec::new();
        for i in 1..self.tree.vertex_count() {
            let anchor = images[self.tree.ancestor(i)];
            options.clear();
            options.extend(self.graph.neighbors(anchor).iter().copied().filter(|w| !images.contains(w)));
            if options.is_empty() {
                return SampleOutcome::DeadEnd { level: i - 1, images };
            }
            images.push(options[self.rng.gen_range(0..options.len())]);
        }
        SampleOutcome::Embedded { images }
    }
}

/// One run of the greedy process.
pub fn sample_greedy(tree: &RootedTree, g: &Graph, seed: u64) -> Result<SampleOutcome, DistError> {
    Ok(GreedySampler::new(tree, g, seed)?.sample())
}
