use num_bigint::BigInt;
use num_traits::Zero;

use super::DistError;
use crate::exact::{from_usize, Rational};
use crate::graph::{Graph, RootedTree};

/// Default cap on the total number of partial embeddings stored.
pub const DEFAULT_MAX_ENTRIES: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelEntry {
    pub images: Vec<usize>,
    pub prob: Rational,
}

/// The exact law of the greedy process, level by level.
///
/// `levels[i]` lists every `γ ∈ Mon(T^i, G)` reachable with positive
/// probability, in lexicographic order of images. `dead_end[i]` is the mass
/// of level-`i` states with no legal next step.
#[derive(Debug, Clone)]
pub struct ExactDistribution {
    tree: RootedTree,
    graph: Graph,
    levels: Vec<Vec<LevelEntry>>,
    dead_end: Vec<Rational>,
}

/// Builds the law by forward recursion `P(γ·w) = P(γ) / |N_+|`.
pub fn exact_distribution(tree: &RootedTree, g: &Graph, max_entries: usize) -> Result<ExactDistribution, DistError> {
    if g.m() == 0 {
        return Err(DistError::EmptyGraph);
    }
    let two_m = BigInt::from(2 * g.m());
    let first: Vec<LevelEntry> = (0..g.n())
        .filter(|&v| g.degree(v) > 0)
        .map(|v| LevelEntry { images: vec![v], prob: Rational::new(BigInt::from(g.degree(v)), two_m.clone()) })
        .collect();
    let mut stored = first.len();
    let mut levels = vec![first];
    let mut dead_end = Vec::with_capacity(tree.vertex_count());
    for i in 0..tree.edge_count() {
        let parent = tree.ancestor(i + 1);
        let mut next = Vec::new();
        let mut lost = Rational::zero();
        for entry in &levels[i] {
            let anchor = entry.images[parent];
            let options: Vec<usize> =
                g.neighbors(anchor).iter().copied().filter(|w| !entry.images.contains(w)).collect();
            if options.is_empty() {
                lost += &entry.prob;
                continue;
            }
            let share = &entry.prob / from_usize(options.len());
            for w in options {
                let mut images = entry.images.clone();
                images.push(w);
                next.push(LevelEntry { images, prob: share.clone() });
            }
        }
        stored += next.len();
        if stored > max_entries {
            return Err(DistError::BudgetExceeded { cap: max_entries });
        }
        dead_end.push(lost);
        levels.push(next);
    }
    dead_end.push(Rational::zero());
    Ok(ExactDistribution { tree: tree.clone(), graph: g.clone(), levels, dead_end })
}

impl ExactDistribution {
    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Number of tree edges `t`.
    pub fn t(&self) -> usize {
        self.tree.edge_count()
    }

    pub fn level(&self, i: usize) -> &[LevelEntry] {
        &self.levels[i]
    }

    /// Mass of level `i` (reached without a dead end).
    pub fn level_mass(&self, i: usize) -> Rational {
        self.levels[i].iter().map(|e| &e.prob).sum()
    }

    /// Mass of runs that stall at level `i`.
    pub fn dead_end_at(&self, i: usize) -> &Rational {
        &self.dead_end[i]
    }

    /// Mass lost before reaching level `i`.
    pub fn dead_end_before(&self, i: usize) -> Rational {
        self.dead_end[..i].iter().sum()
    }

    /// Total mass of runs that never complete the embedding.
    pub fn failure_mass(&self) -> Rational {
        self.dead_end_before(self.t())
    }

    pub fn support_size(&self) -> usize {
        self.levels[self.t()].len()
    }

    /// `P(φ^i = γ)` with `i = images.len() - 1`; zero when unreachable.
    pub fn probability(&self, images: &[usize]) -> Rational {
        let i = images.len().wrapping_sub(1);
        if i > self.t() {
            return Rational::zero();
        }
        match self.levels[i].binary_search_by(|e| e.images.as_slice().cmp(images)) {
            Ok(k) => self.levels[i][k].prob.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// `|N_+|` for extending the level-`i` state `images` (`i < t`).
    pub fn next_options(&self, images: &[usize]) -> usize {
        let i = images.len() - 1;
        let anchor = images[self.tree.ancestor(i + 1)];
        self.graph.neighbors(anchor).iter().filter(|w| !images.contains(w)).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};
    use crate::graph::{make_clique_union, make_complete_bipartite, make_path};
    use num_traits::One;

    #[test]
    fn edge_in_k2() {
        let d = exact_distribution(&RootedTree::path(1), &make_clique_union(1, 2), 100).unwrap();
        assert_eq!(d.support_size(), 2);
        assert!(d.level(1).iter().all(|e| e.prob == ratio(1, 2)));
        assert_eq!(d.failure_mass(), int(0));
    }

    #[test]
    fn p2_in_k4_is_uniform() {
        let d = exact_distribution(&RootedTree::path(2), &make_clique_union(1, 4), 1000).unwrap();
        assert_eq!(d.support_size(), 24);
        assert!(d.level(2).iter().all(|e| e.prob == ratio(1, 24)));
        assert_eq!(d.level_mass(2), Rational::one());
    }

    #[test]
    fn clique_unions_never_stall() {
        for tree in crate::graph::enumerate_trees(5).unwrap() {
            let d = exact_distribution(&tree, &make_clique_union(2, 5), 100_000).unwrap();
            assert!(d.failure_mass().is_zero());
        }
    }

    #[test]
    fn mass_is_conserved_with_dead_ends() {
        // star with 3 leaves cannot fit in a path graph
        let d = exact_distribution(&RootedTree::star(3), &make_path(4), 1000).unwrap();
        assert_eq!(d.support_size(), 0);
        assert_eq!(d.failure_mass(), Rational::one());
        let star = make_complete_bipartite(1, 3);
        let d = exact_distribution(&RootedTree::path(3), &star, 1000).unwrap();
        for i in 0..=3 {
            assert_eq!(d.level_mass(i) + d.dead_end_before(i), Rational::one());
        }
    }

    #[test]
    fn budget_and_empty_graph() {
        let g = make_clique_union(1, 6);
        assert_eq!(
            exact_distribution(&RootedTree::path(4), &g, 50).unwrap_err(),
            DistError::BudgetExceeded { cap: 50 }
        );
        assert_eq!(
            exact_distribution(&RootedTree::path(1), &Graph::empty(3), 50).unwrap_err(),
            DistError::EmptyGraph
        );
    }

    #[test]
    fn probability_lookup() {
        let d = exact_distribution(&RootedTree::path(2), &make_clique_union(1, 4), 1000).unwrap();
        assert_eq!(d.probability(&[0]), ratio(1, 4));
        assert_eq!(d.probability(&[0, 1]), ratio(1, 12));
        assert_eq!(d.probability(&[0, 0]), int(0));
        assert_eq!(d.next_options(&[0, 1]), 2);
    }
}
