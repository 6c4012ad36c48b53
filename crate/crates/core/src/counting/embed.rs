use num_bigint::BigUint;

use super::CountError;
use crate::graph::{Graph, RootedTree};

/// Backtracking over a concatenated vertex order. `parent[k] = None` marks a
/// component root, which may land on any unused vertex.
struct Injective<'a> {
    g: &'a Graph,
    parent: Vec<Option<usize>>,
    images: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
}

impl<'a> Injective<'a> {
    fn run(mut self) -> Result<BigUint, CountError> {
        if self.parent.is_empty() {
            return Ok(BigUint::from(1u32));
        }
        let total = self.extend(0)?;
        Ok(BigUint::from(total))
    }

    fn extend(&mut self, k: usize) -> Result<u128, CountError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(CountError::BudgetExceeded(self.budget));
        }
        let g: &'a Graph = self.g;
        // None: a component root, free to use any vertex
        let cands: Option<&'a [usize]> = self.parent[k].map(|p| g.neighbors(self.images[p]));
        let len = cands.map_or(g.n(), <[usize]>::len);
        let pick = |idx: usize| cands.map_or(idx, |c| c[idx]);
        if k + 1 == self.parent.len() {
            return Ok((0..len).filter(|&idx| !self.used[pick(idx)]).count() as u128);
        }
        let mut total = 0u128;
        for idx in 0..len {
            let w = pick(idx);
            if self.used[w] {
                continue;
            }
            self.used[w] = true;
            self.images[k] = w;
            total += self.extend(k + 1)?;
            self.used[w] = false;
        }
        Ok(total)
    }
}

fn counter<'a>(g: &'a Graph, parent: Vec<Option<usize>>, budget: u64) -> Injective<'a> {
    let len = parent.len();
    Injective { g, parent, images: vec![0; len], used: vec![false; g.n()], nodes: 0, budget }
}

fn tree_parents(tree: &RootedTree, offset: usize) -> impl Iterator<Item = Option<usize>> + '_ {
    (0..tree.vertex_count()).map(move |i| tree.parent(i).map(|p| p + offset))
}

/// `|Mon(T, G)|`: labelled copies of `T` in `G`, by exhaustive backtracking.
pub fn count_injective(tree: &RootedTree, g: &Graph) -> BigUint {
    count_injective_with_budget(tree, g, u64::MAX).expect("unbounded search cannot exceed its budget")
}

/// As [`count_injective`], failing once more than `max_nodes` search nodes
/// have been expanded.
pub fn count_injective_with_budget(tree: &RootedTree, g: &Graph, max_nodes: u64) -> Result<BigUint, CountError> {
    counter(g, tree_parents(tree, 0).collect(), max_nodes).run()
}

/// `|Mon(F, G)|` for the disjoint union `F` of the given trees; components
/// must land on disjoint vertex sets. The empty forest has one embedding.
pub fn count_forest(forest: &[RootedTree], g: &Graph) -> BigUint {
    count_forest_with_budget(forest, g, u64::MAX).expect("unbounded search cannot exceed its budget")
}

pub fn count_forest_with_budget(forest: &[RootedTree], g: &Graph, max_nodes: u64) -> Result<BigUint, CountError> {
    let mut parent = Vec::new();
    for tree in forest {
        let offset = parent.len();
        parent.extend(tree_parents(tree, offset));
    }
    counter(g, parent, max_nodes).run()
}
