//! Exact homomorphism, embedding and walk counts, plus the closed-form
//! bounds they are compared against.

mod bounds;
mod embed;

pub use bounds::{
    adversary_lower_bound, bipartite_bound, main_bound_check, AdversaryBound, BipartiteBound, CountReport,
    EqualityClass,
};
pub use embed::{count_forest, count_forest_with_budget, count_injective, count_injective_with_budget};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{from_usize, Rational};
use crate::graph::{Graph, RootedTree};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error("search exceeded the node budget of {0}")]
    BudgetExceeded(u64),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("bipartition has an empty side")]
    EmptyPart,
}

/// `x (x - 1) ... (x - t + 1)`; the empty product is 1.
pub fn falling_factorial(x: &Rational, t: usize) -> Rational {
    let mut acc = Rational::one();
    for j in 0..t {
        acc *= x - from_usize(j);
    }
    acc
}

/// `|Hom(T, G)|` by leaf elimination over the reverse BFS order.
pub fn count_hom_tree(tree: &RootedTree, g: &Graph) -> BigUint {
    let n = g.n();
    let size = tree.vertex_count();
    let mut table: Vec<Vec<BigUint>> = vec![Vec::new(); size];
    for i in (0..size).rev() {
        let mut row = vec![BigUint::one(); n];
        for &c in tree.children(i) {
            let child = &table[c];
            for (v, slot) in row.iter_mut().enumerate() {
                let mut sum = BigUint::zero();
                for &w in g.neighbors(v) {
                    sum += &child[w];
                }
                *slot *= sum;
            }
        }
        for &c in tree.children(i) {
            table[c] = Vec::new();
        }
        table[i] = row;
    }
    table[0].iter().sum()
}

/// Number of walks with `t` edges; `n` for `t = 0`.
pub fn count_walks(g: &Graph, t: usize) -> BigUint {
    let mut ends = vec![BigUint::one(); g.n()];
    for _ in 0..t {
        ends = (0..g.n()).map(|v| g.neighbors(v).iter().map(|&w| &ends[w]).sum()).collect();
    }
    ends.into_iter().sum()
}

/// Number of non-backtracking walks with `t` edges: consecutive edges must
/// differ. Dynamic program over oriented edges.
pub fn count_nb_walks(g: &Graph, t: usize) -> BigUint {
    if t == 0 {
        return BigUint::from(g.n());
    }
    // oriented edge k = (tail, head); offsets index the out-arcs of each vertex
    let mut offset = vec![0usize; g.n() + 1];
    for v in 0..g.n() {
        offset[v + 1] = offset[v] + g.degree(v);
    }
    let arc = |u: usize, v: usize| offset[u] + g.neighbors(u).binary_search(&v).expect("edge exists");
    let arcs: Vec<(usize, usize)> = (0..g.n()).flat_map(|u| g.neighbors(u).iter().map(move |&v| (u, v))).collect();
    let mut count = vec![BigUint::one(); arcs.len()];
    for _ in 1..t {
        let mut next = vec![BigUint::zero(); arcs.len()];
        for (k, &(u, v)) in arcs.iter().enumerate() {
            if count[k].is_zero() {
                continue;
            }
            for &w in g.neighbors(v) {
                if w != u {
                    next[arc(v, w)] += &count[k];
                }
            }
        }
        count = next;
    }
    count.into_iter().sum()
}
