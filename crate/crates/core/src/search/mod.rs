//! Exhaustive minimization of embedding counts over small graphs.

mod canon;

pub use canon::{canonical_code, canonical_form, enumerate_graphs, graph_from_code, MAX_ENUM_VERTICES};

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::counting::{count_forest, count_injective, falling_factorial};
use crate::exact::{from_biguint, from_usize, Rational};
use crate::graph::{make_clique_union, make_complete_bipartite, Graph, RootedTree};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SearchError {
    #[error("exhaustive search supports at most 8 vertices, got {0}")]
    OutOfRange(usize),
    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub n: usize,
    pub m: usize,
    pub pattern: String,
    pub classes: usize,
    #[serde(with = "crate::exact::biguint_str")]
    pub minimum: BigUint,
    /// Edge lists of every class attaining the minimum, in canonical labelling.
    pub minimizers: Vec<String>,
    pub minimizer_is_clique_union: bool,
    /// `n = k(d+1)` and `m = k·C(d+1, 2)` for some `k`.
    pub clique_union_admissible: bool,
    pub clique_union_attains_minimum: Option<bool>,
    /// `n (d)_t` for tree patterns.
    #[serde(serialize_with = "crate::exact::opt_rational_str::serialize")]
    pub bound: Option<Rational>,
    /// `minimum - n (d)_t`.
    #[serde(serialize_with = "crate::exact::opt_rational_str::serialize")]
    pub margin: Option<Rational>,
}

fn inline_edges(g: &Graph) -> String {
    g.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect::<Vec<_>>().join(" ")
}

impl SearchResult {
    /// One row per minimizer.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "n,m,pattern,classes,minimum,clique_union_admissible,clique_union_attains_minimum,margin,minimizer_edges\n",
        );
        let attains = self.clique_union_attains_minimum.map_or(String::new(), |b| b.to_string());
        let margin = self.margin.as_ref().map_or(String::new(), ToString::to_string);
        for edges in &self.minimizers {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                self.n, self.m, self.pattern, self.classes, self.minimum, self.clique_union_admissible, attains, margin, edges
            ));
        }
        out
    }
}

/// Clique size `d + 1` when `(n, m)` is realised by equal cliques.
pub fn clique_union_size(n: usize, m: usize) -> Option<usize> {
    if n == 0 || !(2 * m).is_multiple_of(n) {
        return None;
    }
    let s = 2 * m / n + 1;
    n.is_multiple_of(s).then_some(s)
}

/// Minimum of `count` over all isomorphism classes with `(n, m)`.
pub fn find_min_by(
    n: usize,
    m: usize,
    pattern: &str,
    tree_edges: Option<usize>,
    count: impl Fn(&Graph) -> BigUint,
) -> Result<SearchResult, SearchError> {
    let classes = enumerate_graphs(n, m)?;
    if classes.is_empty() {
        return Err(SearchError::Inadmissible(format!("no graph has {n} vertices and {m} edges")));
    }
    let counts: Vec<BigUint> = classes.iter().map(&count).collect();
    let minimum = counts.iter().min().cloned().expect("at least one class");
    let winners: Vec<&Graph> = classes.iter().zip(&counts).filter(|(_, c)| **c == minimum).map(|(g, _)| g).collect();
    let clique_size = clique_union_size(n, m);
    let clique_union_attains_minimum = clique_size.map(|s| count(&make_clique_union(n / s, s)) == minimum);
    let d = from_usize(2 * m) / from_usize(n);
    let bound = tree_edges.map(|t| from_usize(n) * falling_factorial(&d, t));
    let margin = bound.as_ref().map(|b| from_biguint(&minimum) - b);
    Ok(SearchResult {
        n,
        m,
        pattern: pattern.to_string(),
        classes: classes.len(),
        minimizer_is_clique_union: winners.iter().any(|g| g.is_equal_clique_union()),
        minimizers: winners.iter().map(|g| inline_edges(g)).collect(),
        minimum,
        clique_union_admissible: clique_size.is_some(),
        clique_union_attains_minimum,
        bound,
        margin,
    })
}

/// Minimum of `|Mon(T, G)|` over graphs with `n` vertices and `m` edges.
pub fn find_min_mon(n: usize, m: usize, tree: &RootedTree, pattern: &str) -> Result<SearchResult, SearchError> {
    if n == 0 {
        return Err(SearchError::Inadmissible("need at least one vertex".into()));
    }
    find_min_by(n, m, pattern, Some(tree.edge_count()), |g| count_injective(tree, g))
}

fn disjoint_edges(k: usize) -> Vec<RootedTree> {
    vec![RootedTree::path(1); k]
}

/// `|Mon(F, G)|` for `F` a matching of `k` edges.
pub fn count_matchings(k: usize, g: &Graph) -> BigUint {
    count_forest(&disjoint_edges(k), g)
}

/// Every vertex of the first `a` is adjacent to every other vertex; the rest
/// form an independent set.
pub fn make_split_graph(n: usize, a: usize) -> Graph {
    let edges = (0..a.min(n)).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::new(n, edges).expect("split graph is simple")
}

/// Edge count of the split graph with `a` dominating vertices.
pub fn split_edges(n: usize, a: usize) -> usize {
    a * a.saturating_sub(1) / 2 + a * (n - a)
}

/// Smallest `a` whose split graph has exactly `m` edges.
pub fn split_size_for(n: usize, m: usize) -> Option<usize> {
    (0..=n).find(|&a| split_edges(n, a) == m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SideCount {
    pub n: usize,
    pub m: usize,
    #[serde(with = "crate::exact::biguint_str")]
    pub count: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForestCheck {
    pub k: usize,
    pub n: usize,
    pub d: usize,
    pub clique_union: SideCount,
    /// `K_{d/2, n-d/2}`, present when `d` is even.
    pub bipartite: Option<SideCount>,
    /// Split graph with the clique union's edge count, when one exists.
    pub matched_split: Option<SideCount>,
    pub bipartite_smaller: Option<bool>,
    pub matched_split_smaller: Option<bool>,
}

/// Counts `k` disjoint edges in `n/(d+1)` copies of `K_{d+1}`, in
/// `K_{d/2, n-d/2}` and in the split graph with the same `(n, m)`.
pub fn forest_counterexample_check(k: usize, n: usize, d: usize) -> Result<ForestCheck, SearchError> {
    if d == 0 || !n.is_multiple_of(d + 1) {
        return Err(SearchError::Inadmissible(format!("need d >= 1 and (d+1) | n, got n={n} d={d}")));
    }
    let cliques = make_clique_union(n / (d + 1), d + 1);
    let clique_union = SideCount { n, m: cliques.m(), count: count_matchings(k, &cliques) };
    let bipartite = (d.is_multiple_of(2) && d / 2 < n).then(|| {
        let g = make_complete_bipartite(d / 2, n - d / 2);
        SideCount { n, m: g.m(), count: count_matchings(k, &g) }
    });
    let matched_split = split_size_for(n, cliques.m()).map(|a| {
        let g = make_split_graph(n, a);
        SideCount { n, m: g.m(), count: count_matchings(k, &g) }
    });
    Ok(ForestCheck {
        k,
        n,
        d,
        bipartite_smaller: bipartite.as_ref().map(|b| b.count < clique_union.count),
        matched_split_smaller: matched_split.as_ref().map(|s| s.count < clique_union.count),
        clique_union,
        bipartite,
        matched_split,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchedComparison {
    pub n: usize,
    pub m: usize,
    pub clique_size: usize,
    pub split_size: usize,
    #[serde(with = "crate::exact::biguint_str")]
    pub clique_union_count: BigUint,
    #[serde(with = "crate::exact::biguint_str")]
    pub split_count: BigUint,
}

/// All `(n, m)` with `n <= max_n` realised both by equal cliques (size at
/// least 2) and by a split graph, with the matching counts of each.
pub fn matched_forest_comparisons(k: usize, max_n: usize) -> Vec<MatchedComparison> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        for s in (2..=n).filter(|s| n % s == 0) {
            let m = n / s * s * (s - 1) / 2;
            let Some(a) = split_size_for(n, m) else { continue };
            let cliques = make_clique_union(n / s, s);
            if make_split_graph(n, a).edges() == cliques.edges() {
                continue;
            }
            out.push(MatchedComparison {
                n,
                m,
                clique_size: s,
                split_size: a,
                clique_union_count: count_matchings(k, &cliques),
                split_count: count_matchings(k, &make_split_graph(n, a)),
            });
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitCheck {
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub split_size: usize,
    #[serde(with = "crate::exact::biguint_str")]
    pub split_count: BigUint,
    #[serde(with = "crate::exact::biguint_str")]
    pub exhaustive_minimum: BigUint,
    pub split_is_minimizer: bool,
    pub minimizer_count: usize,
    pub classes: usize,
}

/// Compares the split graph with the exhaustive minimum of `k` disjoint
/// edges over all `(n, m)` graphs.
pub fn split_graph_min_check(k: usize, n: usize, m: usize) -> Result<SplitCheck, SearchError> {
    if n > MAX_ENUM_VERTICES {
        return Err(SearchError::OutOfRange(n));
    }
    let a = split_size_for(n, m).ok_or_else(|| SearchError::Inadmissible(format!("no split graph has n={n}, m={m}")))?;
    let split_count = count_matchings(k, &make_split_graph(n, a));
    let result = find_min_by(n, m, &format!("matching:k={k}"), None, |g| count_matchings(k, g))?;
    Ok(SplitCheck {
        k,
        n,
        m,
        split_size: a,
        split_is_minimizer: split_count == result.minimum,
        split_count,
        exhaustive_minimum: result.minimum,
        minimizer_count: result.minimizers.len(),
        classes: result.classes,
    })
}
