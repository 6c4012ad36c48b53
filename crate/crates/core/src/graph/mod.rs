//! Simple undirected graphs, rooted trees and the generators used across the
//! crate.

mod family;
mod prune;
pub mod random;
mod tree;
mod tree_enum;

pub use family::{make_clique_union, make_complete_bipartite, make_cycle, make_path, GraphFamilySpec};
pub use prune::{min_degree_prune, PruneResult, PruneStep};
pub use tree::{RootedTree, TreeError};
pub use tree_enum::{canonical_tree_code, enumerate_trees, TREE_CATALOG_SIZES};

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::exact::{from_usize, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: loop edge {vertex}-{vertex}")]
    Loop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: malformed line {text:?}")]
    Malformed { line: usize, text: String },
    #[error("vertex {vertex} out of range for n={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid family spec {0:?}")]
    BadFamily(String),
}

/// A simple undirected graph on vertices `0..n`.
///
/// Neighbour lists are sorted; a dense adjacency matrix backs `has_edge`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    matrix: Vec<bool>,
    edges: Vec<(usize, usize)>,
    parts: Option<(Vec<usize>, Vec<usize>)>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicates and out-of-range ids.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph, GraphError> {
        let mut g = Graph {
            n,
            adj: vec![Vec::new(); n],
            matrix: vec![false; n * n],
            edges: Vec::new(),
            parts: None,
        };
        for (k, (u, v)) in edges.into_iter().enumerate() {
            g.insert(u, v, k + 1)?;
        }
        g.finish();
        Ok(g)
    }

    pub fn empty(n: usize) -> Graph {
        Graph::new(n, []).expect("edgeless graph")
    }

    fn insert(&mut self, u: usize, v: usize, line: usize) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::Loop { line, vertex: u });
        }
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if self.matrix[u * self.n + v] {
            return Err(GraphError::DuplicateEdge { line, u, v });
        }
        self.matrix[u * self.n + v] = true;
        self.matrix[v * self.n + u] = true;
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.edges.push((u.min(v), u.max(v)));
        Ok(())
    }

    fn finish(&mut self) {
        for list in &mut self.adj {
            list.sort_unstable();
        }
        self.edges.sort_unstable();
    }

    /// Records an explicit bipartition, e.g. from a complete bipartite generator.
    pub(crate) fn with_parts(mut self, a: Vec<usize>, b: Vec<usize>) -> Graph {
        self.parts = Some((a, b));
        self
    }

    /// Parses the edge-list text format: one `u v` pair per line, `#` comments,
    /// blank lines ignored, optional `n=N` header.
    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let mut header_n: Option<(usize, usize)> = None;
        let mut pairs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            if let Some(rest) = body.strip_prefix("n=") {
                let bad = || GraphError::Malformed { line, text: raw.to_string() };
                if header_n.is_some() || !pairs.is_empty() {
                    return Err(bad());
                }
                header_n = Some((rest.trim().parse().map_err(|_| bad())?, line));
                continue;
            }
            let mut fields = body.split_whitespace();
            let parsed = match (fields.next(), fields.next(), fields.next()) {
                (Some(a), Some(b), None) => a.parse::<usize>().ok().zip(b.parse::<usize>().ok()),
                _ => None,
            };
            match parsed {
                Some((u, v)) => pairs.push((line, u, v)),
                None => return Err(GraphError::Malformed { line, text: raw.to_string() }),
            }
        }
        let implied = pairs.iter().map(|&(_, u, v)| u.max(v) + 1).max().unwrap_or(0);
        let n = match header_n {
            Some((n, line)) if n < implied => {
                return Err(GraphError::Malformed { line, text: format!("n={n} but vertex {} used", implied - 1) })
            }
            Some((n, _)) => n,
            None => implied,
        };
        let mut g = Graph {
            n,
            adj: vec![Vec::new(); n],
            matrix: vec![false; n * n],
            edges: Vec::new(),
            parts: None,
        };
        for (line, u, v) in pairs {
            g.insert(u, v, line)?;
        }
        g.finish();
        Ok(g)
    }

    /// Renders the edge-list format accepted by [`Graph::parse`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.matrix[u * self.n + v]
    }

    /// `2m/n` as an exact rational; zero for the empty graph.
    pub fn average_degree(&self) -> Rational {
        if self.n == 0 {
            return from_usize(0);
        }
        Rational::new((2 * self.m()).into(), self.n.into())
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        self.min_degree() == self.max_degree()
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// True iff every component is complete and all components have the
    /// same order.
    pub fn is_equal_clique_union(&self) -> bool {
        let comps = self.components();
        let Some(size) = comps.first().map(Vec::len) else {
            return true;
        };
        comps.iter().all(|c| {
            c.len() == size && c.iter().all(|&v| self.degree(v) == size - 1)
        })
    }

    /// The 2-colouring of the graph, if it is bipartite. A recorded
    /// partition wins; otherwise each component's smallest vertex goes to
    /// the first side.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        if let Some(parts) = &self.parts {
            return Some(parts.clone());
        }
        let mut colour = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if colour[w] == u8::MAX {
                        colour[w] = 1 - colour[u];
                        queue.push_back(w);
                    } else if colour[w] == colour[u] {
                        return None;
                    }
                }
            }
        }
        let a = (0..self.n).filter(|&v| colour[v] == 0).collect();
        let b = (0..self.n).filter(|&v| colour[v] == 1).collect();
        Some((a, b))
    }

    /// Induced subgraph on `keep` (sorted), relabelled to `0..keep.len()`.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        Graph::new(keep.len(), edges).expect("induced subgraph of a simple graph is simple")
    }

    /// Summary used in JSON reports.
    pub fn summary(&self) -> GraphSummary {
        GraphSummary {
            n: self.n,
            m: self.m(),
            average_degree: self.average_degree(),
            min_degree: self.min_degree(),
            max_degree: self.max_degree(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphSummary {
    pub n: usize,
    pub m: usize,
    #[serde(with = "crate::exact::rational_str")]
    pub average_degree: Rational,
    pub min_degree: usize,
    pub max_degree: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn parses_path_on_three_vertices() {
        let g = Graph::parse("0 1\n1 2").unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));
        assert_eq!(g.average_degree(), ratio(4, 3));
    }

    #[test]
    fn rejects_duplicate_edge() {
        assert_eq!(
            Graph::parse("0 1\n0 1"),
            Err(GraphError::DuplicateEdge { line: 2, u: 0, v: 1 })
        );
        assert!(matches!(Graph::parse("0 1\n1 0"), Err(GraphError::DuplicateEdge { line: 2, .. })));
    }

    #[test]
    fn rejects_loop() {
        assert_eq!(Graph::parse("0 0"), Err(GraphError::Loop { line: 1, vertex: 0 }));
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let err = Graph::parse("# header\n0 1\n\n1 x\n").unwrap_err();
        assert!(matches!(err, GraphError::Malformed { line: 4, .. }));
        assert!(matches!(Graph::parse("0 1 2"), Err(GraphError::Malformed { line: 1, .. })));
        assert!(matches!(Graph::parse("-1 2"), Err(GraphError::Malformed { line: 1, .. })));
    }

    #[test]
    fn header_overrides_vertex_count() {
        let g = Graph::parse("n=5\n# comment\n0 1  # trailing\n").unwrap();
        assert_eq!((g.n(), g.m()), (5, 1));
        assert_eq!(g.min_degree(), 0);
        assert!(Graph::parse("n=1\n0 1").is_err());
    }

    #[test]
    fn edge_list_round_trips() {
        let g = Graph::parse("n=6\n0 1\n2 3\n1 2\n").unwrap();
        assert_eq!(Graph::parse(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn bipartition_detects_odd_cycle() {
        assert!(make_cycle(5).bipartition().is_none());
        let (a, b) = make_cycle(6).bipartition().unwrap();
        assert_eq!((a.len(), b.len()), (3, 3));
    }

    #[test]
    fn clique_union_detection() {
        assert!(make_clique_union(3, 4).is_equal_clique_union());
        assert!(!make_cycle(5).is_equal_clique_union());
        let mixed = Graph::new(5, [(0, 1), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert!(!mixed.is_equal_clique_union());
    }
}
