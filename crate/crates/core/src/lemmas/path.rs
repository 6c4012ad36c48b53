use serde::Serialize;

use super::LemmaError;
use crate::graph::Graph;

/// A simple path `(p_0, ..., p_k)` in a graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PathInG {
    vertices: Vec<usize>,
}

impl PathInG {
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<PathInG, LemmaError> {
        if vertices.is_empty() {
            return Err(LemmaError::NotAPath("no vertices".into()));
        }
        if let Some(&v) = vertices.iter().find(|&&v| v >= g.n()) {
            return Err(LemmaError::NotAPath(format!("vertex {v} out of range")));
        }
        let mut seen = vec![false; g.n()];
        for &v in &vertices {
            if std::mem::replace(&mut seen[v], true) {
                return Err(LemmaError::NotAPath(format!("vertex {v} repeated")));
            }
        }
        if let Some(w) = vertices.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
            return Err(LemmaError::NotAPath(format!("{} and {} are not adjacent", w[0], w[1])));
        }
        Ok(PathInG { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Number of edges `k`.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        self.vertices[self.len()]
    }

    pub fn reverse(&self) -> PathInG {
        PathInG { vertices: self.vertices.iter().rev().copied().collect() }
    }

    /// First missing edge `{p_0, p_j}` or `{p_k, p_j}` with `0 < j < k`.
    pub fn missing_edge(&self, g: &Graph) -> Option<(usize, usize)> {
        let k = self.len();
        let (a, b) = (self.start(), self.end());
        self.vertices[1..k.max(1)].iter().find_map(|&w| {
            if !g.has_edge(a, w) {
                Some((a, w))
            } else if !g.has_edge(b, w) {
                Some((b, w))
            } else {
                None
            }
        })
    }

    pub fn is_complete(&self, g: &Graph) -> bool {
        self.missing_edge(g).is_none()
    }

    /// `(p_k, p_1, ..., p_{k-1}, p_0)`, defined for complete paths.
    pub fn twist(&self, g: &Graph) -> Result<PathInG, LemmaError> {
        if let Some(edge) = self.missing_edge(g) {
            return Err(LemmaError::NotComplete(edge));
        }
        let mut vertices = self.vertices.clone();
        let k = self.len();
        vertices.swap(0, k);
        PathInG::new(g, vertices)
    }
}
