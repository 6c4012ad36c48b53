use std::collections::BTreeMap;
use std::str::FromStr;

use serde::Serialize;

use super::{Graph, GraphError};

/// The benchmark graph families, as accepted on the command line
/// (`clique_union:k=3,s=4`, `complete_bipartite:a=2,b=3`, `cycle:n=5`,
/// `path:n=4`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GraphFamilySpec {
    CliqueUnion { k: usize, s: usize },
    CompleteBipartite { a: usize, b: usize },
    Cycle { n: usize },
    Path { n: usize },
    Explicit,
}

impl GraphFamilySpec {
    /// Builds the graph. `Explicit` has no generator and yields `None`.
    pub fn build(&self) -> Option<Graph> {
        Some(match *self {
            GraphFamilySpec::CliqueUnion { k, s } => make_clique_union(k, s),
            GraphFamilySpec::CompleteBipartite { a, b } => make_complete_bipartite(a, b),
            GraphFamilySpec::Cycle { n } => make_cycle(n),
            GraphFamilySpec::Path { n } => make_path(n),
            GraphFamilySpec::Explicit => return None,
        })
    }
}

impl FromStr for GraphFamilySpec {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GraphError::BadFamily(s.to_string());
        let (tag, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut params = BTreeMap::new();
        for kv in rest.split(',').filter(|kv| !kv.trim().is_empty()) {
            let (k, v) = kv.split_once('=').ok_or_else(bad)?;
            let v: usize = v.trim().parse().map_err(|_| bad())?;
            if v == 0 {
                return Err(bad());
            }
            params.insert(k.trim().to_string(), v);
        }
        let mut take = |key: &str| params.remove(key).ok_or_else(bad);
        let spec = match tag.trim() {
            "clique_union" => GraphFamilySpec::CliqueUnion { k: take("k")?, s: take("s")? },
            "complete_bipartite" => GraphFamilySpec::CompleteBipartite { a: take("a")?, b: take("b")? },
            "cycle" => GraphFamilySpec::Cycle { n: take("n")? },
            "path" => GraphFamilySpec::Path { n: take("n")? },
            "explicit" => GraphFamilySpec::Explicit,
            _ => return Err(bad()),
        };
        if !params.is_empty() {
            return Err(bad());
        }
        if let GraphFamilySpec::Cycle { n } = spec {
            if n < 3 {
                return Err(bad());
            }
        }
        Ok(spec)
    }
}

/// `k` disjoint copies of the complete graph on `s` vertices.
pub fn make_clique_union(k: usize, s: usize) -> Graph {
    let mut edges = Vec::with_capacity(k * s * s.saturating_sub(1) / 2);
    for c in 0..k {
        let base = c * s;
        for u in 0..s {
            for v in u + 1..s {
                edges.push((base + u, base + v));
            }
        }
    }
    Graph::new(k * s, edges).expect("clique union is simple")
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`; the partition is recorded.
pub fn make_complete_bipartite(a: usize, b: usize) -> Graph {
    let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
    Graph::new(a + b, edges)
        .expect("complete bipartite graph is simple")
        .with_parts((0..a).collect(), (a..a + b).collect())
}

/// Cycle on `n >= 3` vertices.
pub fn make_cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
}

/// Path on `n` vertices (`n - 1` edges).
pub fn make_path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
}
