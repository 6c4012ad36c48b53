use std::collections::BTreeSet;

use super::SearchError;
use crate::graph::Graph;

/// Largest vertex count for exhaustive enumeration.
pub const MAX_ENUM_VERTICES: usize = 8;

fn slot(a: usize, j: usize) -> usize {
    j * (j - 1) / 2 + a
}

/// Upper triangle read column by column, first slot as the most
/// significant bit. Fits in a `u32` for `n <= 8`.
fn code_of(n: usize, adj: &[u8]) -> u32 {
    let bits = n * (n - 1) / 2;
    let mut code = 0u32;
    for j in 1..n {
        for a in 0..j {
            if adj[a * n + j] != 0 {
                code |= 1 << (bits - 1 - slot(a, j));
            }
        }
    }
    code
}

struct Canon<'a> {
    n: usize,
    bits: usize,
    adj: &'a [u8],
    perm: Vec<usize>,
    used: Vec<bool>,
    best: u32,
}

impl Canon<'_> {
    fn go(&mut self, j: usize, prefix: u32) {
        if j == self.n {
            self.best = self.best.min(prefix);
            return;
        }
        let filled = j * (j + 1) / 2;
        for w in 0..self.n {
            if self.used[w] {
                continue;
            }
            let mut column = 0u32;
            for a in 0..j {
                column = (column << 1) | u32::from(self.adj[self.perm[a] * self.n + w]);
            }
            let next = (prefix << j) | column;
            // the bound tightens as leaves are reached, so re-read it
            if next > self.best >> (self.bits - filled) {
                continue;
            }
            self.used[w] = true;
            self.perm[j] = w;
            self.go(j + 1, next);
            self.used[w] = false;
        }
    }
}

/// The lexicographically smallest upper-triangle string over all vertex
/// orders, found by branch and bound on prefixes.
pub fn canonical_code(g: &Graph) -> u32 {
    let n = g.n();
    assert!(n <= MAX_ENUM_VERTICES, "canonical codes need n <= {MAX_ENUM_VERTICES}");
    if n < 2 {
        return 0;
    }
    let mut adj = vec![0u8; n * n];
    for &(u, v) in g.edges() {
        adj[u * n + v] = 1;
        adj[v * n + u] = 1;
    }
    let bits = n * (n - 1) / 2;
    let mut c = Canon { n, bits, adj: &adj, perm: vec![0; n], used: vec![false; n], best: code_of(n, &adj) };
    c.go(0, 0);
    c.best
}

/// Rebuilds the graph whose vertex order realises `code`.
pub fn graph_from_code(n: usize, code: u32) -> Graph {
    let bits = n * (n - 1) / 2;
    let edges = (1..n).flat_map(|j| (0..j).map(move |a| (a, j))).filter(|&(a, j)| code >> (bits - 1 - slot(a, j)) & 1 == 1);
    Graph::new(n, edges).expect("decoded edges are simple")
}

pub fn canonical_form(g: &Graph) -> Graph {
    graph_from_code(g.n(), canonical_code(g))
}

fn complement(g: &Graph) -> Graph {
    let n = g.n();
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| !g.has_edge(u, v)).collect();
    Graph::new(n, edges).expect("complement is simple")
}

fn classes_by_augmentation(n: usize, m: usize) -> BTreeSet<u32> {
    let mut level: BTreeSet<u32> = BTreeSet::from([0]);
    for _ in 0..m {
        let mut next = BTreeSet::new();
        for &code in &level {
            let g = graph_from_code(n, code);
            for u in 0..n {
                for v in u + 1..n {
                    if g.has_edge(u, v) {
                        continue;
                    }
                    let mut edges = g.edges().to_vec();
                    edges.push((u, v));
                    next.insert(canonical_code(&Graph::new(n, edges).expect("new edge is absent")));
                }
            }
        }
        level = next;
    }
    level
}

/// One graph per isomorphism class with `n` vertices and `m` edges, ordered
/// by canonical code. Classes with `m` edges are grown from classes with
/// `m - 1` edges; dense cases go through complements.
pub fn enumerate_graphs(n: usize, m: usize) -> Result<Vec<Graph>, SearchError> {
    if n > MAX_ENUM_VERTICES {
        return Err(SearchError::OutOfRange(n));
    }
    let pairs = n * n.saturating_sub(1) / 2;
    if m > pairs {
        return Ok(Vec::new());
    }
    if n < 2 {
        return Ok(vec![Graph::empty(n)]);
    }
    if 2 * m > pairs {
        let mut out: Vec<Graph> = enumerate_graphs(n, pairs - m)?.iter().map(|g| canonical_form(&complement(g))).collect();
        out.sort_by_key(canonical_code);
        return Ok(out);
    }
    Ok(classes_by_augmentation(n, m).into_iter().map(|code| graph_from_code(n, code)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Isomorphism by trying every permutation.
    fn isomorphic(a: &Graph, b: &Graph) -> bool {
        fn go(k: usize, perm: &mut Vec<usize>, used: &mut Vec<bool>, a: &Graph, b: &Graph) -> bool {
            let n = a.n();
            if k == n {
                return a.edges().iter().all(|&(u, v)| b.has_edge(perm[u], perm[v]));
            }
            for w in 0..n {
                if !used[w] {
                    used[w] = true;
                    perm.push(w);
                    if go(k + 1, perm, used, a, b) {
                        return true;
                    }
                    perm.pop();
                    used[w] = false;
                }
            }
            false
        }
        a.n() == b.n() && a.m() == b.m() && go(0, &mut Vec::new(), &mut vec![false; a.n()], a, b)
    }

    #[test]
    fn small_cases() {
        assert_eq!(enumerate_graphs(4, 3).unwrap().len(), 3);
        assert_eq!(enumerate_graphs(3, 3).unwrap().len(), 1);
        let k4 = enumerate_graphs(4, 6).unwrap();
        assert_eq!(k4.len(), 1);
        assert_eq!(k4[0].m(), 6);
        assert!(enumerate_graphs(9, 1).is_err());
        assert!(enumerate_graphs(4, 7).unwrap().is_empty());
    }

    #[test]
    fn class_counts_match_tables() {
        let table: [(usize, &[usize]); 4] = [
            (4, &[1, 1, 2, 3, 2, 1, 1]),
            (5, &[1, 1, 2, 4, 6, 6, 6, 4, 2, 1, 1]),
            (6, &[1, 1, 2, 5, 9, 15, 21, 24, 24, 21, 15, 9, 5, 2, 1, 1]),
            (7, &[1, 1, 2, 5, 10, 21, 41, 65, 97, 131, 148, 148, 131, 97, 65, 41, 21, 10, 5, 2, 1, 1]),
        ];
        for (n, counts) in table {
            for (m, &expected) in counts.iter().enumerate() {
                assert_eq!(enumerate_graphs(n, m).unwrap().len(), expected, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn brute_force_dedup_agrees_for_five_vertices() {
        let pairs: Vec<(usize, usize)> = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
        for m in 0..=10 {
            let mut reps: Vec<Graph> = Vec::new();
            for mask in 0u32..1 << 10 {
                if mask.count_ones() as usize != m {
                    continue;
                }
                let g = Graph::new(5, pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e)).unwrap();
                if !reps.iter().any(|r| isomorphic(r, &g)) {
                    reps.push(g);
                }
            }
            let classes = enumerate_graphs(5, m).unwrap();
            assert_eq!(classes.len(), reps.len());
            for g in &classes {
                assert_eq!(reps.iter().filter(|r| isomorphic(r, g)).count(), 1);
            }
        }
    }

    #[test]
    fn canonical_code_is_label_invariant() {
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5)]).unwrap();
        let relabel = [3, 5, 0, 1, 4, 2];
        let h = Graph::new(6, g.edges().iter().map(|&(u, v)| (relabel[u], relabel[v]))).unwrap();
        assert_eq!(canonical_code(&g), canonical_code(&h));
        assert!(isomorphic(&canonical_form(&g), &g));
    }
}
