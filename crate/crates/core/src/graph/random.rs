//! Seeded random generators for test corpora and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{Graph, RootedTree};

/// Erdős–Rényi `G(n, p)`.
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("G(n,p) is simple")
}

/// Uniform graph with exactly `m` edges on `n` vertices.
pub fn gnm<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Graph {
    let mut all: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    assert!(m <= all.len(), "too many edges");
    all.shuffle(rng);
    all.truncate(m);
    Graph::new(n, all).expect("G(n,m) is simple")
}

/// `d`-regular graph via the pairing model with restarts; `None` if `n d` is
/// odd, `d >= n`, or 1000 attempts all produce loops or multi-edges.
pub fn random_regular<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Option<Graph> {
    if (n * d) % 2 == 1 || (d >= n && n > 0) {
        return None;
    }
    'attempt: for _ in 0..1000 {
        let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        stubs.shuffle(rng);
        let mut seen = vec![false; n * n];
        let mut edges = Vec::with_capacity(n * d / 2);
        for pair in stubs.chunks(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || seen[u * n + v] {
                continue 'attempt;
            }
            seen[u * n + v] = true;
            seen[v * n + u] = true;
            edges.push((u, v));
        }
        return Some(Graph::new(n, edges).expect("checked simple"));
    }
    None
}

/// Uniform labelled tree on `vertices` vertices (Prüfer decoding).
pub fn random_tree<R: Rng + ?Sized>(vertices: usize, rng: &mut R) -> RootedTree {
    match vertices {
        0 | 1 => return RootedTree::single_vertex(),
        2 => return RootedTree::path(1),
        _ => {}
    }
    let seq: Vec<usize> = (0..vertices - 2).map(|_| rng.gen_range(0..vertices)).collect();
    RootedTree::from_edges(&prufer_edges(vertices, &seq)).expect("Prüfer sequence decodes to a tree")
}

/// Edges of the labelled tree with Prüfer sequence `seq` on `0..vertices`.
pub fn prufer_edges(vertices: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; vertices];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(vertices - 1);
    for &x in seq {
        let leaf = (0..vertices).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..vertices).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}
