use std::collections::BTreeSet;

use super::tree::{RootedTree, TreeError};

/// Number of unlabeled trees on 1..=10 vertices.
pub const TREE_CATALOG_SIZES: [usize; 10] = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106];

/// AHU code of an unrooted tree given as an edge list on `0..vertex_count`,
/// rooted at its centroid (the smaller code when there are two centroids).
pub fn canonical_tree_code(vertex_count: usize, edges: &[(usize, usize)]) -> String {
    let mut adj = vec![Vec::new(); vertex_count];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    centroids(&adj)
        .into_iter()
        .map(|c| rooted_code(&adj, c, usize::MAX))
        .min()
        .unwrap_or_default()
}

fn centroids(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    if n == 0 {
        return Vec::new();
    }
    // iterative post-order for subtree sizes rooted at 0
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![0];
    let mut seen = vec![false; n];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        order.push(u);
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = u;
                stack.push(w);
            }
        }
    }
    let mut size = vec![1usize; n];
    for &u in order.iter().rev() {
        if parent[u] != usize::MAX {
            size[parent[u]] += size[u];
        }
    }
    let heaviest = |u: usize| {
        adj[u]
            .iter()
            .map(|&w| if w == parent[u] { n - size[u] } else { size[w] })
            .max()
            .unwrap_or(0)
    };
    let best = (0..n).map(heaviest).min().unwrap();
    (0..n).filter(|&u| heaviest(u) == best).collect()
}

fn rooted_code(adj: &[Vec<usize>], root: usize, from: usize) -> String {
    let mut kids: Vec<String> = adj[root].iter().filter(|&&w| w != from).map(|&w| rooted_code(adj, w, root)).collect();
    kids.sort();
    let mut out = String::with_capacity(2 + kids.iter().map(String::len).sum::<usize>());
    out.push('(');
    for k in kids {
        out.push_str(&k);
    }
    out.push(')');
    out
}

/// Decodes a parenthesis code into edges labelled in preorder.
fn decode(code: &str) -> (usize, Vec<(usize, usize)>) {
    let mut edges = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut next = 0;
    for ch in code.chars() {
        if ch == '(' {
            if let Some(&p) = stack.last() {
                edges.push((p, next));
            }
            stack.push(next);
            next += 1;
        } else {
            stack.pop();
        }
    }
    (next, edges)
}

/// One representative per isomorphism class of trees on `vertex_count`
/// vertices, ordered by canonical code.
pub fn enumerate_trees(vertex_count: usize) -> Result<Vec<RootedTree>, TreeError> {
    if !(1..=10).contains(&vertex_count) {
        return Err(TreeError::CatalogRange(vertex_count));
    }
    let mut layer: BTreeSet<String> = BTreeSet::from([String::from("()")]);
    for size in 1..vertex_count {
        let mut next = BTreeSet::new();
        for code in &layer {
            let (_, edges) = decode(code);
            for v in 0..size {
                let mut grown = edges.clone();
                grown.push((v, size));
                next.insert(canonical_tree_code(size + 1, &grown));
            }
        }
        layer = next;
    }
    Ok(layer
        .iter()
        .map(|code| {
            let (_, edges) = decode(code);
            RootedTree::from_edges(&edges).expect("decoded code is a tree")
        })
        .collect())
}
