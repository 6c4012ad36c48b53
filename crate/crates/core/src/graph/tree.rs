use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("tree with {edges} edges must use labels 0..={edges}, found {label}")]
    LabelOutOfRange { label: usize, edges: usize },
    #[error("loop or repeated edge {0}-{1}")]
    NotSimple(usize, usize),
    #[error("edges do not form a tree (disconnected or cyclic)")]
    NotATree,
    #[error("tree vertex count {0} outside 1..=10")]
    CatalogRange(usize),
}

/// A tree with a breadth-first ordering `x_0, ..., x_t` starting at a leaf.
///
/// Vertex `x_i` is referred to by its index `i`; `label(i)` maps back to the
/// label used in the input edge list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootedTree {
    order: Vec<usize>,
    #[serde(skip)]
    position: Vec<usize>,
    parent: Vec<Option<usize>>,
    #[serde(skip)]
    children: Vec<Vec<usize>>,
    #[serde(skip)]
    depth: Vec<usize>,
    diameter: usize,
    parts: (usize, usize),
}

impl RootedTree {
    /// Builds the ordering from an edge list on labels `0..=t`. `x_0` is the
    /// lowest-labelled leaf and BFS visits neighbours in label order.
    pub fn from_edges(edges: &[(usize, usize)]) -> Result<RootedTree, TreeError> {
        let t = edges.len();
        let mut adj = vec![Vec::new(); t + 1];
        for &(u, v) in edges {
            for x in [u, v] {
                if x > t {
                    return Err(TreeError::LabelOutOfRange { label: x, edges: t });
                }
            }
            if u == v || adj[u].contains(&v) {
                return Err(TreeError::NotSimple(u, v));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let root = if t == 0 { 0 } else { (0..=t).find(|&v| adj[v].len() == 1).ok_or(TreeError::NotATree)? };

        let mut position = vec![usize::MAX; t + 1];
        let mut order = Vec::with_capacity(t + 1);
        let mut parent = Vec::with_capacity(t + 1);
        let mut queue = VecDeque::from([(root, None)]);
        position[root] = 0;
        while let Some((label, par)) = queue.pop_front() {
            order.push(label);
            parent.push(par);
            let me = order.len() - 1;
            for &w in &adj[label] {
                if position[w] == usize::MAX {
                    position[w] = usize::MAX - 1;
                    queue.push_back((w, Some(me)));
                }
            }
        }
        if order.len() != t + 1 {
            return Err(TreeError::NotATree);
        }
        for (i, &label) in order.iter().enumerate() {
            position[label] = i;
        }
        Ok(Self::assemble(order, position, parent))
    }

    fn assemble(order: Vec<usize>, position: Vec<usize>, parent: Vec<Option<usize>>) -> RootedTree {
        let size = order.len();
        let mut children = vec![Vec::new(); size];
        let mut depth = vec![0; size];
        for i in 1..size {
            let p = parent[i].expect("non-root has a parent");
            children[p].push(i);
            depth[i] = depth[p] + 1;
        }
        let even = depth.iter().filter(|&&d| d % 2 == 0).count();
        let mut tree = RootedTree {
            order,
            position,
            parent,
            children,
            depth,
            diameter: 0,
            parts: (even, size - even),
        };
        let far = tree.farthest_from(0).0;
        tree.diameter = tree.farthest_from(far).1;
        tree
    }

    fn farthest_from(&self, start: usize) -> (usize, usize) {
        let dist = self.distances_from(start);
        dist.iter().enumerate().max_by_key(|&(i, &d)| (d, std::cmp::Reverse(i))).map(|(i, &d)| (i, d)).unwrap()
    }

    /// BFS distances (in tree edges) from `x_start` to every `x_i`.
    pub fn distances_from(&self, start: usize) -> Vec<usize> {
        let size = self.order.len();
        let mut dist = vec![usize::MAX; size];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let nbrs = self.parent[u].into_iter().chain(self.children[u].iter().copied());
            for w in nbrs {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Path with `t` edges.
    pub fn path(t: usize) -> RootedTree {
        let edges: Vec<_> = (1..=t).map(|i| (i - 1, i)).collect();
        Self::from_edges(&edges).expect("path is a tree")
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> RootedTree {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Self::from_edges(&edges).expect("star is a tree")
    }

    pub fn single_vertex() -> RootedTree {
        Self::from_edges(&[]).expect("single vertex")
    }

    /// Number of edges `t`.
    pub fn edge_count(&self) -> usize {
        self.order.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.order.len()
    }

    /// Input label of `x_i`.
    pub fn label(&self, i: usize) -> usize {
        self.order[i]
    }

    /// BFS index of the vertex with input label `label`.
    pub fn index_of(&self, label: usize) -> usize {
        self.position[label]
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// `a(i)`, the index of the parent of `x_i`. Panics for `i = 0`.
    pub fn ancestor(&self, i: usize) -> usize {
        self.parent[i].expect("x_0 has no parent")
    }

    pub fn parent(&self, i: usize) -> Option<usize> {
        self.parent[i]
    }

    pub fn children(&self, i: usize) -> &[usize] {
        &self.children[i]
    }

    /// Distance from `x_0` to `x_i`.
    pub fn depth(&self, i: usize) -> usize {
        self.depth[i]
    }

    pub fn diameter(&self) -> usize {
        self.diameter
    }

    /// Sizes of the two colour classes; the first contains `x_0`.
    pub fn bipartition_sizes(&self) -> (usize, usize) {
        self.parts
    }

    /// Whether `x_j` is a leaf of the prefix tree `T^k` (`j <= k`).
    pub fn is_leaf_in_prefix(&self, j: usize, k: usize) -> bool {
        debug_assert!(j <= k);
        let up = usize::from(self.parent[j].is_some());
        let down = self.children[j].iter().filter(|&&c| c <= k).count();
        up + down <= 1
    }

    /// Indices on the tree path `x_0 -> x_k`, starting with 0.
    pub fn path_from_root(&self, k: usize) -> Vec<usize> {
        let mut path = vec![k];
        let mut cur = k;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    /// Edges `(a(i), i)` in BFS index space.
    pub fn indexed_edges(&self) -> Vec<(usize, usize)> {
        (1..self.order.len()).map(|i| (self.ancestor(i), i)).collect()
    }
}
