use num_bigint::BigInt;
use serde::Serialize;

use super::Graph;
use crate::counting::falling_factorial;
use crate::exact::{from_usize, Rational};

/// One deletion made by [`min_degree_prune`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PruneStep {
    /// Vertex id in the original graph.
    pub vertex: usize,
    pub degree: usize,
    pub n_before: usize,
    pub m_before: usize,
    #[serde(with = "crate::exact::rational_str")]
    pub average_before: Rational,
    #[serde(with = "crate::exact::rational_str")]
    pub average_after: Rational,
}

impl PruneStep {
    /// `(n - 1) (d')_t >= n (d)_t`, compared exactly.
    pub fn monotone_for(&self, t: usize) -> bool {
        let before = from_usize(self.n_before) * falling_factorial(&self.average_before, t);
        let after = from_usize(self.n_before - 1) * falling_factorial(&self.average_after, t);
        after >= before
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PruneResult {
    #[serde(skip)]
    pub graph: Graph,
    /// Original ids of the surviving vertices; `kept[i]` is vertex `i` of `graph`.
    pub kept: Vec<usize>,
    pub trace: Vec<PruneStep>,
}

/// Deletes vertices of degree `< d/4` (d the current average degree, exact),
/// lowest degree first with ties by id, until `δ >= d/4` or nothing is left.
pub fn min_degree_prune(g: &Graph) -> PruneResult {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut degree = g.degrees();
    let mut live_n = n;
    let mut live_m = g.m();
    let mut trace = Vec::new();
    loop {
        if live_n == 0 {
            break;
        }
        // deg < 2m/(4n)  <=>  4 n deg < 2 m
        let victim = (0..n)
            .filter(|&v| alive[v] && 4 * live_n * degree[v] < 2 * live_m)
            .min_by_key(|&v| (degree[v], v));
        let Some(v) = victim else { break };
        let average_before = Rational::new(BigInt::from(2 * live_m), BigInt::from(live_n));
        alive[v] = false;
        for &w in g.neighbors(v) {
            if alive[w] {
                degree[w] -= 1;
            }
        }
        let removed = degree[v];
        let step_n = live_n;
        let step_m = live_m;
        live_n -= 1;
        live_m -= removed;
        let average_after = if live_n == 0 {
            from_usize(0)
        } else {
            Rational::new(BigInt::from(2 * live_m), BigInt::from(live_n))
        };
        trace.push(PruneStep {
            vertex: v,
            degree: removed,
            n_before: step_n,
            m_before: step_m,
            average_before,
            average_after,
        });
    }
    let kept: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    PruneResult { graph: g.induced(&kept), kept, trace }
}
