use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{DistError, ExactDistribution, RValue};
use crate::counting::falling_factorial;
use crate::exact::{from_usize, ln, to_f64, Rational};

/// The three error terms of one level and the identity residual.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PiTerms {
    pub log_d_minus_i: f64,
    pub pi1: f64,
    pub pi2: f64,
    pub pi3: f64,
    /// `Σ d(v)/2m · r_i(v)` over vertices with `d(v) <= i`, which are left
    /// out of `pi1` and `pi2` because `log(d(v) - i)` is undefined there.
    pub violator_term: f64,
    pub violators: Vec<usize>,
    /// `H[φ^{i+1}|φ^i] - log(d-i) - pi1 - pi2 + pi3 - violator_term`.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelTerms {
    pub i: usize,
    /// `H[φ^{i+1} | φ^i]` computed straight from the law.
    pub h_conditional: f64,
    pub decomposition: Option<PiTerms>,
    /// Why `decomposition` is absent.
    pub skipped: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RRow {
    pub i: usize,
    pub values: Vec<RValue>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyReport {
    pub t: usize,
    pub support_size: usize,
    #[serde(with = "crate::exact::rational_str")]
    pub failure_mass: Rational,
    /// Set when dead ends have positive mass and every quantity below refers
    /// to the law conditioned on success.
    pub conditioned: bool,
    pub h_total: f64,
    /// `H[φ^1]`; absent for a single-vertex tree.
    pub h_first_edge: Option<f64>,
    pub log_two_m: f64,
    pub levels: Vec<LevelTerms>,
    /// `H_total - H[φ^1] - Σ H[φ^{i+1}|φ^i]`.
    pub chain_residual: f64,
    /// `log |support|`.
    pub uniform_bound: f64,
    pub uniform: bool,
    /// `log(n (d)_t)` when `n (d)_t > 0`.
    pub model_bound: Option<f64>,
    pub slack: Option<f64>,
    pub r_values: Vec<RRow>,
}

type Law = Vec<(Vec<usize>, Rational)>;

/// Marginals of the (conditioned) full-embedding law on every prefix level.
fn marginals(dist: &ExactDistribution) -> Vec<Law> {
    let t = dist.t();
    let success = dist.level_mass(t);
    let full: Law = dist.level(t).iter().map(|e| (e.images.clone(), &e.prob / &success)).collect();
    let mut out = Vec::with_capacity(t + 1);
    for i in 0..t {
        // level-t entries are sorted, so equal prefixes are contiguous
        let mut law: Law = Vec::new();
        for (images, p) in &full {
            match law.last_mut() {
                Some((prefix, q)) if prefix.as_slice() == &images[..=i] => *q += p,
                _ => law.push((images[..=i].to_vec(), p.clone())),
            }
        }
        out.push(law);
    }
    out.push(full);
    out
}

fn entropy(law: &Law) -> f64 {
    law.iter().map(|(_, p)| -to_f64(p) * ln(p)).sum()
}

fn conditional_entropy(parent: &Law, child: &Law) -> f64 {
    let mut h = 0.0;
    let mut k = 0;
    for (images, p) in child {
        let prefix = &images[..images.len() - 1];
        while parent[k].0.as_slice() != prefix {
            k += 1;
        }
        h += to_f64(p) * ln(&(&parent[k].1 / p));
    }
    h
}

struct LevelScan {
    from: Vec<Rational>,
    to: Vec<Rational>,
    r: Vec<RValue>,
}

fn scan_level(dist: &ExactDistribution, i: usize) -> LevelScan {
    let g = dist.graph();
    let n = g.n();
    let target = dist.tree().ancestor(i + 1);
    let mut from = vec![Rational::zero(); n];
    let mut to = vec![Rational::zero(); n];
    let mut live = vec![Rational::zero(); n];
    let mut weighted = vec![0.0; n];
    for e in dist.level(i) {
        from[e.images[0]] += &e.prob;
        let v = e.images[target];
        to[v] += &e.prob;
        let options = dist.next_options(&e.images);
        if options > 0 {
            live[v] += &e.prob;
            weighted[v] += to_f64(&e.prob) * (options as f64).ln();
        }
    }
    let r = (0..n)
        .map(|v| {
            if live[v].is_zero() {
                let value = if g.degree(v) > i { ((g.degree(v) - i) as f64).ln() } else { 0.0 };
                RValue { value, null_event: true }
            } else {
                RValue { value: weighted[v] / to_f64(&live[v]), null_event: false }
            }
        })
        .collect();
    LevelScan { from, to, r }
}

fn decompose(dist: &ExactDistribution, i: usize, scan: &LevelScan, h: f64) -> Result<PiTerms, DistError> {
    let g = dist.graph();
    let two_m = BigInt::from(2 * g.m());
    let d_minus_i = g.average_degree() - from_usize(i);
    let log_d_minus_i = ln(&d_minus_i);
    let (mut pi1, mut pi2, mut pi3, mut violator_term) = (-log_d_minus_i, 0.0, 0.0, 0.0);
    let mut violators = Vec::new();
    for v in 0..g.n() {
        let weight = Rational::new(BigInt::from(g.degree(v)), two_m.clone());
        if scan.from[v] != weight {
            return Err(DistError::InternalConsistency {
                what: format!("P(γ_0 = {v}) differs from d(v)/2m at level {i}"),
                residual: to_f64(&(&scan.from[v] - &weight)),
            });
        }
        let w = to_f64(&weight);
        let r = scan.r[v].value;
        if g.degree(v) > i {
            let log_dv = ((g.degree(v) - i) as f64).ln();
            pi1 += w * log_dv;
            pi2 += w * (r - log_dv);
        } else if g.degree(v) > 0 {
            violators.push(v);
            violator_term += w * r;
        }
        pi3 += to_f64(&(&scan.from[v] - &scan.to[v])) * r;
    }
    let residual = h - log_d_minus_i - pi1 - pi2 + pi3 - violator_term;
    Ok(PiTerms { log_d_minus_i, pi1, pi2, pi3, violator_term, violators, residual })
}

/// Entropy of the greedy embedding with its per-level decomposition.
///
/// Every identity is checked to `tol`; a violation means a bug and is
/// returned as [`DistError::InternalConsistency`].
pub fn entropy_report(dist: &ExactDistribution, tol: f64) -> Result<EntropyReport, DistError> {
    let t = dist.t();
    if dist.support_size() == 0 {
        return Err(DistError::EmptySupport);
    }
    let g = dist.graph();
    let failure_mass = dist.failure_mass();
    let conditioned = failure_mass.is_positive();
    let laws = marginals(dist);
    let h_total = entropy(&laws[t]);
    let log_two_m = ((2 * g.m()) as f64).ln();
    let h_first_edge = (t >= 1).then(|| entropy(&laws[1]));
    if let (Some(h1), false) = (h_first_edge, conditioned) {
        if (h1 - log_two_m).abs() > tol {
            return Err(DistError::InternalConsistency {
                what: "H[φ^1] differs from log 2m".into(),
                residual: h1 - log_two_m,
            });
        }
    }

    let d = g.average_degree();
    let mut levels = Vec::new();
    let mut r_values = Vec::new();
    for i in 1..t {
        let h = conditional_entropy(&laws[i], &laws[i + 1]);
        let scan = scan_level(dist, i);
        let (decomposition, skipped) = if conditioned {
            (None, Some("dead ends have positive mass".to_string()))
        } else if d <= from_usize(i) {
            (None, Some(format!("average degree does not exceed {i}")))
        } else {
            let terms = decompose(dist, i, &scan, h)?;
            if terms.residual.abs() > tol {
                return Err(DistError::InternalConsistency {
                    what: format!("level {i} decomposition"),
                    residual: terms.residual,
                });
            }
            (Some(terms), None)
        };
        levels.push(LevelTerms { i, h_conditional: h, decomposition, skipped });
        r_values.push(RRow { i, values: scan.r });
    }

    let chain_residual = match h_first_edge {
        Some(h1) => h_total - h1 - levels.iter().map(|l| l.h_conditional).sum::<f64>(),
        None => 0.0,
    };
    if chain_residual.abs() > tol {
        return Err(DistError::InternalConsistency { what: "chain rule".into(), residual: chain_residual });
    }

    let support = dist.level(t);
    let uniform = support.iter().all(|e| e.prob == support[0].prob);
    let uniform_bound = (support.len() as f64).ln();
    let model = from_usize(g.n()) * falling_factorial(&d, t);
    let model_bound = model.is_positive().then(|| ln(&model));
    let slack = model_bound.map(|b| h_total - b);
    Ok(EntropyReport {
        t,
        support_size: support.len(),
        failure_mass: failure_mass.clone(),
        conditioned,
        h_total,
        h_first_edge,
        log_two_m,
        levels,
        chain_residual,
        uniform_bound,
        uniform,
        model_bound,
        slack,
        r_values,
    })
}

impl EntropyReport {
    /// Success probability `1 - failure mass`.
    pub fn success_mass(&self) -> Rational {
        Rational::one() - &self.failure_mass
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{exact_distribution, r_value};
    use crate::graph::{make_clique_union, make_complete_bipartite, make_cycle};
    use crate::graph::RootedTree;

    const TOL: f64 = 1e-9;

    #[test]
    fn edge_in_k2() {
        let d = exact_distribution(&RootedTree::path(1), &make_clique_union(1, 2), 100).unwrap();
        let r = entropy_report(&d, TOL).unwrap();
        assert!((r.h_total - 2f64.ln()).abs() < 1e-12);
        assert!(r.levels.is_empty());
    }

    #[test]
    fn p2_in_k4_equality_case() {
        let d = exact_distribution(&RootedTree::path(2), &make_clique_union(1, 4), 1000).unwrap();
        let r = entropy_report(&d, TOL).unwrap();
        assert!((r.h_total - 24f64.ln()).abs() < 1e-12);
        let terms = r.levels[0].decomposition.as_ref().unwrap();
        for x in [terms.pi1, terms.pi2, terms.pi3] {
            assert!(x.abs() < 1e-12);
        }
        assert!(r.slack.unwrap().abs() < 1e-12);
        assert!(r.uniform);
    }

    #[test]
    fn irregular_graph_without_dead_ends() {
        // K_5 and K_4 joined by a bridge: minimum degree 3, so P_3 never stalls
        let g = crate::graph::Graph::new(9, (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).chain((5..9).flat_map(|a| (a + 1..9).map(move |b| (a, b)))).chain([(4, 5)])).unwrap();
        let d = exact_distribution(&RootedTree::path(3), &g, 100_000).unwrap();
        assert!(d.failure_mass().is_zero());
        let r = entropy_report(&d, TOL).unwrap();
        for level in &r.levels {
            let terms = level.decomposition.as_ref().unwrap();
            assert!(terms.residual.abs() < TOL);
        }
        // by hand: i = 1 gives 1.0336 - log(25/9) > 0, i = 2 gives
        // 0.5693 - log(16/9) < 0 since degree-3 vertices sit where L is concave
        let pi1: Vec<f64> = r.levels.iter().map(|l| l.decomposition.as_ref().unwrap().pi1).collect();
        assert!(pi1[0] > 0.0 && pi1[1] < 0.0, "{pi1:?}");
        for row in &r.r_values {
            for v in 0..g.n() {
                assert!((row.values[v].value - r_value(&d, row.i, v).unwrap().value).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn dead_ends_condition_the_law() {
        let d = exact_distribution(&RootedTree::path(2), &make_complete_bipartite(1, 3), 1000).unwrap();
        let r = entropy_report(&d, TOL).unwrap();
        assert!(r.conditioned);
        assert!(r.levels[0].decomposition.is_none());
        assert!(r.h_total <= r.uniform_bound + TOL);
    }

    #[test]
    fn clique_unions_are_uniform() {
        let g = make_clique_union(2, 5);
        for tree in crate::graph::enumerate_trees(5).unwrap() {
            let d = exact_distribution(&tree, &g, 100_000).unwrap();
            let r = entropy_report(&d, TOL).unwrap();
            assert!(r.uniform);
            assert!((r.h_total - r.uniform_bound).abs() < TOL);
            assert!((r.h_total - (10.0 * 24.0f64).ln()).abs() < TOL);
        }
    }

    #[test]
    fn cycle_chain_rule() {
        let d = exact_distribution(&RootedTree::path(4), &make_cycle(7), 100_000).unwrap();
        let r = entropy_report(&d, TOL).unwrap();
        assert!(r.chain_residual.abs() < TOL);
        assert!(r.h_total <= r.uniform_bound + TOL);
    }
}
