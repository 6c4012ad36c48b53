use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::LemmaError;
use crate::embedding::{gamma_probability, DistError, ExactDistribution, GammaSelector};
use crate::exact::Rational;
use crate::graph::{Graph, RootedTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityVerdict {
    Exact,
    /// Unequal, and dead ends before level `i` break the reduction to `T^{a(i+1)}`.
    HypothesisUnmet,
    Fails,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistReport {
    pub level: usize,
    pub u: usize,
    pub v: usize,
    /// `P(Γ_i(v,u)) - P(Γ_i(u,v))`.
    #[serde(with = "crate::exact::rational_str")]
    pub lhs: Rational,
    /// `P(Γ_i^nc(v,u)) - P(Γ_i^nc(u,v))`.
    #[serde(with = "crate::exact::rational_str")]
    pub rhs: Rational,
    #[serde(with = "crate::exact::rational_str")]
    pub dead_end_before: Rational,
    pub verdict: IdentityVerdict,
}

/// Evaluates both sides of the twist cancellation identity exactly.
pub fn check_twist_identity(dist: &ExactDistribution, i: usize, u: usize, v: usize) -> Result<TwistReport, LemmaError> {
    let prob = |sel: GammaSelector| gamma_probability(dist, &sel);
    let lhs = prob(GammaSelector::pair(i, v, u))? - prob(GammaSelector::pair(i, u, v))?;
    let rhs = prob(GammaSelector::pair(i, v, u).non_complete())? - prob(GammaSelector::pair(i, u, v).non_complete())?;
    let dead_end_before = dist.dead_end_before(i);
    let verdict = if lhs == rhs {
        IdentityVerdict::Exact
    } else if dead_end_before.is_positive() {
        IdentityVerdict::HypothesisUnmet
    } else {
        IdentityVerdict::Fails
    };
    Ok(TwistReport { level: i, u, v, lhs, rhs, dead_end_before, verdict })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingTwistReport {
    pub level: usize,
    /// `a(i+1)`: the twist acts on embeddings of `T^{a(i+1)}`.
    pub prefix_level: usize,
    /// Complete prefixes examined.
    pub checked: usize,
    /// Twists that were not complete embeddings of positive probability.
    pub not_closed: usize,
    pub not_involutive: usize,
    pub probability_mismatches: usize,
}

impl EmbeddingTwistReport {
    pub fn is_bijective_and_measure_preserving(&self) -> bool {
        self.not_closed == 0 && self.not_involutive == 0 && self.probability_mismatches == 0
    }
}

fn complete_prefix(tree: &RootedTree, g: &Graph, images: &[usize]) -> bool {
    let k = images.len() - 1;
    let (a, b) = (images[0], images[k]);
    (1..k).filter(|&j| !tree.is_leaf_in_prefix(j, k)).all(|j| g.has_edge(a, images[j]) && g.has_edge(b, images[j]))
}

fn twisted(images: &[usize]) -> Vec<usize> {
    let mut out = images.to_vec();
    let k = out.len() - 1;
    out.swap(0, k);
    out
}

/// Swaps the images of `x_0` and `x_{a(i+1)}` on every complete embedding of
/// `T^{a(i+1)}` and checks it is a measure-preserving involution.
///
/// Completeness only involves the first `a(i+1)+1` images, so it is decided
/// on the prefix itself.
pub fn check_embedding_twist(dist: &ExactDistribution, i: usize) -> Result<EmbeddingTwistReport, LemmaError> {
    let (tree, g) = (dist.tree(), dist.graph());
    if i >= dist.t() {
        return Err(DistError::InvalidLevel { level: i, t: dist.t() }.into());
    }
    let k = tree.ancestor(i + 1);
    let complete: BTreeSet<Vec<usize>> = dist
        .level(k)
        .iter()
        .filter(|e| complete_prefix(tree, g, &e.images))
        .map(|e| e.images.clone())
        .collect();
    let mut report = EmbeddingTwistReport {
        level: i,
        prefix_level: k,
        checked: complete.len(),
        not_closed: 0,
        not_involutive: 0,
        probability_mismatches: 0,
    };
    for images in &complete {
        let image = twisted(images);
        if !complete.contains(&image) {
            report.not_closed += 1;
            continue;
        }
        if &twisted(&image) != images {
            report.not_involutive += 1;
        }
        if dist.probability(&image) != dist.probability(images) || dist.probability(images).is_zero() {
            report.probability_mismatches += 1;
        }
    }
    Ok(report)
}
