use num_traits::Zero;
use serde::Serialize;

use super::{DistError, ExactDistribution, PartialEmbedding};
use crate::exact::{ln, from_usize, Rational};
use crate::graph::{Graph, RootedTree};

/// Which endpoints a Γ-set pins down. The "target" endpoint is the image of
/// `x_{a(i+1)}`, the vertex the next step grows from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Endpoints {
    /// `γ_0 = u`.
    From(usize),
    /// `γ_{a(i+1)} = v`.
    To(usize),
    /// `γ_0 = u` and `γ_{a(i+1)} = v`.
    Pair(usize, usize),
    /// `γ` maps the tree path `x_0 -> x_{a(i+1)}` onto `p`.
    Path(Vec<usize>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Restriction {
    All,
    Complete,
    NonComplete,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaSelector {
    pub level: usize,
    pub endpoints: Endpoints,
    pub restriction: Restriction,
}

impl GammaSelector {
    pub fn from(level: usize, u: usize) -> GammaSelector {
        GammaSelector { level, endpoints: Endpoints::From(u), restriction: Restriction::All }
    }

    pub fn to(level: usize, v: usize) -> GammaSelector {
        GammaSelector { level, endpoints: Endpoints::To(v), restriction: Restriction::All }
    }

    pub fn pair(level: usize, u: usize, v: usize) -> GammaSelector {
        GammaSelector { level, endpoints: Endpoints::Pair(u, v), restriction: Restriction::All }
    }

    pub fn path(level: usize, p: Vec<usize>) -> GammaSelector {
        GammaSelector { level, endpoints: Endpoints::Path(p), restriction: Restriction::All }
    }

    pub fn non_complete(mut self) -> GammaSelector {
        self.restriction = Restriction::NonComplete;
        self
    }

    pub fn complete(mut self) -> GammaSelector {
        self.restriction = Restriction::Complete;
        self
    }

    fn needs_target(&self) -> bool {
        !matches!(self.endpoints, Endpoints::From(_)) || self.restriction != Restriction::All
    }

    fn validate(&self, tree: &RootedTree) -> Result<(), DistError> {
        let t = tree.edge_count();
        let bad_level = if self.needs_target() { self.level >= t } else { self.level > t };
        if bad_level {
            return Err(DistError::InvalidLevel { level: self.level, t });
        }
        if let Endpoints::Path(p) = &self.endpoints {
            let expected = tree.depth(tree.ancestor(self.level + 1));
            if p.len() != expected + 1 {
                return Err(DistError::PathLength { expected, got: p.len().saturating_sub(1) });
            }
        }
        Ok(())
    }

    /// Membership test for a level-`level` embedding (selector assumed valid).
    pub fn matches(&self, tree: &RootedTree, g: &Graph, images: &[usize]) -> bool {
        let hit = match &self.endpoints {
            Endpoints::From(u) => images[0] == *u,
            Endpoints::To(v) => images[tree.ancestor(self.level + 1)] == *v,
            Endpoints::Pair(u, v) => images[0] == *u && images[tree.ancestor(self.level + 1)] == *v,
            Endpoints::Path(p) => {
                let target = tree.ancestor(self.level + 1);
                tree.path_from_root(target).iter().zip(p).all(|(&j, &w)| images[j] == w)
            }
        };
        hit && match self.restriction {
            Restriction::All => true,
            Restriction::Complete => is_complete(tree, g, images),
            Restriction::NonComplete => !is_complete(tree, g, images),
        }
    }
}

fn is_complete(tree: &RootedTree, g: &Graph, images: &[usize]) -> bool {
    let i = images.len() - 1;
    let k = tree.ancestor(i + 1);
    let (start, end) = (images[0], images[k]);
    (1..k).filter(|&j| !tree.is_leaf_in_prefix(j, k)).all(|j| g.has_edge(start, images[j]) && g.has_edge(end, images[j]))
}

/// Whether a level-`i` embedding (`i < t`) is complete: both `γ_0` and
/// `γ_{a(i+1)}` are adjacent to every image of a non-leaf `x_j` of
/// `T^{a(i+1)}` with `0 < j < a(i+1)`.
pub fn classify_complete(tree: &RootedTree, g: &Graph, gamma: &PartialEmbedding) -> Result<bool, DistError> {
    let level = gamma.level();
    if level >= tree.edge_count() {
        return Err(DistError::InvalidLevel { level, t: tree.edge_count() });
    }
    Ok(is_complete(tree, g, &gamma.images))
}

/// `P(φ^i ∈ Γ)` summed over the exact law.
pub fn gamma_probability(dist: &ExactDistribution, sel: &GammaSelector) -> Result<Rational, DistError> {
    sel.validate(dist.tree())?;
    Ok(dist
        .level(sel.level)
        .iter()
        .filter(|e| sel.matches(dist.tree(), dist.graph(), &e.images))
        .map(|e| &e.prob)
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RValue {
    pub value: f64,
    /// The conditioning event has probability zero and `value` is the
    /// convention `log(d(v) - i)` (or `0` when `d(v) <= i`).
    pub null_event: bool,
}

/// `r_i(v) = E[log(d(v) - |N(v) ∩ {γ_0..γ_i}|) | γ_{a(i+1)} = v]`.
///
/// Inside the conditioning event the argument is exactly the number of
/// legal next steps, so dead-end states contribute `log 0` only if they can
/// occur; such mass is excluded and the mean is over states that extend.
pub fn r_value(dist: &ExactDistribution, i: usize, v: usize) -> Result<RValue, DistError> {
    let sel = GammaSelector::to(i, v);
    sel.validate(dist.tree())?;
    let mut mass = Rational::zero();
    let mut weighted = 0.0;
    for e in dist.level(i).iter().filter(|e| sel.matches(dist.tree(), dist.graph(), &e.images)) {
        let options = dist.next_options(&e.images);
        if options == 0 {
            continue;
        }
        mass += &e.prob;
        weighted += crate::exact::to_f64(&e.prob) * (options as f64).ln();
    }
    if mass.is_zero() {
        let deg = dist.graph().degree(v);
        let value = if deg > i { ln(&from_usize(deg - i)) } else { 0.0 };
        return Ok(RValue { value, null_event: true });
    }
    Ok(RValue { value: weighted / crate::exact::to_f64(&mass), null_event: false })
}
