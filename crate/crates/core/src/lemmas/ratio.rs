use num_traits::{One, Zero};
use serde::Serialize;

use super::{LemmaError, PathInG, Verdict};
use crate::embedding::{gamma_probability, ExactDistribution, GammaSelector};
use crate::exact::{from_usize, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatioCheck {
    #[serde(with = "crate::exact::rational_str")]
    pub numerator: Rational,
    #[serde(with = "crate::exact::rational_str")]
    pub denominator: Rational,
    #[serde(serialize_with = "crate::exact::opt_rational_str::serialize")]
    pub ratio: Option<Rational>,
    pub verdict: Verdict,
}

/// The hypotheses under which the bracket is claimed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Hypotheses {
    /// `δ >= d/4`.
    pub min_degree_quarter: bool,
    /// `δ >= t`, which rules out dead ends.
    pub min_degree_at_least_t: bool,
    /// `8t² < d`, a proxy for "d large enough" (the lower end is positive).
    pub bracket_nontrivial: bool,
}

impl Hypotheses {
    pub fn all(&self) -> bool {
        self.min_degree_quarter && self.min_degree_at_least_t && self.bracket_nontrivial
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatioReport {
    pub level: usize,
    pub t: usize,
    pub path: Vec<usize>,
    #[serde(with = "crate::exact::rational_str")]
    pub lower: Rational,
    #[serde(with = "crate::exact::rational_str")]
    pub upper: Rational,
    pub hypotheses: Hypotheses,
    /// `Γ_i(p)` against `Γ_i(reverse p)`.
    pub reversal: RatioCheck,
    /// `Γ_i(u,v)` against `Γ_i(v,u)` for the path endpoints.
    pub pair: RatioCheck,
    /// `Γ_i(u,*)` against `Γ_i(*,u)` for `u = p_0`.
    pub endpoint: RatioCheck,
    /// Non-complete pair sets.
    pub pair_non_complete: RatioCheck,
}

fn judge(num: Rational, den: Rational, lower: &Rational, upper: &Rational, hyp: &Hypotheses) -> RatioCheck {
    if den.is_zero() {
        return RatioCheck { numerator: num, denominator: den, ratio: None, verdict: Verdict::Inapplicable };
    }
    let ratio = &num / &den;
    let verdict = if &ratio >= lower && &ratio <= upper {
        Verdict::Holds
    } else if !hyp.all() {
        Verdict::HypothesisUnmet
    } else {
        Verdict::Fails
    };
    RatioCheck { numerator: num, denominator: den, ratio: Some(ratio), verdict }
}

/// Compares the probability of a Γ-set with that of its reversal, along
/// with the pair, endpoint and non-complete variants, against
/// `1 ± 8t²/d`.
pub fn check_reverse_ratio(dist: &ExactDistribution, i: usize, p: &PathInG) -> Result<RatioReport, LemmaError> {
    let g = dist.graph();
    let t = dist.t();
    let d = g.average_degree();
    let width = from_usize(8 * t * t) / &d;
    let lower = Rational::one() - &width;
    let upper = Rational::one() + &width;
    let delta = from_usize(g.min_degree());
    let hyp = Hypotheses {
        min_degree_quarter: &delta * from_usize(4) >= d,
        min_degree_at_least_t: g.min_degree() >= t,
        bracket_nontrivial: width < Rational::one(),
    };
    let prob = |sel: GammaSelector| gamma_probability(dist, &sel);
    let (u, v) = (p.start(), p.end());

    let forward = prob(GammaSelector::path(i, p.vertices().to_vec()))?;
    let backward = prob(GammaSelector::path(i, p.reverse().vertices().to_vec()))?;
    let reversal = judge(forward, backward, &lower, &upper, &hyp);
    let pair = judge(prob(GammaSelector::pair(i, u, v))?, prob(GammaSelector::pair(i, v, u))?, &lower, &upper, &hyp);
    let endpoint = judge(prob(GammaSelector::from(i, u))?, prob(GammaSelector::to(i, u))?, &lower, &upper, &hyp);
    let pair_non_complete = judge(
        prob(GammaSelector::pair(i, u, v).non_complete())?,
        prob(GammaSelector::pair(i, v, u).non_complete())?,
        &lower,
        &upper,
        &hyp,
    );
    Ok(RatioReport {
        level: i,
        t,
        path: p.vertices().to_vec(),
        lower,
        upper,
        hypotheses: hyp,
        reversal,
        pair,
        endpoint,
        pair_non_complete,
    })
}
