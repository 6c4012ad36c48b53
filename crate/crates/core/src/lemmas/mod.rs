//! Numerical and exact checks of the reversal, twist and Σ-term machinery.

mod d0;
mod jensen;
mod path;
mod ratio;
mod sigma;
mod twist;

pub use d0::{empirical_d0, D0Report, GridSpec, Violation};
pub use jensen::{jensen_error_identity, JensenReport};
pub use path::PathInG;
pub use ratio::{check_reverse_ratio, Hypotheses, RatioCheck, RatioReport};
pub use sigma::{check_l_monotonicity, l_ratio, sigma_terms, LMonotonicityReport, SigmaInputs, SigmaTriple};
pub use twist::{check_embedding_twist, check_twist_identity, EmbeddingTwistReport, IdentityVerdict, TwistReport};

use serde::Serialize;
use thiserror::Error;

use crate::embedding::DistError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LemmaError {
    #[error("not a path in the graph: {0}")]
    NotAPath(String),
    #[error("path is not complete: edge {{{}, {}}} is missing", .0 .0, .0 .1)]
    NotComplete((usize, usize)),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("grid spec selects no points")]
    EmptyGrid,
    #[error("bad grid spec: {0}")]
    BadGrid(String),
    #[error(transparent)]
    Dist(#[from] DistError),
}

/// Outcome of a bound check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    /// Outside the bracket, but the instance does not meet the hypotheses.
    HypothesisUnmet,
    Fails,
    /// Zero denominator.
    Inapplicable,
}
