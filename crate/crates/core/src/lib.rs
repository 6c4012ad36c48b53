//! Exact counting and verification toolkit for tree embeddings in graphs.
//!
//! * [`graph`]: simple graphs, BFS-ordered rooted trees, benchmark families,
//!   tree catalog and min-degree pruning.
//! * [`counting`]: `|Hom(T,G)|`, `|Mon(T,G)|`, walk counts and closed-form
//!   lower bounds, all in exact arithmetic.
//! * [`embedding`]: the random greedy embedding, its exact law, Γ-set
//!   queries and the per-level entropy decomposition.
//! * [`lemmas`]: path reversal and twist checks, the Jensen error identity,
//!   Σ-terms and an empirical degree-threshold probe.
//! * [`search`]: exhaustive small-graph search for minimizers.

pub mod counting;
pub mod embedding;
pub mod exact;
pub mod graph;
pub mod lemmas;
pub mod search;

pub use counting::{
    count_forest, count_hom_tree, count_injective, count_nb_walks, count_walks, falling_factorial,
    main_bound_check, CountError, CountReport, EqualityClass,
};
pub use embedding::{
    entropy_report, exact_distribution, gamma_probability, sample_greedy, DistError, EntropyReport,
    ExactDistribution, GammaSelector, PartialEmbedding,
};
pub use exact::Rational;
pub use graph::{Graph, GraphError, GraphFamilySpec, RootedTree, TreeError};
