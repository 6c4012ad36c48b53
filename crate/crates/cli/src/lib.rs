//! Command-line front end. Every run prints one report that carries the
//! resolved configuration, a `verdict` for the mathematical outcome and the
//! command's result.

mod commands;
mod render;
pub mod sources;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use treemon::counting::CountError;
use treemon::lemmas::{GridSpec, LemmaError};
use treemon::search::SearchError;
use treemon::DistError;

pub use render::render;

/// Env var holding the default node budget for backtracking counts.
pub const BUDGET_ENV: &str = "TREEMON_BUDGET";
/// Env var holding the default cap on stored partial embeddings.
pub const MAX_EMBEDDINGS_ENV: &str = "TREEMON_MAX_EMBEDDINGS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize)]
pub struct Options {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Seed for the sampler.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Cap on partial embeddings stored by the exact law.
    #[arg(long, env = MAX_EMBEDDINGS_ENV, default_value_t = treemon::embedding::DEFAULT_MAX_ENTRIES, global = true)]
    pub max_embeddings: usize,
    /// Cap on search nodes visited by embedding counts.
    #[arg(long, env = BUDGET_ENV, default_value_t = 1_000_000_000, global = true)]
    pub max_nodes: u64,
    /// Tolerance for floating-point consistency checks.
    #[arg(long, default_value_t = 1e-9, global = true)]
    pub tol: f64,
    /// Tolerance for floating-point identities.
    #[arg(long, default_value_t = 1e-12, global = true)]
    pub identity_tol: f64,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize)]
pub struct Instance {
    /// Family spec (`clique_union:k=3,s=4`), `file:PATH` or a path.
    #[arg(long)]
    pub graph: String,
    /// `path:t=N`, `star:leaves=N`, `catalog:v=V,i=I`, `file:PATH` or a path.
    #[arg(long)]
    pub tree: String,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Command {
    /// Injective, homomorphism and walk counts.
    Count(Instance),
    /// Embedding count against the average-degree bound.
    Bound(Instance),
    /// Entropy decomposition of the greedy embedding law.
    Entropy(Instance),
    /// Draws from the greedy embedding process.
    Sample {
        #[command(flatten)]
        #[serde(flatten)]
        instance: Instance,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Also report total variation distance to the exact law.
        #[arg(long)]
        compare: bool,
    },
    /// Numerical and exact checks of the supporting lemmas.
    Lemmas {
        #[command(subcommand)]
        check: LemmaCheck,
    },
    /// Smallest degree where the per-pair inequality holds on a grid.
    D0 {
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = GridSpec::default().to_string())]
        grid: String,
    },
    /// Exhaustive minimum of the embedding count over `(n, m)` graphs.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        tree: String,
    },
    /// Matchings in clique unions against bipartite and split graphs.
    Forest {
        #[command(subcommand)]
        check: ForestCheckKind,
    },
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum LemmaCheck {
    /// Γ-set probabilities against their reversals.
    Ratio {
        #[command(flatten)]
        #[serde(flatten)]
        instance: Instance,
        #[arg(long)]
        level: usize,
        /// Comma-separated vertices of a path in the graph.
        #[arg(long)]
        path: String,
    },
    /// Twist identity over every vertex pair, plus the embedding twist.
    Twist {
        #[command(flatten)]
        #[serde(flatten)]
        instance: Instance,
        /// Single level; all levels when omitted.
        #[arg(long)]
        level: Option<usize>,
    },
    /// Exact Jensen gap on a degree sequence.
    Jensen {
        /// Comma-separated degrees.
        #[arg(long)]
        degrees: String,
        #[arg(long)]
        k: u64,
    },
    /// The three per-pair terms.
    Sigma {
        #[arg(long)]
        c_u: f64,
        #[arg(long)]
        c_v: f64,
        #[arg(long)]
        d: f64,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        deg_u: f64,
        #[arg(long)]
        deg_v: f64,
    },
    /// Sign and monotonicity of the normalised deviation function.
    Monotonicity {
        #[arg(long)]
        d: f64,
        #[arg(long)]
        i: usize,
        #[arg(long, default_value_t = GridSpec::default().to_string())]
        grid: String,
        /// Degree from which the decrease below 1 is checked; 0 checks it always.
        #[arg(long)]
        decrease_threshold: Option<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum ForestCheckKind {
    /// Clique union of `K_{d+1}` against `K_{d/2, n-d/2}` and the matched split graph.
    Compare {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Every `(n, m)` up to `max_n` realised by both equal cliques and a split graph.
    Matched {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        max_n: usize,
    },
    /// Split graph against the exhaustive minimum at `(n, m)`.
    Split {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Parser, Serialize)]
#[command(name = "treemon", version, about = "Exact tree-embedding counts and entropy diagnostics")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let o = &self.options;
        if o.max_embeddings == 0 || o.max_nodes == 0 {
            return Err(CliError::Validation("budgets must be positive".into()));
        }
        if !(o.tol > 0.0 && o.identity_tol > 0.0 && o.tol.is_finite() && o.identity_tol.is_finite()) {
            return Err(CliError::Validation("tolerances must be positive and finite".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Input(_) => 3,
            CliError::Budget(_) => 4,
            CliError::Internal(_) => 1,
        }
    }
}

impl From<DistError> for CliError {
    fn from(e: DistError) -> CliError {
        match e {
            DistError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            DistError::InternalConsistency { .. } => CliError::Internal(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<CountError> for CliError {
    fn from(e: CountError) -> CliError {
        match e {
            CountError::BudgetExceeded(_) => CliError::Budget(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<LemmaError> for CliError {
    fn from(e: LemmaError) -> CliError {
        match e {
            LemmaError::Dist(d) => d.into(),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> CliError {
        CliError::Validation(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: RunConfig,
    pub verdict: String,
    pub result: serde_json::Value,
}

/// Dispatches the command and assembles its report.
pub fn run(config: RunConfig) -> Result<Report, CliError> {
    config.validate()?;
    let (verdict, result) = commands::dispatch(&config)?;
    Ok(Report { tool: "treemon", version: env!("CARGO_PKG_VERSION"), config, verdict, result })
}

/// What a process run produces: exit status and the two output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses arguments (program name first), runs, and renders.
pub fn run_args<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Outcome { code, stdout, stderr };
        }
    };
    let format = config.options.format;
    match run(config).and_then(|r| render(&r, format)) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn json(args: &[&str]) -> serde_json::Value {
        let out = run_args(std::iter::once("treemon").chain(args.iter().copied()));
        assert_eq!(out.code, 0, "{}", out.stderr);
        serde_json::from_str(&out.stdout).unwrap()
    }

    #[test]
    fn bound_on_three_k4() {
        let v = json(&["bound", "--graph", "clique_union:k=3,s=4", "--tree", "path:t=2"]);
        assert_eq!(v["result"]["mon_count"], "72");
        assert_eq!(v["result"]["bound"], "72");
        assert_eq!(v["result"]["equality"], true);
        assert_eq!(v["verdict"], "equality");
        assert_eq!(v["config"]["command"]["graph"], "clique_union:k=3,s=4");
    }

    #[test]
    fn entropy_on_two_k5() {
        let v = json(&["entropy", "--graph", "clique_union:k=2,s=5", "--tree", "path:t=3"]);
        let h = v["result"]["h_total"].as_f64().unwrap();
        assert!((h - 240f64.ln()).abs() < 1e-9);
        assert!(v["result"]["slack"].as_f64().unwrap().abs() < 1e-9);
    }

    #[test]
    fn exit_codes() {
        let run = |args: &[&str]| run_args(std::iter::once("treemon").chain(args.iter().copied())).code;
        assert_eq!(run(&["frobnicate"]), 2);
        assert_eq!(run(&["count", "--graph", "nonsense", "--tree", "path:t=1"]), 2);
        assert_eq!(run(&["count", "--graph", "file:/no/such/file", "--tree", "path:t=1"]), 3);
        assert_eq!(run(&["count", "--graph", "clique_union:k=1,s=8", "--tree", "path:t=5", "--max-nodes", "10"]), 4);
        assert_eq!(run(&["entropy", "--graph", "clique_union:k=1,s=8", "--tree", "path:t=5", "--max-embeddings", "10"]), 4);
        assert_eq!(run(&["count", "--graph", "cycle:n=5", "--tree", "path:t=1", "--max-nodes", "0"]), 2);
    }

    #[test]
    fn help_exits_zero() {
        let out = run_args(["treemon", "--help"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("bound"));
    }
}
