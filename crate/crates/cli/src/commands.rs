use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use treemon::counting::{adversary_lower_bound, bipartite_bound, count_injective_with_budget};
use treemon::embedding::{exact_distribution, GreedySampler, SampleOutcome};
use treemon::exact::to_f64;
use treemon::lemmas::{
    check_embedding_twist, check_l_monotonicity, check_reverse_ratio, check_twist_identity, empirical_d0,
    jensen_error_identity, sigma_terms, GridSpec, IdentityVerdict, PathInG, SigmaInputs, Verdict,
};
use treemon::search::{find_min_mon, forest_counterexample_check, matched_forest_comparisons, split_graph_min_check};
use treemon::{
    count_hom_tree, count_nb_walks, count_walks, entropy_report, main_bound_check, ExactDistribution, Graph, RootedTree,
};

use crate::sources::{load_graph, load_tree};
use crate::{CliError, Command, ForestCheckKind, Instance, LemmaCheck, Options, RunConfig};

type Outcome = Result<(String, Value), CliError>;

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn load(instance: &Instance) -> Result<(Graph, RootedTree), CliError> {
    Ok((load_graph(&instance.graph)?, load_tree(&instance.tree)?))
}

fn tree_summary(tree: &RootedTree) -> Value {
    json!({
        "vertices": tree.vertex_count(),
        "edges": tree.edge_count(),
        "diameter": tree.diameter(),
        "edge_list": tree.indexed_edges(),
    })
}

fn parse_list<T: std::str::FromStr>(what: &str, text: &str) -> Result<Vec<T>, CliError> {
    text.split(',')
        .map(|s| s.trim().parse().map_err(|_| CliError::Validation(format!("bad {what} entry {s:?}"))))
        .collect()
}

fn parse_grid(text: &str) -> Result<GridSpec, CliError> {
    Ok(text.parse::<GridSpec>()?)
}

pub fn dispatch(config: &RunConfig) -> Outcome {
    let o = &config.options;
    match &config.command {
        Command::Count(instance) => count(instance, o),
        Command::Bound(instance) => bound(instance, o),
        Command::Entropy(instance) => entropy(instance, o),
        Command::Sample { instance, samples, compare } => sample(instance, o, *samples, *compare),
        Command::Lemmas { check } => lemmas(check, o),
        Command::D0 { t, grid } => {
            let report = empirical_d0(*t, &parse_grid(grid)?)?;
            Ok(("found".into(), to_value(&report)))
        }
        Command::Search { n, m, tree } => {
            let result = find_min_mon(*n, *m, &load_tree(tree)?, tree)?;
            let verdict = match result.clique_union_attains_minimum {
                Some(true) => "clique_union_attains_minimum",
                Some(false) => "clique_union_not_minimal",
                None => "no_clique_union",
            };
            Ok((verdict.into(), to_value(&result)))
        }
        Command::Forest { check } => forest(check),
    }
}

fn count(instance: &Instance, o: &Options) -> Outcome {
    let (g, tree) = load(instance)?;
    let t = tree.edge_count();
    let mon = count_injective_with_budget(&tree, &g, o.max_nodes)?;
    let result = json!({
        "graph": g.summary(),
        "tree": tree_summary(&tree),
        "mon_count": mon.to_string(),
        "hom_count": count_hom_tree(&tree, &g).to_string(),
        "walks": count_walks(&g, t).to_string(),
        "non_backtracking_walks": count_nb_walks(&g, t).to_string(),
    });
    Ok(("computed".into(), result))
}

fn bound(instance: &Instance, o: &Options) -> Outcome {
    let (g, tree) = load(instance)?;
    // fail fast on the budget before the unbounded count
    count_injective_with_budget(&tree, &g, o.max_nodes)?;
    let report = main_bound_check(&tree, &g);
    let verdict = if report.equality {
        "equality"
    } else if report.holds {
        "holds"
    } else {
        "fails"
    };
    let mut result = to_value(&report);
    result["graph"] = to_value(&g.summary());
    result["tree"] = tree_summary(&tree);
    result["adversary_bound"] = to_value(&adversary_lower_bound(&g, tree.edge_count()));
    result["bipartite_bound"] = bipartite_bound(&g, &tree).map_or(Value::Null, |b| to_value(&b));
    Ok((verdict.into(), result))
}

fn entropy(instance: &Instance, o: &Options) -> Outcome {
    let (g, tree) = load(instance)?;
    let dist = exact_distribution(&tree, &g, o.max_embeddings)?;
    let report = entropy_report(&dist, o.tol)?;
    let verdict = match report.slack {
        None => "inapplicable",
        Some(s) if s >= -o.tol => "holds",
        Some(_) if report.conditioned => "hypothesis_unmet",
        Some(_) => "fails",
    };
    Ok((verdict.into(), to_value(&report)))
}

fn total_variation(dist: &ExactDistribution, embedded: &BTreeMap<Vec<usize>, usize>, dead: &BTreeMap<usize, usize>, runs: usize) -> f64 {
    let freq = |c: Option<&usize>| c.copied().unwrap_or(0) as f64 / runs as f64;
    let mut sum: f64 = dist.level(dist.t()).iter().map(|e| (freq(embedded.get(&e.images)) - to_f64(&e.prob)).abs()).sum();
    sum += embedded.iter().filter(|(k, _)| dist.probability(k).is_zero()).map(|(_, c)| freq(Some(c))).sum::<f64>();
    sum += (0..dist.t()).map(|level| (freq(dead.get(&level)) - to_f64(dist.dead_end_at(level))).abs()).sum::<f64>();
    sum / 2.0
}

fn sample(instance: &Instance, o: &Options, samples: usize, compare: bool) -> Outcome {
    if samples == 0 {
        return Err(CliError::Validation("--samples must be positive".into()));
    }
    let (g, tree) = load(instance)?;
    let mut sampler = GreedySampler::new(&tree, &g, o.seed)?;
    let mut embedded: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut dead: BTreeMap<usize, usize> = BTreeMap::new();
    let mut first = Vec::new();
    for k in 0..samples {
        let outcome = sampler.sample();
        match &outcome {
            SampleOutcome::Embedded { images } => *embedded.entry(images.clone()).or_default() += 1,
            SampleOutcome::DeadEnd { level, .. } => *dead.entry(*level).or_default() += 1,
        }
        if k < 10 {
            first.push(outcome);
        }
    }
    let tv = if compare {
        let dist = exact_distribution(&tree, &g, o.max_embeddings)?;
        Some(total_variation(&dist, &embedded, &dead, samples))
    } else {
        None
    };
    let frequencies: Vec<Value> = embedded.iter().map(|(images, c)| json!({ "images": images, "count": c })).collect();
    let result = json!({
        "samples": samples,
        "embedded": embedded.values().sum::<usize>(),
        "dead_ends_by_level": dead,
        "distinct_embeddings": embedded.len(),
        "first_outcomes": first,
        "frequencies": frequencies,
        "total_variation": tv,
    });
    Ok(("sampled".into(), result))
}

fn worst(verdicts: impl IntoIterator<Item = Verdict>) -> &'static str {
    let all: Vec<Verdict> = verdicts.into_iter().collect();
    if all.contains(&Verdict::Fails) {
        "fails"
    } else if all.contains(&Verdict::HypothesisUnmet) {
        "hypothesis_unmet"
    } else if all.contains(&Verdict::Holds) {
        "holds"
    } else {
        "inapplicable"
    }
}

fn lemmas(check: &LemmaCheck, o: &Options) -> Outcome {
    match check {
        LemmaCheck::Ratio { instance, level, path } => {
            let (g, tree) = load(instance)?;
            let path = PathInG::new(&g, parse_list("path", path)?)?;
            let dist = exact_distribution(&tree, &g, o.max_embeddings)?;
            let r = check_reverse_ratio(&dist, *level, &path)?;
            let verdict = worst([r.reversal.verdict, r.pair.verdict, r.endpoint.verdict, r.pair_non_complete.verdict]);
            Ok((verdict.into(), to_value(&r)))
        }
        LemmaCheck::Twist { instance, level } => {
            let (g, tree) = load(instance)?;
            let dist = exact_distribution(&tree, &g, o.max_embeddings)?;
            let levels: Vec<usize> = match level {
                Some(i) => vec![*i],
                None => (0..dist.t()).collect(),
            };
            let mut tally: BTreeMap<&str, usize> = BTreeMap::from([("exact", 0), ("hypothesis_unmet", 0), ("fails", 0)]);
            let mut mismatches = Vec::new();
            let mut embedding_twist = Vec::new();
            for &i in &levels {
                for u in 0..g.n() {
                    for v in u + 1..g.n() {
                        let r = check_twist_identity(&dist, i, u, v)?;
                        let key = match r.verdict {
                            IdentityVerdict::Exact => "exact",
                            IdentityVerdict::HypothesisUnmet => "hypothesis_unmet",
                            IdentityVerdict::Fails => "fails",
                        };
                        *tally.get_mut(key).expect("preset keys") += 1;
                        if r.verdict != IdentityVerdict::Exact {
                            mismatches.push(r);
                        }
                    }
                }
                embedding_twist.push(check_embedding_twist(&dist, i)?);
            }
            let twist_ok = embedding_twist.iter().all(|r| r.is_bijective_and_measure_preserving());
            let verdict = if tally["fails"] > 0 || !twist_ok {
                "fails"
            } else if tally["hypothesis_unmet"] > 0 {
                "hypothesis_unmet"
            } else {
                "holds"
            };
            let result = json!({
                "levels": levels,
                "pairs": tally,
                "mismatches": mismatches,
                "embedding_twist": embedding_twist,
            });
            Ok((verdict.into(), result))
        }
        LemmaCheck::Jensen { degrees, k } => {
            let r = jensen_error_identity(&parse_list("degree", degrees)?, *k)?;
            let verdict = if r.residual <= o.identity_tol { "holds" } else { "fails" };
            Ok((verdict.into(), to_value(&r)))
        }
        LemmaCheck::Sigma { c_u, c_v, d, t, i, deg_u, deg_v } => {
            let inputs = SigmaInputs { c_u: *c_u, c_v: *c_v, d: *d, t: *t, i: *i, deg_u: *deg_u, deg_v: *deg_v };
            let s = sigma_terms(&inputs)?;
            let verdict = if s.total() >= 0.0 { "holds" } else { "fails" };
            let mut result = to_value(&s);
            result["total"] = json!(s.total());
            Ok((verdict.into(), result))
        }
        LemmaCheck::Monotonicity { d, i, grid, decrease_threshold } => {
            let spec = parse_grid(grid)?;
            let all = spec.points();
            let points: Vec<f64> = all.iter().copied().filter(|&c| c * d > *i as f64).collect();
            let r = check_l_monotonicity(*d, *i, &points, decrease_threshold.unwrap_or(0.0))?;
            let ok = r.nonnegative && r.increasing_above_one && r.decreasing_below_one != Some(false);
            let mut result = to_value(&r);
            result["grid"] = json!(spec.to_string());
            result["dropped_outside_domain"] = json!(all.len() - points.len());
            Ok((if ok { "holds" } else { "fails" }.into(), result))
        }
    }
}

fn forest(check: &ForestCheckKind) -> Outcome {
    match check {
        ForestCheckKind::Compare { k, n, d } => {
            let r = forest_counterexample_check(*k, *n, *d)?;
            let smaller = r.bipartite_smaller == Some(true) || r.matched_split_smaller == Some(true);
            let verdict = if smaller { "clique_union_not_minimal" } else { "clique_union_not_beaten" };
            Ok((verdict.into(), to_value(&r)))
        }
        ForestCheckKind::Matched { k, max_n } => {
            let rows = matched_forest_comparisons(*k, *max_n);
            let smaller = rows.iter().any(|r| r.split_count < r.clique_union_count);
            let verdict = if smaller { "clique_union_not_minimal" } else { "clique_union_not_beaten" };
            Ok((verdict.into(), json!({ "k": k, "max_n": max_n, "comparisons": rows })))
        }
        ForestCheckKind::Split { k, n, m } => {
            let r = split_graph_min_check(*k, *n, *m)?;
            let verdict = if r.split_is_minimizer { "split_minimizes" } else { "split_not_minimal" };
            Ok((verdict.into(), to_value(&r)))
        }
    }
}
