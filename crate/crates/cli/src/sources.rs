use std::collections::BTreeMap;
use std::fs;

use treemon::graph::enumerate_trees;
use treemon::{Graph, GraphFamilySpec, RootedTree};

use crate::CliError;

fn read_file(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))
}

/// `file:PATH`, a family spec such as `clique_union:k=3,s=4`, or a bare path
/// to an edge-list file.
pub fn load_graph(source: &str) -> Result<Graph, CliError> {
    if let Some(path) = source.strip_prefix("file:") {
        return Graph::parse(&read_file(path)?).map_err(|e| CliError::Input(format!("{path}: {e}")));
    }
    match source.parse::<GraphFamilySpec>() {
        Ok(spec) => spec
            .build()
            .ok_or_else(|| CliError::Validation("the explicit family needs a file: source".into())),
        Err(_) if std::path::Path::new(source).exists() => {
            Graph::parse(&read_file(source)?).map_err(|e| CliError::Input(format!("{source}: {e}")))
        }
        Err(e) => Err(CliError::Validation(e.to_string())),
    }
}

fn params(source: &str, body: &str) -> Result<BTreeMap<String, usize>, CliError> {
    let mut out = BTreeMap::new();
    for kv in body.split(',').filter(|kv| !kv.trim().is_empty()) {
        let (k, v) = kv.split_once('=').ok_or_else(|| CliError::Validation(format!("bad tree spec {source:?}")))?;
        let v = v.trim().parse().map_err(|_| CliError::Validation(format!("bad number in {source:?}")))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

/// `path:t=3`, `star:leaves=3`, `catalog:v=5,i=2`, `file:PATH` or a bare path
/// to an edge list over labels `0..=t`.
pub fn load_tree(source: &str) -> Result<RootedTree, CliError> {
    let from_file = |path: &str| -> Result<RootedTree, CliError> {
        let g = Graph::parse(&read_file(path)?).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
        RootedTree::from_edges(g.edges()).map_err(|e| CliError::Input(format!("{path}: {e}")))
    };
    if let Some(path) = source.strip_prefix("file:") {
        return from_file(path);
    }
    let (tag, body) = source.split_once(':').unwrap_or((source, ""));
    let mut p = params(source, body)?;
    let mut take = |key: &str| p.remove(key).ok_or_else(|| CliError::Validation(format!("{source:?} needs {key}=")));
    let tree = match tag {
        "path" => RootedTree::path(take("t")?),
        "star" => RootedTree::star(take("leaves")?),
        "catalog" => {
            let (v, i) = (take("v")?, take("i")?);
            let trees = enumerate_trees(v).map_err(|e| CliError::Validation(e.to_string()))?;
            let count = trees.len();
            trees
                .into_iter()
                .nth(i)
                .ok_or_else(|| CliError::Validation(format!("catalog has {count} trees on {v} vertices")))?
        }
        _ if std::path::Path::new(source).exists() => return from_file(source),
        _ => return Err(CliError::Validation(format!("unknown tree source {source:?}"))),
    };
    if let Some(extra) = p.keys().next() {
        return Err(CliError::Validation(format!("unexpected key {extra:?} in {source:?}")));
    }
    Ok(tree)
}
