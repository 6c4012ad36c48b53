use serde_json::Value;

use crate::{CliError, Format, Report};

/// Dotted-path leaves of a JSON tree in key order; arrays are indexed.
fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match value {
        Value::Object(map) => map.iter().for_each(|(k, v)| flatten(&join(k), v, out)),
        Value::Array(items) => items.iter().enumerate().for_each(|(i, v)| flatten(&join(&i.to_string()), v, out)),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// JSON is pretty-printed; text is one `key: value` line per leaf; CSV is a
/// header row of leaf paths and one value row.
pub fn render(report: &Report, format: Format) -> Result<String, CliError> {
    let value = serde_json::to_value(report).map_err(|e| CliError::Internal(e.to_string()))?;
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&value).map_err(|e| CliError::Internal(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Text => {
            let mut leaves = Vec::new();
            flatten("", &value, &mut leaves);
            Ok(leaves.iter().map(|(k, v)| format!("{k}: {v}\n")).collect())
        }
        Format::Csv => {
            let mut leaves = Vec::new();
            flatten("", &value, &mut leaves);
            let header: Vec<String> = leaves.iter().map(|(k, _)| csv_field(k)).collect();
            let row: Vec<String> = leaves.iter().map(|(_, v)| csv_field(v)).collect();
            Ok(format!("{}\n{}\n", header.join(","), row.join(",")))
        }
    }
}
