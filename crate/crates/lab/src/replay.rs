//! Replay verification: recompute a JSON report from its config echo and
//! per-trial records and require an exact match.

use serde_json::Value;

use crate::error::{LabError, Result};
use crate::experiments;
use crate::report::{parse_json_report, Report};

/// Rebuilds the report in `text` and checks it equals the original,
/// returning the rebuilt report.
pub fn verify(text: &str) -> Result<Report> {
    let parsed = parse_json_report(text)?;
    let records = parsed
        .per_trial
        .as_ref()
        .ok_or_else(|| LabError::Report("no per-trial records; rerun with --per-trial".into()))?;
    let rebuilt = experiments::replay(&parsed.config, records)?;
    let value = rebuilt.to_json_value();
    if let Some(key) = first_difference(&parsed.document, &value) {
        return Err(LabError::ReplayMismatch(format!("recomputed report differs at {key}")));
    }
    Ok(rebuilt)
}

fn first_difference(a: &Value, b: &Value) -> Option<String> {
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            for (k, va) in x {
                match y.get(k) {
                    None => return Some(format!("/{k} (missing)")),
                    Some(vb) => {
                        if let Some(rest) = first_difference(va, vb) {
                            return Some(format!("/{k}{rest}"));
                        }
                    }
                }
            }
            y.keys().find(|k| !x.contains_key(*k)).map(|k| format!("/{k} (extra)"))
        }
        (Value::Array(x), Value::Array(y)) => {
            if x.len() != y.len() {
                return Some(format!(" (length {} vs {})", x.len(), y.len()));
            }
            x.iter().zip(y).enumerate().find_map(|(i, (va, vb))| first_difference(va, vb).map(|r| format!("/{i}{r}")))
        }
        _ => (a != b).then(|| format!(" ({a} vs {b})")),
    }
}
