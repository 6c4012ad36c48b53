use serde::Serialize;

use super::LemmaError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JensenReport {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

/// Both sides of the exact Jensen gap for `x log(x - k)` over a degree
/// sequence: `Σ d_i/(n d) log(d_i - k) - log(d - k)` against
/// `(1/n) Σ [c_i log((c_i d - k)/(d - k)) - (c_i - 1) d/(d - k)]`.
pub fn jensen_error_identity(degrees: &[u64], k: u64) -> Result<JensenReport, LemmaError> {
    if degrees.is_empty() {
        return Err(LemmaError::Precondition("empty degree sequence".into()));
    }
    if let Some(&bad) = degrees.iter().find(|&&di| di <= k) {
        return Err(LemmaError::Precondition(format!("degree {bad} does not exceed k = {k}")));
    }
    let n = degrees.len() as f64;
    let d = degrees.iter().sum::<u64>() as f64 / n;
    let k = k as f64;
    let lhs = degrees.iter().map(|&di| di as f64 / (n * d) * (di as f64 - k).ln()).sum::<f64>() - (d - k).ln();
    let rhs = degrees
        .iter()
        .map(|&di| {
            let c = di as f64 / d;
            c * ((c * d - k) / (d - k)).ln() - (c - 1.0) * d / (d - k)
        })
        .sum::<f64>()
        / n;
    Ok(JensenReport { lhs, rhs, residual: lhs - rhs })
}
