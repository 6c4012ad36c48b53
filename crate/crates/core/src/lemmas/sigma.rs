use serde::Serialize;

use super::LemmaError;

/// `L(c)/c` with `L(c) = c log((cd - i)/(d - i)) - (c - 1) d/(d - i)`.
///
/// Written via `ln_1p` so values near `c = 1` keep their precision.
pub fn l_ratio(c: f64, d: f64, i: f64) -> f64 {
    let scale = d / (d - i);
    ((c - 1.0) * scale).ln_1p() - (c - 1.0) / c * scale
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SigmaInputs {
    pub c_u: f64,
    pub c_v: f64,
    pub d: f64,
    pub t: usize,
    pub i: usize,
    pub deg_u: f64,
    pub deg_v: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SigmaTriple {
    pub sigma1: f64,
    pub sigma2: f64,
    pub sigma3: f64,
    pub inputs: SigmaInputs,
}

impl SigmaTriple {
    /// `Σ¹ + Σ² - Σ³`.
    pub fn total(&self) -> f64 {
        self.sigma1 + self.sigma2 - self.sigma3
    }
}

/// The three per-pair terms whose sum must be non-negative.
pub fn sigma_terms(inputs: &SigmaInputs) -> Result<SigmaTriple, LemmaError> {
    let SigmaInputs { c_u, c_v, d, t, i, deg_u, deg_v } = *inputs;
    let i_f = i as f64;
    if !(c_u * d > i_f && c_v * d > i_f) {
        return Err(LemmaError::Precondition(format!("need c·d > {i} for both endpoints")));
    }
    if t == 0 || deg_u <= 0.0 || deg_v <= 0.0 || d <= i_f {
        return Err(LemmaError::Precondition("need t >= 1, positive degrees and d > i".into()));
    }
    let t = t as f64;
    let sigma1 = (l_ratio(c_v, d, i_f) + l_ratio(c_u, d, i_f)) / 8.0;
    let sigma2 = (1.0 / deg_u).min(1.0 / deg_v) / (8.0 * t);
    let sigma3 = 8.0 * t * t / d * ((deg_u / deg_v).ln().abs() + 8.0 * t / d);
    Ok(SigmaTriple { sigma1, sigma2, sigma3, inputs: *inputs })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LMonotonicityReport {
    pub d: f64,
    pub i: usize,
    pub points: usize,
    /// `L(c)/c >= 0` on every grid point with `c >= i/(d - i)`.
    pub nonnegative: bool,
    /// Grid points below `i/(d - i)` where the value is negative; the
    /// function tends to `-inf` as `c -> i/d`.
    pub negative_below_domain: usize,
    pub min_value: f64,
    /// Strictly increasing on grid points with `c >= 1`.
    pub increasing_above_one: bool,
    /// Strictly decreasing on `[i/(d - i), 1]`; `None` when `d` is below the
    /// threshold and the claim is not tested.
    pub decreasing_below_one: Option<bool>,
}

fn strictly(values: &[f64], increasing: bool) -> bool {
    values.windows(2).all(|w| if increasing { w[1] > w[0] } else { w[1] < w[0] })
}

/// Evaluates `L(c)/c` on a grid and checks sign and monotonicity.
pub fn check_l_monotonicity(d: f64, i: usize, grid: &[f64], decrease_threshold: f64) -> Result<LMonotonicityReport, LemmaError> {
    let i_f = i as f64;
    if d <= i_f {
        return Err(LemmaError::Precondition(format!("need d > {i}")));
    }
    if let Some(&c) = grid.iter().find(|&&c| c * d <= i_f) {
        return Err(LemmaError::Precondition(format!("grid point {c} has c·d <= {i}")));
    }
    let mut grid = grid.to_vec();
    grid.sort_by(f64::total_cmp);
    let knee = i_f / (d - i_f);
    let values: Vec<f64> = grid.iter().map(|&c| l_ratio(c, d, i_f)).collect();
    let in_domain = |c: f64| c >= knee;
    let nonnegative = grid.iter().zip(&values).filter(|(&c, _)| in_domain(c)).all(|(_, &v)| v >= 0.0);
    let negative_below_domain = grid.iter().zip(&values).filter(|(&c, &v)| !in_domain(c) && v < 0.0).count();
    let min_value = values.iter().copied().fold(f64::INFINITY, f64::min);
    let above: Vec<f64> = grid.iter().zip(&values).filter(|(&c, _)| c >= 1.0).map(|(_, &v)| v).collect();
    let below: Vec<f64> = grid.iter().zip(&values).filter(|(&c, _)| in_domain(c) && c <= 1.0).map(|(_, &v)| v).collect();
    Ok(LMonotonicityReport {
        d,
        i,
        points: grid.len(),
        nonnegative,
        negative_below_domain,
        min_value,
        increasing_above_one: strictly(&above, true),
        decreasing_below_one: (d >= decrease_threshold).then(|| strictly(&below, false)),
    })
}
