use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::sigma::l_ratio;
use super::LemmaError;

/// Geometric grid of `c` values: `lo · 10^(k / per_decade)` up to `hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub per_decade: usize,
}

impl Default for GridSpec {
    fn default() -> GridSpec {
        GridSpec { lo: 0.25, hi: 1e4, per_decade: 1000 }
    }
}

impl GridSpec {
    pub fn points(&self) -> Vec<f64> {
        let steps = ((self.hi / self.lo).log10() * self.per_decade as f64 + 1e-9).floor() as usize;
        (0..=steps).map(|k| self.lo * 10f64.powf(k as f64 / self.per_decade as f64)).collect()
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "geom:lo={},hi={},per_decade={}", self.lo, self.hi, self.per_decade)
    }
}

impl FromStr for GridSpec {
    type Err = LemmaError;

    fn from_str(s: &str) -> Result<GridSpec, LemmaError> {
        let body = s.strip_prefix("geom:").ok_or_else(|| LemmaError::BadGrid(format!("{s:?} must start with geom:")))?;
        let mut spec = GridSpec::default();
        for part in body.split(',').filter(|p| !p.is_empty()) {
            let (key, value) = part.split_once('=').ok_or_else(|| LemmaError::BadGrid(format!("{part:?} is not key=value")))?;
            let bad = || LemmaError::BadGrid(format!("bad value for {key}: {value:?}"));
            match key.trim() {
                "lo" => spec.lo = value.trim().parse().map_err(|_| bad())?,
                "hi" => spec.hi = value.trim().parse().map_err(|_| bad())?,
                "per_decade" => spec.per_decade = value.trim().parse().map_err(|_| bad())?,
                other => return Err(LemmaError::BadGrid(format!("unknown key {other:?}"))),
            }
        }
        if !(spec.lo > 0.0 && spec.lo.is_finite() && spec.hi.is_finite()) {
            return Err(LemmaError::BadGrid("lo must be positive and both ends finite".into()));
        }
        if spec.hi < spec.lo || spec.per_decade == 0 {
            return Err(LemmaError::EmptyGrid);
        }
        Ok(spec)
    }
}

/// A grid pair where `Σ¹ + Σ² - Σ³ < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Violation {
    pub c_u: f64,
    pub c_v: f64,
    pub i: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct D0Report {
    pub t: usize,
    pub epsilon: f64,
    pub grid: String,
    pub points: usize,
    /// Smallest integer `d` found where every grid pair is non-negative.
    pub d0: u64,
    /// `d0 / t^4`.
    pub constant_t4: f64,
    /// `d0 / t^5`.
    pub constant_t5: f64,
    /// A violating pair at `d0 - 1`, showing the threshold is tight on the grid.
    pub witness_below: Option<Violation>,
    /// Same search with the `Σ²` constant halved to `1/(16t)`.
    pub d0_half_sigma2: u64,
    /// Pairs at `d0` with ratio below `1 + ε`, between `1 + ε` and `d`, above `d`.
    pub regime_pairs: [u64; 3],
}

struct Probe<'a> {
    t: usize,
    cs: &'a [f64],
    log_cs: Vec<f64>,
    sigma2_scale: f64,
}

impl Probe<'_> {
    fn first_violation(&self, d: f64) -> Option<Violation> {
        let t = self.t as f64;
        let s3_scale = 8.0 * t * t / d;
        let s3_floor = s3_scale * 8.0 * t / d;
        let s2_scale = self.sigma2_scale / (8.0 * t * d);
        let mut g = vec![0.0; self.cs.len()];
        for i in 1..self.t {
            for (slot, &c) in g.iter_mut().zip(self.cs) {
                *slot = l_ratio(c, d, i as f64) / 8.0;
            }
            for a in 0..self.cs.len() {
                for b in a..self.cs.len() {
                    // grid is ascending, so c_b d is the larger degree
                    let value = g[a] + g[b] + s2_scale / self.cs[b]
                        - s3_scale * (self.log_cs[b] - self.log_cs[a])
                        - s3_floor;
                    if value < 0.0 {
                        return Some(Violation { c_u: self.cs[a], c_v: self.cs[b], i, value });
                    }
                }
            }
        }
        None
    }

    /// Exponential search from `4t`, then bisection.
    fn threshold(&self) -> Result<u64, LemmaError> {
        let start = 4 * self.t as u64;
        let mut hi = start;
        while self.first_violation(hi as f64).is_some() {
            hi = hi.checked_mul(2).filter(|&h| h < 1 << 50).ok_or_else(|| {
                LemmaError::Precondition("no threshold below 2^50".into())
            })?;
        }
        if hi == start {
            return Ok(start);
        }
        let mut lo = hi / 2;
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.first_violation(mid as f64).is_some() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(hi)
    }
}

/// Smallest `d` such that `Σ¹ + Σ² - Σ³ >= 0` for every pair of grid points
/// with `c >= 1/4` and every level `1 <= i < t`. Degrees are coupled to the
/// grid as `d(u) = c_u d`. Grid certification is a heuristic, not a proof.
pub fn empirical_d0(t: usize, grid: &GridSpec) -> Result<D0Report, LemmaError> {
    if t < 2 {
        return Err(LemmaError::Precondition("need t >= 2".into()));
    }
    let cs: Vec<f64> = grid.points().into_iter().filter(|&c| c >= 0.25).collect();
    if cs.is_empty() {
        return Err(LemmaError::EmptyGrid);
    }
    let log_cs: Vec<f64> = cs.iter().map(|c| c.ln()).collect();
    let probe = Probe { t, cs: &cs, log_cs: log_cs.clone(), sigma2_scale: 1.0 };
    let d0 = probe.threshold()?;
    let witness_below = if d0 > 4 * t as u64 { probe.first_violation((d0 - 1) as f64) } else { None };
    let half = Probe { t, cs: &cs, log_cs, sigma2_scale: 0.5 };
    let d0_half_sigma2 = half.threshold()?;

    let epsilon = 1.0 / (256.0 * (t as f64).powi(3));
    let mut regime_pairs = [0u64; 3];
    for a in 0..cs.len() {
        for b in a..cs.len() {
            let ratio = cs[b] / cs[a];
            let slot = if ratio < 1.0 + epsilon {
                0
            } else if ratio <= d0 as f64 {
                1
            } else {
                2
            };
            regime_pairs[slot] += 1;
        }
    }
    let tf = t as f64;
    Ok(D0Report {
        t,
        epsilon,
        grid: grid.to_string(),
        points: cs.len(),
        d0,
        constant_t4: d0 as f64 / tf.powi(4),
        constant_t5: d0 as f64 / tf.powi(5),
        witness_below,
        d0_half_sigma2,
        regime_pairs,
    })
}
