//! Scale-free network generation with a tunable exponent.
//!
//! Networks grow by shifted-linear preferential attachment: a new node links
//! to an existing node `i` with probability proportional to `k_i + c`, which
//! yields a degree tail `P(k) ~ k^-(3 + c/m)`. Choosing `c = m (gamma - 3)`
//! therefore targets exponent `gamma` while the mean degree stays at `~2m`.
//! The grown network is then rewired by stub matching to strip degree
//! correlations without changing any node's degree.

mod price;
mod randomize;
mod rng;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use price::price_generate;
pub use randomize::{randomize_preserving_degrees, MAX_RESTARTS};
pub use rng::{RngSeed, SimRng};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenerationError {
    #[error("gamma = {0} out of range; must be > 2")]
    GammaOutOfRange(f64),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("randomization failed after {restarts} restarts")]
    RandomizationFailed { restarts: usize },
    #[error("degenerate histogram: {0}")]
    DegenerateHistogram(String),
}

/// Attachment shift `c = m (gamma - 3)` realizing tail exponent `gamma`.
pub fn gamma_to_c(gamma: f64, m: usize) -> Result<f64, GenerationError> {
    if !(gamma > 2.0) || !gamma.is_finite() {
        return Err(GenerationError::GammaOutOfRange(gamma));
    }
    if m == 0 {
        return Err(GenerationError::InvalidParams("m must be >= 1".into()));
    }
    Ok(m as f64 * (gamma - 3.0))
}

/// Continuum estimate `(gamma - 1)/(gamma - 2) k_min` of the mean degree of a
/// pure power law. Diagnostic only: the generator deliberately does not follow it.
pub fn expected_avg_degree(gamma: f64, k_min: usize) -> Result<f64, GenerationError> {
    if !(gamma > 2.0) || !gamma.is_finite() {
        return Err(GenerationError::GammaOutOfRange(gamma));
    }
    Ok((gamma - 1.0) / (gamma - 2.0) * k_min as f64)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PriceParams {
    pub n: usize,
    /// Links per new node; also the minimum degree.
    pub m: usize,
    pub gamma: f64,
}

impl PriceParams {
    pub fn new(n: usize, m: usize, gamma: f64) -> Result<Self, GenerationError> {
        let p = PriceParams { n, m, gamma };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), GenerationError> {
        let c = gamma_to_c(self.gamma, self.m)?;
        if self.n < self.m + 1 {
            return Err(GenerationError::InvalidParams(format!(
                "n = {} must be at least m + 1 = {}",
                self.n,
                self.m + 1
            )));
        }
        debug_assert!(c > -(self.m as f64));
        Ok(())
    }

    pub fn c(&self) -> f64 {
        self.m as f64 * (self.gamma - 3.0)
    }

    /// Seed clique plus `m` edges per grown node.
    pub fn expected_edge_count(&self) -> usize {
        self.m * (self.m + 1) / 2 + self.m * (self.n - self.m - 1)
    }
}

/// Least-squares line through `(ln k, ln P(k))` over the degree tail.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PowerLawFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the fit in log space.
    pub residual: f64,
    /// Fitted slope minus the guide slope `-gamma`.
    pub deviation: f64,
    pub points: usize,
}

/// Fits the tail of a degree histogram, `k_min` being its smallest populated
/// degree. The tail is the contiguous run of populated degrees starting at
/// the first one `>= 2 k_min` and ending before the first unpopulated degree;
/// the sparse far tail of a finite sample, where most degrees occur once or
/// not at all, would otherwise flatten the slope. Diagnostic only.
pub fn checked_power_law_fit(
    hist: &BTreeMap<usize, f64>,
    gamma: f64,
) -> Result<PowerLawFit, GenerationError> {
    let mut populated = hist.iter().filter(|(&k, &p)| k > 0 && p > 0.0);
    let (&k_min, _) = populated
        .next()
        .ok_or_else(|| GenerationError::DegenerateHistogram("empty histogram".into()))?;
    let mut pts: Vec<(f64, f64)> = Vec::new();
    let mut prev: Option<usize> = None;
    for (&k, &p) in hist.range(2 * k_min..).filter(|(_, &p)| p > 0.0) {
        if prev.is_some_and(|q| k != q + 1) {
            break;
        }
        pts.push(((k as f64).ln(), p.ln()));
        prev = Some(k);
    }
    if pts.len() < 3 {
        return Err(GenerationError::DegenerateHistogram(format!(
            "{} distinct tail degrees, need 3",
            pts.len()
        )));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (pts
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    Ok(PowerLawFit {
        slope,
        intercept,
        residual,
        deviation: slope + gamma,
        points: pts.len(),
    })
}
