use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stats::SampleStats;

pub const RATIO_WARNING: &str = "normalized ratios are not a valid comparison: the propagated \
uncertainty of A/B is dominated by the relative noise of both samples and says nothing about \
which algorithm is better";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioUncertainty {
    pub ratio: f64,
    pub sigma: f64,
    pub warning: String,
}

impl RatioUncertainty {
    /// `"1.00 ± 22.36"`.
    pub fn line(&self) -> String {
        format!("{:.2} ± {:.2}", self.ratio, self.sigma)
    }
}

/// First-order propagation for uncorrelated `A` and `B`:
/// `σ_{A/B} = |A/B| sqrt(σ_A²/A² + σ_B²/B²)`.
///
/// Evaluated as `sqrt(σ_A²/B² + A² σ_B²/B⁴)`, which is the same quantity and
/// stays finite when `A = 0`.
pub fn ratio_uncertainty_raw(mean_a: f64, std_a: f64, mean_b: f64, std_b: f64) -> Result<RatioUncertainty> {
    if mean_b == 0.0 {
        return Err(Error::DivisionByZero("mean of B"));
    }
    let ratio = mean_a / mean_b;
    let b2 = mean_b * mean_b;
    let sigma = (std_a * std_a / b2 + mean_a * mean_a * std_b * std_b / (b2 * b2)).sqrt();
    Ok(RatioUncertainty {
        ratio,
        sigma,
        warning: RATIO_WARNING.to_string(),
    })
}

pub fn ratio_uncertainty(a: &SampleStats, b: &SampleStats) -> Result<RatioUncertainty> {
    ratio_uncertainty_raw(a.mean, a.std, b.mean, b.std)
}
