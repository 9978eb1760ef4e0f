use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Mean and sample standard deviation (divisor `n − 1`) of repeated runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleStats {
    pub mean: f64,
    pub std: f64,
    pub n: usize,
    pub values: Vec<f64>,
    /// Evaluation budget the values were measured at, when known.
    #[serde(default)]
    pub budget: Option<u64>,
}

impl SampleStats {
    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = Some(budget);
        self
    }

    /// Summary statistics without raw values, e.g. for quoted results.
    pub fn from_moments(mean: f64, std: f64, n: usize) -> Self {
        Self {
            mean,
            std,
            n,
            values: Vec::new(),
            budget: None,
        }
    }

    pub fn pm(&self) -> String {
        format_pm(self.mean, self.std)
    }
}

pub fn summarize(values: &[f64]) -> Result<SampleStats> {
    let n = values.len();
    if n < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: n });
    }
    if values.iter().any(|v| v.is_nan()) {
        return Err(Error::NotANumber);
    }
    // Sorting makes the floating-point sums independent of input order.
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mean = sorted.iter().sum::<f64>() / n as f64;
    let ss: f64 = sorted.iter().map(|v| (v - mean) * (v - mean)).sum();
    Ok(SampleStats {
        mean,
        std: (ss / (n - 1) as f64).sqrt(),
        n,
        values: values.to_vec(),
        budget: None,
    })
}

fn significant(v: f64, digits: i32) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (digits - 1 - magnitude).max(0) as usize;
    let s = format!("{v:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// `"μ ± σ"` with four significant digits and trailing zeros dropped.
pub fn format_pm(mean: f64, std: f64) -> String {
    format!("{} ± {}", significant(mean, 4), significant(std, 4))
}

/// `n` values whose sample mean and standard deviation are exactly
/// `mean` and `std` up to rounding: Gaussian draws, standardized, rescaled.
pub fn synthetic_sample(mean: f64, std: f64, n: usize, rng: &mut RngStream) -> Vec<f64> {
    assert!(n >= 2);
    let z = rng.gaussian_vec(n);
    let m = z.iter().sum::<f64>() / n as f64;
    let s = (z.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (n - 1) as f64).sqrt();
    z.iter().map(|v| mean + std * (v - m) / s).collect()
}
