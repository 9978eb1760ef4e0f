use serde::{Deserialize, Serialize};

use crate::error::{check_range, Result};
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossoverScheme {
    Binomial,
    Exponential,
    /// Single-point GA recombination at a uniformly drawn cut.
    GaUniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossoverParams {
    #[serde(rename = "C_r")]
    pub rate: f64,
    pub scheme: CrossoverScheme,
}

impl CrossoverParams {
    pub fn new(rate: f64, scheme: CrossoverScheme) -> Result<Self> {
        check_range("C_r", rate, 0.0, 1.0, "[0, 1]")?;
        Ok(Self { rate, scheme })
    }
}

/// Binomial (uniform) crossover with one forced mutant component.
///
/// Every component draws one uniform; component `k` comes from `mutant`
/// when the draw is below `rate` or when `k` is the forced index.
pub fn crossover_binomial(target: &[f64], mutant: &[f64], rate: f64, rng: &mut RngStream) -> Vec<f64> {
    debug_assert_eq!(target.len(), mutant.len());
    let d = target.len();
    let forced = rng.index(d);
    (0..d)
        .map(|k| {
            let take = rng.uniform() < rate;
            if take || k == forced {
                mutant[k]
            } else {
                target[k]
            }
        })
        .collect()
}

/// Exponential crossover: one circular block of mutant components.
///
/// The block starts at a uniform index and has length `L` with
/// `P(L >= k) = rate^(k-1)`, capped at the dimension.
pub fn crossover_exponential(target: &[f64], mutant: &[f64], rate: f64, rng: &mut RngStream) -> Vec<f64> {
    debug_assert_eq!(target.len(), mutant.len());
    let d = target.len();
    let start = rng.index(d);
    let mut len = 1;
    while len < d && rng.uniform() < rate {
        len += 1;
    }
    let mut out = target.to_vec();
    for k in 0..len {
        let idx = (start + k) % d;
        out[idx] = mutant[idx];
    }
    out
}

/// Single-point recombination. Both offspring are returned.
pub fn crossover_ga(parent1: &[f64], parent2: &[f64], rng: &mut RngStream) -> (Vec<f64>, Vec<f64>) {
    debug_assert_eq!(parent1.len(), parent2.len());
    let d = parent1.len();
    if d < 2 {
        return (parent1.to_vec(), parent2.to_vec());
    }
    let cut = 1 + rng.index(d - 1);
    let mut c1 = parent1[..cut].to_vec();
    c1.extend_from_slice(&parent2[cut..]);
    let mut c2 = parent2[..cut].to_vec();
    c2.extend_from_slice(&parent1[cut..]);
    (c1, c2)
}

/// Dispatches on the configured scheme; the GA scheme keeps the first child.
pub fn crossover(target: &[f64], mutant: &[f64], params: &CrossoverParams, rng: &mut RngStream) -> Vec<f64> {
    match params.scheme {
        CrossoverScheme::Binomial => crossover_binomial(target, mutant, params.rate, rng),
        CrossoverScheme::Exponential => crossover_exponential(target, mutant, params.rate, rng),
        CrossoverScheme::GaUniform => crossover_ga(target, mutant, rng).0,
    }
}
