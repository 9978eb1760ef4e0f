//! Differential evolution, `DE/rand/1` with binomial or exponential
//! crossover and greedy one-to-one selection.
//!
//! Updates are synchronous: trials for the whole sweep are built from the
//! population as it stood at the start of the sweep.

use serde::{Deserialize, Serialize};

use crate::algorithms::check_population;
use crate::budget::Evaluator;
use crate::error::{check_range, Error, Result};
use crate::operators::{crossover_binomial, crossover_exponential, mutate_de, select_greedy, CrossoverScheme, Selected};
use crate::population::Population;
use crate::problem::Problem;
use crate::rng::RngStream;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DeConfig {
    /// Differential weight, in `[0, 2]`.
    #[serde(rename = "F")]
    pub f: f64,
    /// Crossover probability, in `[0, 1]`.
    #[serde(rename = "C_r")]
    pub cr: f64,
    pub scheme: CrossoverScheme,
    pub n: usize,
}

impl Default for DeConfig {
    fn default() -> Self {
        Self {
            f: 0.5,
            cr: 0.9,
            scheme: CrossoverScheme::Binomial,
            n: 20,
        }
    }
}

impl DeConfig {
    pub fn validate(&self) -> Result<()> {
        check_range("F", self.f, 0.0, 2.0, "[0, 2]")?;
        check_range("C_r", self.cr, 0.0, 1.0, "[0, 1]")?;
        check_population("n", self.n, 4, "[4, inf)")?;
        if self.scheme == CrossoverScheme::GaUniform {
            return Err(Error::config("scheme", "ga_uniform", "{binomial, exponential}"));
        }
        Ok(())
    }
}

/// Builds the clamped trial vector for agent `i`.
///
/// `r, p, q` are the first three entries of a random permutation of the
/// population indices with `i` removed.
pub fn de_trial(positions: &[Vec<f64>], i: usize, cfg: &DeConfig, problem: &Problem, rng: &mut RngStream) -> Result<Vec<f64>> {
    let n = positions.len();
    if n < 4 {
        return Err(Error::config("n", n, "[4, inf)"));
    }
    let picks = rng.distinct_excluding(n, i, 3);
    let (r, p, q) = (picks[0], picks[1], picks[2]);
    let mutant = mutate_de(&positions[r], &positions[p], &positions[q], cfg.f)?;
    let mut trial = match cfg.scheme {
        CrossoverScheme::Exponential => crossover_exponential(&positions[i], &mutant, cfg.cr, rng),
        _ => crossover_binomial(&positions[i], &mutant, cfg.cr, rng),
    };
    problem.clamp_in_place(&mut trial);
    Ok(trial)
}

pub fn de_step(pop: &mut Population, cfg: &DeConfig, eval: &mut Evaluator<'_>, rng: &mut RngStream) -> Result<()> {
    let problem = eval.problem();
    let positions = pop.positions();
    for i in 0..pop.len() {
        let trial = de_trial(&positions, i, cfg, problem, rng)?;
        let value = eval.evaluate(&trial)?;
        let agent = &mut pop.agents[i];
        if select_greedy(value, agent.value())? == Selected::Candidate {
            agent.position = trial;
            agent.fitness = Some(value);
        }
    }
    pop.refresh_best();
    pop.iteration += 1;
    Ok(())
}
