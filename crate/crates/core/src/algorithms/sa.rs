//! Simulated annealing, the `β0 = 0` limit of the firefly move.
//!
//! Proposal `x + α ε` with Gaussian `ε`, Metropolis acceptance. The run starts
//! from the best of `n` uniform samples with `T0` set to the spread of their
//! values. Each sweep is `n` proposals, after which `T ← cooling · T` and
//! `α ← alpha_decay · α`.

use serde::{Deserialize, Serialize};

use crate::algorithms::{check_nonnegative, check_population};
use crate::budget::Evaluator;
use crate::error::{check_range, Error, Result};
use crate::population::{Agent, Population};
use crate::rng::RngStream;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SaConfig {
    pub alpha: f64,
    pub alpha_decay: f64,
    pub cooling: f64,
    pub n: usize,
}

impl Default for SaConfig {
    fn default() -> Self {
        Self {
            alpha: 0.5,
            alpha_decay: 0.98,
            cooling: 0.95,
            n: 20,
        }
    }
}

impl SaConfig {
    pub fn validate(&self) -> Result<()> {
        check_population("n", self.n, 2, "[2, inf)")?;
        check_nonnegative("alpha", self.alpha)?;
        check_range("alpha_decay", self.alpha_decay, 0.0, 1.0, "[0, 1]")?;
        if !(self.cooling > 0.0 && self.cooling < 1.0) {
            return Err(Error::config("cooling", self.cooling, "(0, 1)"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SaState {
    pub current: Agent,
    pub temperature: f64,
    pub alpha: f64,
}

impl SaState {
    /// Starts from the best initial sample, `T0 = max − min` of the sample
    /// values (1 if they all coincide).
    pub fn from_population(pop: &Population, cfg: &SaConfig) -> Self {
        let values = pop.values();
        let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let spread = max - min;
        let best = pop.best_index().expect("non-empty population");
        Self {
            current: pop.agents[best].clone(),
            temperature: if spread > 0.0 && spread.is_finite() { spread } else { 1.0 },
            alpha: cfg.alpha,
        }
    }

    /// `n` Metropolis steps followed by one cooling step.
    pub fn sweep(&mut self, cfg: &SaConfig, eval: &mut Evaluator<'_>, rng: &mut RngStream) -> Result<()> {
        for _ in 0..cfg.n {
            sa_step(&mut self.current, self.temperature, self.alpha, eval, rng)?;
        }
        self.temperature *= cfg.cooling;
        self.alpha *= cfg.alpha_decay;
        Ok(())
    }
}

/// `x + α ε` with one Gaussian vector drawn from `rng`.
pub fn sa_proposal(x: &[f64], alpha: f64, rng: &mut RngStream) -> Vec<f64> {
    let eps = rng.gaussian_vec(x.len());
    let mut y = x.to_vec();
    for k in 0..y.len() {
        y[k] += alpha * eps[k];
    }
    y
}

/// Metropolis acceptance probability for an objective change `delta`.
pub fn metropolis_probability(delta: f64, temperature: f64) -> f64 {
    if delta <= 0.0 {
        1.0
    } else {
        (-delta / temperature).exp()
    }
}

/// One proposal and accept/reject. Returns whether the move was taken.
pub fn sa_step(
    state: &mut Agent,
    temperature: f64,
    alpha: f64,
    eval: &mut Evaluator<'_>,
    rng: &mut RngStream,
) -> Result<bool> {
    if !(temperature > 0.0) {
        return Err(Error::config("temperature", temperature, "(0, inf)"));
    }
    let problem = eval.problem();
    let mut proposal = sa_proposal(&state.position, alpha, rng);
    problem.clamp_in_place(&mut proposal);
    let value = eval.evaluate(&proposal)?;
    let delta = value - state.value();
    let accept = delta <= 0.0 || rng.uniform() < metropolis_probability(delta, temperature);
    if accept {
        state.position = proposal;
        state.fitness = Some(value);
    }
    Ok(accept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::problem::Problem;

    #[test]
    fn acceptance_probabilities() {
        assert_eq!(metropolis_probability(-3.0, 0.1), 1.0);
        assert_eq!(metropolis_probability(0.0, 0.1), 1.0);
        assert!((metropolis_probability(2.0, 2.0) - (-1.0f64).exp()).abs() < 1e-15);
        assert!((metropolis_probability(2.0, 2.0) - 0.3679).abs() < 1e-4);
        assert!(metropolis_probability(1.0, 1e-6) < 1e-300);
    }

    #[test]
    fn downhill_always_accepted() {
        let p = Problem::cube("lin", 1, -10.0, 10.0, |x| x[0]).unwrap();
        let mut ev = Evaluator::new(&p, Budget::new(1000));
        let mut rng = RngStream::new(8);
        for _ in 0..200 {
            let mut a = Agent::with_fitness(vec![5.0], 5.0);
            let mut probe = rng.clone();
            let prop = sa_proposal(&a.position, 1.0, &mut probe);
            let accepted = sa_step(&mut a, 1e-9, 1.0, &mut ev, &mut rng).unwrap();
            if prop[0] < 5.0 {
                assert!(accepted);
            } else {
                assert!(!accepted);
            }
        }
    }

    #[test]
    fn temperature_must_be_positive() {
        let p = Problem::cube("lin", 1, -1.0, 1.0, |x| x[0]).unwrap();
        let mut ev = Evaluator::new(&p, Budget::new(10));
        let mut a = Agent::with_fitness(vec![0.0], 0.0);
        assert!(sa_step(&mut a, 0.0, 0.1, &mut ev, &mut RngStream::new(1)).is_err());
    }
}
