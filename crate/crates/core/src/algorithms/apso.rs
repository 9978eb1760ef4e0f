//! Accelerated PSO: `x ← x + β0 (g* − x) + α ε`, no velocity state.
//!
//! This is the firefly move with `γ = 0` and the attractor replaced by the
//! global best. `α` decays geometrically per sweep.

use serde::{Deserialize, Serialize};

use crate::algorithms::{check_nonnegative, check_population};
use crate::budget::Evaluator;
use crate::error::{check_range, Result};
use crate::population::Population;
use crate::rng::RngStream;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ApsoConfig {
    pub beta0: f64,
    pub alpha: f64,
    /// Per-sweep multiplier on `alpha`.
    pub alpha_decay: f64,
    pub n: usize,
}

impl Default for ApsoConfig {
    fn default() -> Self {
        Self {
            beta0: 0.5,
            alpha: 0.2,
            alpha_decay: 0.97,
            n: 20,
        }
    }
}

impl ApsoConfig {
    pub fn validate(&self) -> Result<()> {
        check_population("n", self.n, 1, "[1, inf)")?;
        check_nonnegative("beta0", self.beta0)?;
        check_nonnegative("alpha", self.alpha)?;
        check_range("alpha_decay", self.alpha_decay, 0.0, 1.0, "[0, 1]")
    }

    pub fn alpha_at(&self, sweep: usize) -> f64 {
        self.alpha * self.alpha_decay.powi(sweep as i32)
    }
}

pub fn apso_move(x: &[f64], global_best: &[f64], beta0: f64, alpha: f64, eps: &[f64]) -> Vec<f64> {
    (0..x.len())
        .map(|k| x[k] + beta0 * (global_best[k] - x[k]) + alpha * eps[k])
        .collect()
}

/// One sweep against the global best as it stood at the start of the sweep.
pub fn apso_step(pop: &mut Population, cfg: &ApsoConfig, eval: &mut Evaluator<'_>, rng: &mut RngStream) -> Result<()> {
    let problem = eval.problem();
    let d = problem.dimension();
    let g = pop.global_best().expect("population has a global best").to_vec();
    let alpha = cfg.alpha_at(pop.iteration);
    for i in 0..pop.len() {
        let eps = rng.gaussian_vec(d);
        let agent = &mut pop.agents[i];
        agent.position = apso_move(&agent.position, &g, cfg.beta0, alpha, &eps);
        problem.clamp_in_place(&mut agent.position);
        let value = eval.evaluate_agent(agent)?;
        let pos = agent.position.clone();
        pop.offer_best(&pos, value);
    }
    pop.iteration += 1;
    Ok(())
}
