//! Firefly algorithm.
//!
//! Pairwise move towards a brighter firefly `j`:
//! `x_i ← x_i + β0 exp(−γ r_ij²) (x_j − x_i) + α ε`, `ε ~ N(0, I)`.
//!
//! A sweep visits every `i` and, in index order, every `j` that was brighter
//! at the start of the sweep, applying the attraction terms in place. The
//! randomization term is added once per agent per sweep and the agent is
//! evaluated once after its inner loop, so a sweep costs exactly `n`
//! evaluations. With a single brighter neighbour the agent's proposal is
//! exactly [`fa_move`].

use serde::{Deserialize, Serialize};

use crate::algorithms::{check_nonnegative, check_population};
use crate::budget::Evaluator;
use crate::error::{check_range, Result};
use crate::population::Population;
use crate::rng::RngStream;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FaConfig {
    /// Attractiveness at zero distance.
    pub beta0: f64,
    /// Light absorption coefficient.
    pub gamma: f64,
    /// Randomization scale.
    pub alpha: f64,
    /// Per-sweep multiplier on `alpha`.
    pub alpha_decay: f64,
    pub n: usize,
}

impl Default for FaConfig {
    fn default() -> Self {
        Self {
            beta0: 1.0,
            gamma: 0.1,
            alpha: 0.2,
            alpha_decay: 0.97,
            n: 20,
        }
    }
}

impl FaConfig {
    pub fn validate(&self) -> Result<()> {
        check_population("n", self.n, 1, "[1, inf)")?;
        check_nonnegative("beta0", self.beta0)?;
        check_nonnegative("gamma", self.gamma)?;
        check_nonnegative("alpha", self.alpha)?;
        check_range("alpha_decay", self.alpha_decay, 0.0, 1.0, "[0, 1]")
    }

    pub fn alpha_at(&self, sweep: usize) -> f64 {
        self.alpha * self.alpha_decay.powi(sweep as i32)
    }
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn attraction(x_i: &[f64], x_j: &[f64], beta0: f64, gamma: f64) -> f64 {
    beta0 * (-gamma * squared_distance(x_i, x_j)).exp()
}

/// The full pairwise move with its Gaussian draw supplied.
pub fn fa_move(x_i: &[f64], x_j: &[f64], beta0: f64, gamma: f64, alpha: f64, eps: &[f64]) -> Vec<f64> {
    let b = attraction(x_i, x_j, beta0, gamma);
    (0..x_i.len())
        .map(|k| x_i[k] + b * (x_j[k] - x_i[k]) + alpha * eps[k])
        .collect()
}

/// Proposal for one agent given the brighter fireflies it is drawn to.
///
/// Attractions are applied in sequence, each using the distance from the
/// partially moved position; then one Gaussian vector is drawn from `rng`
/// and scaled by `alpha`. Zero-strength attractions are skipped.
pub fn fa_agent_proposal<'a>(
    x_i: &[f64],
    brighter: impl IntoIterator<Item = &'a [f64]>,
    beta0: f64,
    gamma: f64,
    alpha: f64,
    rng: &mut RngStream,
) -> Vec<f64> {
    let mut y = x_i.to_vec();
    for x_j in brighter {
        let b = attraction(&y, x_j, beta0, gamma);
        if b != 0.0 {
            for k in 0..y.len() {
                y[k] += b * (x_j[k] - y[k]);
            }
        }
    }
    let eps = rng.gaussian_vec(y.len());
    for k in 0..y.len() {
        y[k] += alpha * eps[k];
    }
    y
}

pub fn fa_step(pop: &mut Population, cfg: &FaConfig, eval: &mut Evaluator<'_>, rng: &mut RngStream) -> Result<()> {
    let problem = eval.problem();
    let alpha = cfg.alpha_at(pop.iteration);
    let brightness = pop.values();
    for i in 0..pop.len() {
        let brighter: Vec<usize> = (0..pop.len()).filter(|&j| brightness[j] < brightness[i]).collect();
        let proposal = {
            let attractors = brighter.iter().map(|&j| pop.agents[j].position.as_slice());
            fa_agent_proposal(&pop.agents[i].position, attractors, cfg.beta0, cfg.gamma, alpha, rng)
        };
        let agent = &mut pop.agents[i];
        agent.position = proposal;
        problem.clamp_in_place(&mut agent.position);
        let value = eval.evaluate_agent(agent)?;
        let pos = agent.position.clone();
        pop.offer_best(&pos, value);
    }
    pop.iteration += 1;
    Ok(())
}
