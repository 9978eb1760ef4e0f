//! Particle swarm optimization.
//!
//! `v ← w v + α ε1 ⊙ (g* − x) + β ε2 ⊙ (x* − x)`, then `x ← x + v`, with
//! `ε1, ε2` fresh uniform vectors on `[0,1)^d`. The default `w = 1` is the
//! original update without an inertia factor.

use serde::{Deserialize, Serialize};

use crate::algorithms::{check_nonnegative, check_population};
use crate::budget::Evaluator;
use crate::error::{check_range, Result};
use crate::operators::{select_greedy, Selected};
use crate::population::Population;
use crate::rng::RngStream;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PsoConfig {
    /// Pull towards the global best.
    pub alpha: f64,
    /// Pull towards the personal best.
    pub beta: f64,
    /// Inertia weight.
    pub w: f64,
    pub n: usize,
    /// Optional per-dimension speed limit as a fraction of the box width.
    pub v_max: Option<f64>,
}

impl Default for PsoConfig {
    fn default() -> Self {
        Self {
            alpha: 2.0,
            beta: 2.0,
            w: 1.0,
            n: 20,
            v_max: None,
        }
    }
}

impl PsoConfig {
    pub fn validate(&self) -> Result<()> {
        check_population("n", self.n, 2, "[2, inf)")?;
        check_nonnegative("alpha", self.alpha)?;
        check_nonnegative("beta", self.beta)?;
        check_range("w", self.w, f64::MIN, f64::MAX, "finite reals")?;
        if let Some(v) = self.v_max {
            check_range("v_max", v, f64::MIN_POSITIVE, f64::MAX, "(0, inf)")?;
        }
        Ok(())
    }
}

/// The velocity rule with the random vectors supplied by the caller.
#[allow(clippy::too_many_arguments)]
pub fn pso_velocity(
    v: &[f64],
    x: &[f64],
    global_best: &[f64],
    personal_best: &[f64],
    alpha: f64,
    beta: f64,
    w: f64,
    eps1: &[f64],
    eps2: &[f64],
) -> Vec<f64> {
    (0..x.len())
        .map(|k| w * v[k] + alpha * eps1[k] * (global_best[k] - x[k]) + beta * eps2[k] * (personal_best[k] - x[k]))
        .collect()
}

/// Zero velocities and personal bests at the current positions.
pub fn pso_init(pop: &mut Population) {
    for a in &mut pop.agents {
        a.velocity = Some(vec![0.0; a.position.len()]);
        a.personal_best = Some((a.position.clone(), a.value()));
    }
    pop.refresh_best();
}

pub fn pso_step(pop: &mut Population, cfg: &PsoConfig, eval: &mut Evaluator<'_>, rng: &mut RngStream) -> Result<()> {
    let problem = eval.problem();
    let d = problem.dimension();
    for i in 0..pop.len() {
        let g = pop.global_best().expect("population has a global best").to_vec();
        let agent = &mut pop.agents[i];
        let eps1 = rng.uniform_vec(d);
        let eps2 = rng.uniform_vec(d);
        let (pbest, _) = agent.personal_best.as_ref().expect("pso_init was called");
        let v = agent.velocity.as_ref().expect("pso_init was called");
        let mut v = pso_velocity(v, &agent.position, &g, pbest, cfg.alpha, cfg.beta, cfg.w, &eps1, &eps2);
        if let Some(frac) = cfg.v_max {
            for (k, vk) in v.iter_mut().enumerate() {
                let limit = frac * problem.width(k);
                *vk = vk.clamp(-limit, limit);
            }
        }
        for (xk, vk) in agent.position.iter_mut().zip(&v) {
            *xk += vk;
        }
        problem.clamp_in_place(&mut agent.position);
        agent.velocity = Some(v);
        let value = eval.evaluate_agent(agent)?;
        let pb_value = agent.personal_best.as_ref().map_or(f64::INFINITY, |p| p.1);
        if select_greedy(value, pb_value)? == Selected::Candidate {
            agent.personal_best = Some((agent.position.clone(), value));
            let pos = agent.position.clone();
            pop.offer_best(&pos, value);
        }
    }
    pop.iteration += 1;
    Ok(())
}
