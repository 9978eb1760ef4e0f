//! Bat algorithm.
//!
//! Per bat: `f_i = f_min + (f_max − f_min) β`,
//! `v_i ← v_i + (x_i − x_*) f_i`, proposal `x_i + v_i`. With probability
//! `r_i` the proposal is replaced by a local walk `x_* + 0.1 Ā ε` around the
//! current best (`Ā` the mean loudness). The proposal is accepted when it is
//! not worse and a uniform draw falls below `A_i`; on acceptance
//! `A_i ← α A_i` and `r_i ← r_i⁰ (1 − exp(−γ t))` with `t` the sweep number.

use serde::{Deserialize, Serialize};

use crate::algorithms::{check_nonnegative, check_population};
use crate::budget::Evaluator;
use crate::error::{check_range, Error, Result};
use crate::operators::{select_greedy, Selected};
use crate::population::Population;
use crate::rng::RngStream;

const LOCAL_WALK_SCALE: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BaConfig {
    pub f_min: f64,
    pub f_max: f64,
    /// Loudness decay, in `(0, 1)`.
    pub alpha_loud: f64,
    /// Pulse-rate growth, positive.
    pub gamma_pulse: f64,
    /// Initial loudness `A⁰`.
    pub loudness0: f64,
    /// Asymptotic pulse rate `r⁰`.
    pub pulse_rate0: f64,
    pub n: usize,
}

impl Default for BaConfig {
    fn default() -> Self {
        Self {
            f_min: 0.0,
            f_max: 2.0,
            alpha_loud: 0.9,
            gamma_pulse: 0.9,
            loudness0: 1.0,
            pulse_rate0: 0.5,
            n: 20,
        }
    }
}

impl BaConfig {
    pub fn validate(&self) -> Result<()> {
        check_population("n", self.n, 1, "[1, inf)")?;
        if !(self.f_min <= self.f_max) {
            return Err(Error::config("f_max", self.f_max, "[f_min, inf)"));
        }
        if !(self.alpha_loud > 0.0 && self.alpha_loud < 1.0) {
            return Err(Error::config("alpha_loud", self.alpha_loud, "(0, 1)"));
        }
        check_range("gamma_pulse", self.gamma_pulse, f64::MIN_POSITIVE, f64::MAX, "(0, inf)")?;
        check_nonnegative("loudness0", self.loudness0)?;
        check_range("pulse_rate0", self.pulse_rate0, 0.0, 1.0, "[0, 1]")
    }
}

pub fn frequency(f_min: f64, f_max: f64, beta: f64) -> f64 {
    f_min + (f_max - f_min) * beta
}

/// `r⁰ (1 − exp(−γ t))`.
pub fn pulse_rate_at(r0: f64, gamma: f64, t: f64) -> f64 {
    r0 * (1.0 - (-gamma * t).exp())
}

/// Loudness after `accepted` updates `A ← α A`.
pub fn loudness_after(a0: f64, alpha: f64, accepted: u32) -> f64 {
    (0..accepted).fold(a0, |a, _| alpha * a)
}

/// Gives every bat zero velocity, the initial loudness and a zero pulse rate.
pub fn ba_init(pop: &mut Population, cfg: &BaConfig) {
    for a in &mut pop.agents {
        a.velocity = Some(vec![0.0; a.position.len()]);
        a.loudness = cfg.loudness0;
        a.pulse_rate = 0.0;
    }
    pop.refresh_best();
}

pub fn ba_step(pop: &mut Population, cfg: &BaConfig, eval: &mut Evaluator<'_>, rng: &mut RngStream) -> Result<()> {
    let problem = eval.problem();
    let d = problem.dimension();
    let t = (pop.iteration + 1) as f64;
    let mean_loudness = pop.agents.iter().map(|a| a.loudness).sum::<f64>() / pop.len() as f64;
    for i in 0..pop.len() {
        let best = pop.global_best().expect("population has a current best").to_vec();
        let agent = &mut pop.agents[i];
        let f_i = frequency(cfg.f_min, cfg.f_max, rng.uniform());
        let v = agent.velocity.get_or_insert_with(|| vec![0.0; d]);
        for k in 0..d {
            v[k] += (agent.position[k] - best[k]) * f_i;
        }
        let mut proposal: Vec<f64> = agent.position.iter().zip(v.iter()).map(|(x, v)| x + v).collect();
        if rng.uniform() < agent.pulse_rate {
            proposal = (0..d)
                .map(|k| best[k] + LOCAL_WALK_SCALE * mean_loudness * rng.gaussian())
                .collect();
        }
        problem.clamp_in_place(&mut proposal);
        let value = eval.evaluate(&proposal)?;
        let loud_gate = rng.uniform() < agent.loudness;
        if select_greedy(value, agent.value())? == Selected::Candidate && loud_gate {
            agent.position = proposal.clone();
            agent.fitness = Some(value);
            agent.loudness *= cfg.alpha_loud;
            agent.pulse_rate = pulse_rate_at(cfg.pulse_rate0, cfg.gamma_pulse, t);
        }
        pop.offer_best(&proposal, value);
    }
    pop.iteration += 1;
    Ok(())
}
