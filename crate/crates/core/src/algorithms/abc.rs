//! Artificial bee colony.
//!
//! Employed bees try `v_k = x_ik + φ (x_ik − x_jk)` on one random dimension
//! `k` with `φ ~ U[−1, 1]` and a random partner `j ≠ i`; onlookers repeat the
//! move on sources drawn with probability proportional to `1/(1+f)` for
//! `f ≥ 0` and `1 + |f|` otherwise; the most stagnant source is abandoned
//! and re-seeded uniformly once its trial counter reaches `limit`.

use serde::{Deserialize, Serialize};

use crate::algorithms::check_population;
use crate::budget::Evaluator;
use crate::error::{Error, Result};
use crate::operators::{select_greedy, Selected};
use crate::population::Population;
use crate::rng::RngStream;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AbcConfig {
    /// Number of food sources (employed bees).
    pub n: usize,
    /// Abandonment threshold; `n · d` when unset.
    pub limit: Option<usize>,
}

impl Default for AbcConfig {
    fn default() -> Self {
        Self { n: 20, limit: None }
    }
}

impl AbcConfig {
    pub fn validate(&self) -> Result<()> {
        check_population("n", self.n, 2, "[2, inf)")?;
        if self.limit == Some(0) {
            return Err(Error::config("limit", 0, "[1, inf)"));
        }
        Ok(())
    }

    pub fn limit_for(&self, d: usize) -> usize {
        self.limit.unwrap_or(self.n * d)
    }
}

pub fn fitness_transform(f: f64) -> f64 {
    if f >= 0.0 {
        1.0 / (1.0 + f)
    } else {
        1.0 + f.abs()
    }
}

/// Neighbour of `x_i` along dimension `k`.
pub fn abc_neighbor(x_i: &[f64], x_j: &[f64], k: usize, phi: f64) -> Vec<f64> {
    let mut v = x_i.to_vec();
    v[k] = x_i[k] + phi * (x_i[k] - x_j[k]);
    v
}

fn try_neighbor(pop: &mut Population, i: usize, eval: &mut Evaluator<'_>, rng: &mut RngStream) -> Result<()> {
    let problem = eval.problem();
    let n = pop.len();
    let d = problem.dimension();
    let j = {
        let r = rng.index(n - 1);
        if r >= i {
            r + 1
        } else {
            r
        }
    };
    let k = rng.index(d);
    let phi = rng.uniform_in(-1.0, 1.0);
    let mut v = abc_neighbor(&pop.agents[i].position, &pop.agents[j].position, k, phi);
    problem.clamp_in_place(&mut v);
    let value = eval.evaluate(&v)?;
    let agent = &mut pop.agents[i];
    let incumbent = agent.value();
    if value < incumbent {
        agent.trials = 0;
    } else {
        agent.trials += 1;
    }
    if select_greedy(value, incumbent)? == Selected::Candidate {
        agent.position = v;
        agent.fitness = Some(value);
    }
    Ok(())
}

fn roulette(weights: &[f64], rng: &mut RngStream) -> usize {
    let total: f64 = weights.iter().sum();
    let mut u = rng.uniform() * total;
    for (i, w) in weights.iter().enumerate() {
        if u < *w {
            return i;
        }
        u -= w;
    }
    weights.len() - 1
}

pub fn abc_step(pop: &mut Population, cfg: &AbcConfig, eval: &mut Evaluator<'_>, rng: &mut RngStream) -> Result<()> {
    let n = pop.len();
    if n < 2 {
        return Err(Error::config("n", n, "[2, inf)"));
    }
    for i in 0..n {
        try_neighbor(pop, i, eval, rng)?;
    }

    let weights: Vec<f64> = pop.agents.iter().map(|a| fitness_transform(a.value())).collect();
    for _ in 0..n {
        let i = roulette(&weights, rng);
        try_neighbor(pop, i, eval, rng)?;
    }
    pop.refresh_best();

    let limit = cfg.limit_for(eval.problem().dimension());
    let stalest = (0..n).max_by_key(|&i| (pop.agents[i].trials, std::cmp::Reverse(i)));
    if let Some(i) = stalest.filter(|&i| pop.agents[i].trials >= limit) {
        let problem = eval.problem();
        let agent = &mut pop.agents[i];
        agent.position = problem.random_point(rng);
        agent.trials = 0;
        agent.fitness = None;
        eval.evaluate_agent(agent)?;
        pop.refresh_best();
    }
    pop.iteration += 1;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::population::Agent;
    use crate::problem::Problem;

    #[test]
    fn transform() {
        assert_eq!(fitness_transform(0.0), 1.0);
        assert_eq!(fitness_transform(1.0), 0.5);
        assert_eq!(fitness_transform(-2.0), 3.0);
    }

    #[test]
    fn zero_phi_is_identity() {
        assert_eq!(abc_neighbor(&[1.0, 2.0], &[5.0, 5.0], 1, 0.0), vec![1.0, 2.0]);
    }

    #[test]
    fn identical_partners_do_not_move() {
        for k in 0..3 {
            assert_eq!(abc_neighbor(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0], k, 0.7), vec![1.0, 2.0, 3.0]);
        }
    }

    #[test]
    fn non_improving_trial_increments_counter() {
        // Constant objective: no trial is ever a strict improvement.
        let p = Problem::cube("flat", 2, -1.0, 1.0, |_| 1.0).unwrap();
        let mut ev = Evaluator::new(&p, Budget::new(10_000));
        let mut rng = RngStream::new(5);
        let mut pop = Population::from_agents(vec![
            Agent::with_fitness(vec![0.0, 0.0], 1.0),
            Agent::with_fitness(vec![0.5, 0.5], 1.0),
        ]);
        try_neighbor(&mut pop, 0, &mut ev, &mut rng).unwrap();
        assert_eq!(pop.agents[0].trials, 1);
    }

    #[test]
    fn stagnant_source_is_reseeded() {
        let p = Problem::cube("flat", 2, -1.0, 1.0, |_| 1.0).unwrap();
        let mut ev = Evaluator::new(&p, Budget::new(10_000));
        let mut rng = RngStream::new(6);
        let mut pop = Population::random(4, &mut ev, &mut rng).unwrap();
        let cfg = AbcConfig { n: 4, limit: Some(3) };
        pop.agents[2].trials = 50;
        let before = pop.agents[2].position.clone();
        abc_step(&mut pop, &cfg, &mut ev, &mut rng).unwrap();
        assert_ne!(pop.agents[2].position, before);
        assert_eq!(pop.agents[2].trials, 0);
        assert!(p.contains(&pop.agents[2].position));
    }
}
