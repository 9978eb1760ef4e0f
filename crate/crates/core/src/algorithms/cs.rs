//! Cuckoo search.
//!
//! Global phase: every nest proposes `x_i + α L` with componentwise Lévy
//! steps and replaces a randomly chosen nest if it is not worse than it.
//! Local phase: `x_i + α s ⊗ H(p_a − ε) ⊗ (x_j − x_k)` with `j, k` taken
//! from a random permutation and a fresh uniform `ε` per component; the
//! proposal replaces `x_i` if it is not worse. Neither phase can discard the
//! population's best nest.
//!
//! A proposal identical to its incumbent is not evaluated.

use serde::{Deserialize, Serialize};

use crate::algorithms::{check_nonnegative, check_population};
use crate::budget::Evaluator;
use crate::error::{check_range, Error, Result};
use crate::operators::{mutate_levy, select_greedy, LevyParams, LevySampler, Selected};
use crate::population::Population;
use crate::rng::RngStream;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CsConfig {
    /// Switching probability; the fraction of components moved by the local walk.
    pub p_a: f64,
    /// Local-walk scale.
    pub alpha: f64,
    /// Local-walk step size.
    pub s: f64,
    pub levy: LevyParams,
    pub n: usize,
}

impl Default for CsConfig {
    fn default() -> Self {
        Self {
            p_a: 0.25,
            alpha: 1.0,
            s: 0.8,
            levy: LevyParams {
                step_scale: 0.1,
                ..LevyParams::default()
            },
            n: 15,
        }
    }
}

impl CsConfig {
    pub fn validate(&self) -> Result<()> {
        check_range("p_a", self.p_a, 0.0, 1.0, "[0, 1]")?;
        check_nonnegative("alpha", self.alpha)?;
        check_nonnegative("s", self.s)?;
        self.levy.validate()?;
        check_population("n", self.n, 3, "[3, inf)")
    }
}

/// Heaviside step: 1 for positive arguments.
fn heaviside(u: f64) -> f64 {
    if u > 0.0 {
        1.0
    } else {
        0.0
    }
}

/// The gated local walk; draws one uniform per component from `rng`.
pub fn cs_local_proposal(
    x_i: &[f64],
    x_j: &[f64],
    x_k: &[f64],
    alpha: f64,
    s: f64,
    p_a: f64,
    rng: &mut RngStream,
) -> Vec<f64> {
    (0..x_i.len())
        .map(|c| {
            let h = heaviside(p_a - rng.uniform());
            x_i[c] + alpha * s * h * (x_j[c] - x_k[c])
        })
        .collect()
}

pub fn cs_step(pop: &mut Population, cfg: &CsConfig, eval: &mut Evaluator<'_>, rng: &mut RngStream) -> Result<()> {
    let n = pop.len();
    if n < 3 {
        return Err(Error::config("n", n, "[3, inf)"));
    }
    let problem = eval.problem();
    let sampler = LevySampler::new(cfg.levy)?;

    for i in 0..n {
        let mut proposal = mutate_levy(&pop.agents[i].position, &sampler, rng);
        problem.clamp_in_place(&mut proposal);
        let value = eval.evaluate(&proposal)?;
        let j = rng.index(n);
        let nest = &mut pop.agents[j];
        if select_greedy(value, nest.value())? == Selected::Candidate {
            nest.position = proposal;
            nest.fitness = Some(value);
        }
    }

    for i in 0..n {
        let picks = rng.distinct_excluding(n, i, 2);
        let (xj, xk) = (&pop.agents[picks[0]].position, &pop.agents[picks[1]].position);
        let mut proposal = cs_local_proposal(&pop.agents[i].position, xj, xk, cfg.alpha, cfg.s, cfg.p_a, rng);
        problem.clamp_in_place(&mut proposal);
        if proposal == pop.agents[i].position {
            continue;
        }
        let value = eval.evaluate(&proposal)?;
        let agent = &mut pop.agents[i];
        if select_greedy(value, agent.value())? == Selected::Candidate {
            agent.position = proposal;
            agent.fitness = Some(value);
        }
    }

    pop.refresh_best();
    pop.iteration += 1;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn open_gate_is_de_form() {
        let mut rng = RngStream::new(1);
        let (xi, xj, xk) = ([1.0, 2.0], [3.0, -1.0], [0.5, 0.5]);
        let y = cs_local_proposal(&xi, &xj, &xk, 0.5, 0.8, 1.0, &mut rng);
        let expect: Vec<f64> = (0..2).map(|c| xi[c] + 0.5 * 0.8 * (xj[c] - xk[c])).collect();
        assert_eq!(y, expect);
    }

    #[test]
    fn closed_gate_is_identity() {
        let mut rng = RngStream::new(2);
        let xi = [1.0, 2.0, 3.0];
        for _ in 0..100 {
            assert_eq!(cs_local_proposal(&xi, &[9.0; 3], &[-9.0; 3], 1.0, 1.0, 0.0, &mut rng), xi.to_vec());
        }
    }

    #[test]
    fn equal_partners_give_identity() {
        let mut rng = RngStream::new(3);
        let xi = [1.0, 2.0];
        assert_eq!(cs_local_proposal(&xi, &[4.0, 4.0], &[4.0, 4.0], 1.0, 1.0, 0.6, &mut rng), xi.to_vec());
    }

    #[test]
    fn gate_fraction_tracks_p_a() {
        let mut rng = RngStream::new(4);
        let xi = vec![0.0; 1000];
        let y = cs_local_proposal(&xi, &vec![1.0; 1000], &xi, 1.0, 1.0, 0.3, &mut rng);
        let moved = y.iter().filter(|&&v| v != 0.0).count() as f64 / 1000.0;
        assert!((moved - 0.3).abs() < 0.05, "{moved}");
    }

    #[test]
    fn validation() {
        assert!(CsConfig::default().validate().is_ok());
        assert!(CsConfig { n: 2, ..Default::default() }.validate().is_err());
        assert!(CsConfig { p_a: 1.5, ..Default::default() }.validate().is_err());
    }
}
