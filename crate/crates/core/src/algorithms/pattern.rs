//! Hooke-Jeeves style coordinate pattern search.
//!
//! For each dimension in turn the moves `x + δ_i e_i` and `x − δ_i e_i` are
//! tried; the first strict improvement is kept and the search continues from
//! it along the next dimension. If a full sweep improves nothing, every step
//! size is halved.

use serde::{Deserialize, Serialize};

use crate::budget::Evaluator;
use crate::error::{check_len, check_range, Result};
use crate::operators::mutate_pattern;
use crate::rng::RngStream;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PatternSearchConfig {
    /// Initial step as a fraction of each box width.
    pub initial_step: f64,
    /// Step multiplier applied after a sweep without improvement.
    pub shrink: f64,
}

impl Default for PatternSearchConfig {
    fn default() -> Self {
        Self {
            initial_step: 0.25,
            shrink: 0.5,
        }
    }
}

impl PatternSearchConfig {
    pub fn validate(&self) -> Result<()> {
        check_range("initial_step", self.initial_step, f64::MIN_POSITIVE, 1.0, "(0, 1]")?;
        check_range("shrink", self.shrink, f64::MIN_POSITIVE, 1.0 - f64::EPSILON, "(0, 1)")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PatternState {
    pub x: Vec<f64>,
    pub value: f64,
    pub step_sizes: Vec<f64>,
}

impl PatternState {
    /// Uniform start point, evaluated once.
    pub fn random(cfg: &PatternSearchConfig, eval: &mut Evaluator<'_>, rng: &mut RngStream) -> Result<Self> {
        let problem = eval.problem();
        let x = problem.random_point(rng);
        let value = eval.evaluate(&x)?;
        let step_sizes = (0..problem.dimension()).map(|i| cfg.initial_step * problem.width(i)).collect();
        Ok(Self { x, value, step_sizes })
    }
}

/// One sweep over all dimensions with the default shrink factor of 1/2.
pub fn pattern_search_step(state: &mut PatternState, eval: &mut Evaluator<'_>) -> Result<bool> {
    pattern_search_sweep(state, 0.5, eval)
}

/// One sweep; returns whether any move was accepted.
pub fn pattern_search_sweep(state: &mut PatternState, shrink: f64, eval: &mut Evaluator<'_>) -> Result<bool> {
    let problem = eval.problem();
    check_len(state.x.len(), state.step_sizes.len())?;
    let mut improved = false;
    for i in 0..state.x.len() {
        for sign in [1.0, -1.0] {
            let mut candidate = state.x.clone();
            candidate[i] += sign * state.step_sizes[i];
            problem.clamp_in_place(&mut candidate);
            if candidate == state.x {
                continue;
            }
            let value = eval.evaluate(&candidate)?;
            if value < state.value {
                state.x = mutate_pattern(&state.x, &candidate)?;
                state.value = value;
                improved = true;
                break;
            }
        }
    }
    if !improved {
        for s in &mut state.step_sizes {
            *s *= shrink;
        }
    }
    Ok(improved)
}
