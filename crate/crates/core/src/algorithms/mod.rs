//! Continuous optimizers as sweep-level step functions.
//!
//! Each module exposes a config type, the pure move rule(s) with every random
//! draw passed in explicitly, and a `*_step` function that performs one sweep
//! over the population through an [`Evaluator`](crate::Evaluator). Positions
//! are clamped to the box after every update.

pub mod abc;
pub mod apso;
pub mod ba;
pub mod cs;
pub mod de;
pub mod fa;
pub mod newton;
pub mod pattern;
pub mod pso;
pub mod sa;

pub use abc::{abc_step, AbcConfig};
pub use apso::{apso_move, apso_step, ApsoConfig};
pub use ba::{ba_step, BaConfig};
pub use cs::{cs_local_proposal, cs_step, CsConfig};
pub use de::{de_step, de_trial, DeConfig};
pub use fa::{fa_agent_proposal, fa_move, fa_step, FaConfig};
pub use newton::{newton_step, optimal_relaxation, SeparableDerivatives};
pub use pattern::{pattern_search_step, PatternSearchConfig, PatternState};
pub use pso::{pso_init, pso_step, pso_velocity, PsoConfig};
pub use sa::{metropolis_probability, sa_proposal, sa_step, SaConfig, SaState};

use crate::error::{Error, Result};

pub(crate) fn check_population(field: &'static str, n: usize, min: usize, range: &'static str) -> Result<()> {
    if n < min {
        return Err(Error::config(field, n, range));
    }
    Ok(())
}

pub(crate) fn check_nonnegative(field: &'static str, v: f64) -> Result<()> {
    crate::error::check_range(field, v, 0.0, f64::MAX, "[0, inf)")
}
