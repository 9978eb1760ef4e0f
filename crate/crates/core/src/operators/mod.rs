//! Mutation, crossover and selection as standalone primitives.
//!
//! Every algorithm in [`crate::algorithms`] is assembled from these pieces,
//! which is what makes the degeneracy relations between algorithms testable
//! move-for-move.

mod crossover;
mod levy;
mod mutation;
mod selection;

pub use crossover::{
    crossover, crossover_binomial, crossover_exponential, crossover_ga, CrossoverParams, CrossoverScheme,
};
pub use levy::{levy_density, levy_sample, levy_tail_mass, LevyParams, LevySampler};
pub use mutation::{mutate_de, mutate_gaussian, mutate_levy, mutate_pattern, pattern_directions};
pub use selection::{select_elitist, select_greedy, Selected};
