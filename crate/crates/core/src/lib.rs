//! Swarm-intelligence optimizers built from explicit mutation, crossover and
//! selection operators, plus the statistics needed to compare stochastic
//! optimizers fairly.
//!
//! - [`Problem`], [`Budget`], [`Evaluator`] and [`run`] form the core: every
//!   objective call goes through an evaluator that charges the budget and
//!   records the best-so-far curve.
//! - [`operators`] holds the reusable mutation, crossover and selection
//!   primitives, including Lévy flights.
//! - [`algorithms`] has PSO, accelerated PSO, DE, the firefly algorithm,
//!   cuckoo search, the bat algorithm, simulated annealing, pattern search,
//!   artificial bee colony and a relaxed Newton baseline.
//! - [`combinatorial`] is ant colony optimization on small TSP instances.
//! - [`benchfns`] provides the test functions and [`stats`] the fixed-budget
//!   and fixed-accuracy comparisons.

// Negated comparisons are how NaN parameters get rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algorithms;
pub mod benchfns;
pub mod budget;
pub mod combinatorial;
pub mod error;
pub mod operators;
pub mod population;
pub mod problem;
pub mod record;
pub mod rng;
pub mod runner;
pub mod stats;

pub use budget::{evaluate, Budget, Evaluator};
pub use error::{Error, Result};
pub use population::{Agent, Population};
pub use problem::{clamp, Problem};
pub use record::RunRecord;
pub use rng::RngStream;
pub use runner::{run, run_labeled, run_with_positions, AlgorithmConfig};
