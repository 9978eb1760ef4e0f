//! The generic run loop: initialize, then sweep until the budget runs out.

use serde::{Deserialize, Serialize};

use crate::algorithms::{
    abc_step, apso_step, ba::ba_init, ba_step, cs_step, de_step, fa_step, pattern::pattern_search_sweep, pso_init,
    pso_step, AbcConfig, ApsoConfig, BaConfig, CsConfig, DeConfig, FaConfig, PatternSearchConfig, PatternState,
    PsoConfig, SaConfig, SaState,
};
use crate::budget::{Budget, Evaluator};
use crate::error::{Error, Result};
use crate::population::Population;
use crate::problem::Problem;
use crate::record::RunRecord;
use crate::rng::RngStream;

/// One continuous optimizer with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlgorithmConfig {
    Pso(PsoConfig),
    Apso(ApsoConfig),
    De(DeConfig),
    Fa(FaConfig),
    Cs(CsConfig),
    Ba(BaConfig),
    Sa(SaConfig),
    PatternSearch(PatternSearchConfig),
    Abc(AbcConfig),
}

impl AlgorithmConfig {
    pub const NAMES: [&'static str; 9] = ["pso", "apso", "de", "fa", "cs", "ba", "sa", "pattern_search", "abc"];

    pub fn name(&self) -> &'static str {
        match self {
            AlgorithmConfig::Pso(_) => "pso",
            AlgorithmConfig::Apso(_) => "apso",
            AlgorithmConfig::De(_) => "de",
            AlgorithmConfig::Fa(_) => "fa",
            AlgorithmConfig::Cs(_) => "cs",
            AlgorithmConfig::Ba(_) => "ba",
            AlgorithmConfig::Sa(_) => "sa",
            AlgorithmConfig::PatternSearch(_) => "pattern_search",
            AlgorithmConfig::Abc(_) => "abc",
        }
    }

    /// Default parameters for the named algorithm.
    pub fn default_for(name: &str) -> Option<Self> {
        Some(match name {
            "pso" => AlgorithmConfig::Pso(PsoConfig::default()),
            "apso" => AlgorithmConfig::Apso(ApsoConfig::default()),
            "de" => AlgorithmConfig::De(DeConfig::default()),
            "fa" => AlgorithmConfig::Fa(FaConfig::default()),
            "cs" => AlgorithmConfig::Cs(CsConfig::default()),
            "ba" => AlgorithmConfig::Ba(BaConfig::default()),
            "sa" => AlgorithmConfig::Sa(SaConfig::default()),
            "pattern_search" => AlgorithmConfig::PatternSearch(PatternSearchConfig::default()),
            "abc" => AlgorithmConfig::Abc(AbcConfig::default()),
            _ => return None,
        })
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            AlgorithmConfig::Pso(c) => c.validate(),
            AlgorithmConfig::Apso(c) => c.validate(),
            AlgorithmConfig::De(c) => c.validate(),
            AlgorithmConfig::Fa(c) => c.validate(),
            AlgorithmConfig::Cs(c) => c.validate(),
            AlgorithmConfig::Ba(c) => c.validate(),
            AlgorithmConfig::Sa(c) => c.validate(),
            AlgorithmConfig::PatternSearch(c) => c.validate(),
            AlgorithmConfig::Abc(c) => c.validate(),
        }
    }

    /// Evaluations spent before the first sweep.
    pub fn initial_evaluations(&self) -> u64 {
        match self {
            AlgorithmConfig::Pso(c) => c.n as u64,
            AlgorithmConfig::Apso(c) => c.n as u64,
            AlgorithmConfig::De(c) => c.n as u64,
            AlgorithmConfig::Fa(c) => c.n as u64,
            AlgorithmConfig::Cs(c) => c.n as u64,
            AlgorithmConfig::Ba(c) => c.n as u64,
            AlgorithmConfig::Sa(c) => c.n as u64,
            AlgorithmConfig::PatternSearch(_) => 1,
            AlgorithmConfig::Abc(c) => c.n as u64,
        }
    }
}

fn sweep_loop(eval: &mut Evaluator<'_>, mut sweep: impl FnMut(&mut Evaluator<'_>) -> Result<()>) -> Result<()> {
    loop {
        if eval.budget().is_exhausted() {
            return Ok(());
        }
        let before = eval.budget().used();
        match sweep(eval) {
            Ok(()) => eval.checkpoint(),
            Err(Error::BudgetExhausted { .. }) => return Ok(()),
            Err(e) => return Err(e),
        }
        // A sweep that evaluates nothing is a fixed point of the dynamics.
        if eval.budget().used() == before {
            return Ok(());
        }
    }
}

fn absorb_exhaustion<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::BudgetExhausted { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn population(n: usize, eval: &mut Evaluator<'_>, rng: &mut RngStream) -> Result<Option<Population>> {
    let pop = absorb_exhaustion(Population::random(n, eval, rng))?;
    eval.checkpoint();
    Ok(pop)
}

/// Returns the final positions of the population (a single point for the
/// trajectory methods); empty if the budget ran out during initialization.
fn drive(config: &AlgorithmConfig, eval: &mut Evaluator<'_>, rng: &mut RngStream) -> Result<Vec<Vec<f64>>> {
    macro_rules! swarm {
        ($cfg:expr, $step:ident) => {{
            let Some(mut pop) = population($cfg.n, eval, rng)? else { return Ok(Vec::new()) };
            sweep_loop(eval, |ev| $step(&mut pop, $cfg, ev, rng))?;
            Ok(pop.positions())
        }};
        ($cfg:expr, $step:ident, $init:expr) => {{
            let Some(mut pop) = population($cfg.n, eval, rng)? else { return Ok(Vec::new()) };
            $init(&mut pop);
            sweep_loop(eval, |ev| $step(&mut pop, $cfg, ev, rng))?;
            Ok(pop.positions())
        }};
    }

    match config {
        AlgorithmConfig::Pso(c) => swarm!(c, pso_step, pso_init),
        AlgorithmConfig::Apso(c) => swarm!(c, apso_step),
        AlgorithmConfig::De(c) => swarm!(c, de_step),
        AlgorithmConfig::Fa(c) => swarm!(c, fa_step),
        AlgorithmConfig::Cs(c) => swarm!(c, cs_step),
        AlgorithmConfig::Ba(c) => swarm!(c, ba_step, |p: &mut Population| ba_init(p, c)),
        AlgorithmConfig::Abc(c) => swarm!(c, abc_step),
        AlgorithmConfig::Sa(c) => {
            let Some(pop) = population(c.n, eval, rng)? else { return Ok(Vec::new()) };
            let mut state = SaState::from_population(&pop, c);
            sweep_loop(eval, |ev| state.sweep(c, ev, rng))?;
            Ok(vec![state.current.position.clone()])
        }
        AlgorithmConfig::PatternSearch(c) => {
            let Some(mut state) = absorb_exhaustion(PatternState::random(c, eval, rng))? else {
                return Ok(Vec::new());
            };
            eval.checkpoint();
            sweep_loop(eval, |ev| pattern_search_sweep(&mut state, c.shrink, ev).map(|_| ()))?;
            Ok(vec![state.x.clone()])
        }
    }
}

/// Runs `config` on `problem` until `budget` is spent.
///
/// The result depends only on `(config, problem, budget, seed)`.
pub fn run(config: &AlgorithmConfig, problem: &Problem, budget: Budget, seed: u64) -> Result<RunRecord> {
    run_labeled(config.name(), config, problem, budget, seed)
}

/// [`run`] with a caller-chosen algorithm label in the record.
pub fn run_labeled(label: &str, config: &AlgorithmConfig, problem: &Problem, budget: Budget, seed: u64) -> Result<RunRecord> {
    run_with_positions(label, config, problem, budget, seed).map(|(record, _)| record)
}

/// [`run_labeled`] that also returns the final agent positions.
pub fn run_with_positions(
    label: &str,
    config: &AlgorithmConfig,
    problem: &Problem,
    budget: Budget,
    seed: u64,
) -> Result<(RunRecord, Vec<Vec<f64>>)> {
    config.validate()?;
    let mut rng = RngStream::new(seed);
    let mut eval = Evaluator::new(problem, budget);
    let positions = drive(config, &mut eval, &mut rng)?;
    eval.checkpoint();
    let (budget, curve, best, best_position, evals_to_accuracy) = eval.into_parts();
    let record = RunRecord {
        algorithm: label.to_string(),
        seed,
        budget: budget.max_evaluations(),
        target_accuracy: budget.target_accuracy(),
        curve,
        final_best: best.unwrap_or(f64::INFINITY),
        final_best_position: best_position,
        evals_to_accuracy,
    };
    Ok((record, positions))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchfns;

    #[test]
    fn every_name_round_trips() {
        for name in AlgorithmConfig::NAMES {
            let cfg = AlgorithmConfig::default_for(name).unwrap();
            assert_eq!(cfg.name(), name);
            cfg.validate().unwrap();
            let json = serde_json::to_string(&cfg).unwrap();
            let back: AlgorithmConfig = serde_json::from_str(&json).unwrap();
            assert_eq!(back, cfg);
        }
        assert!(AlgorithmConfig::default_for("flower").is_none());
    }

    #[test]
    fn initialization_only_budget() {
        let p = benchfns::make("sphere", 2).unwrap();
        for name in AlgorithmConfig::NAMES {
            let cfg = AlgorithmConfig::default_for(name).unwrap();
            let n = cfg.initial_evaluations();
            let rec = run(&cfg, &p, Budget::new(n), 1).unwrap();
            assert_eq!(rec.curve.len(), 1, "{name}");
            assert_eq!(rec.curve[0].0, n, "{name}");
        }
    }

    #[test]
    fn invalid_config_is_reported_before_running() {
        let p = benchfns::make("sphere", 2).unwrap();
        let cfg = AlgorithmConfig::De(DeConfig { f: 3.0, ..Default::default() });
        assert!(matches!(run(&cfg, &p, Budget::new(100), 0), Err(Error::InvalidConfig { field: "F", .. })));
    }

    #[test]
    fn budget_smaller_than_population() {
        let p = benchfns::make("sphere", 2).unwrap();
        let rec = run(&AlgorithmConfig::default_for("de").unwrap(), &p, Budget::new(5), 1).unwrap();
        assert_eq!(rec.curve, vec![(5, rec.final_best)]);
    }
}
