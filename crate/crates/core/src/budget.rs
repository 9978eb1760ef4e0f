//! Evaluation budget and the observer that turns evaluations into a
//! best-so-far curve.

use crate::error::{Error, Result};
use crate::population::Agent;
use crate::problem::Problem;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Budget {
    max_evaluations: u64,
    used: u64,
    target_accuracy: Option<f64>,
}

impl Budget {
    pub fn new(max_evaluations: u64) -> Self {
        assert!(max_evaluations > 0, "budget must allow at least one evaluation");
        Self {
            max_evaluations,
            used: 0,
            target_accuracy: None,
        }
    }

    pub fn with_target_accuracy(mut self, delta: f64) -> Self {
        self.target_accuracy = Some(delta);
        self
    }

    pub fn max_evaluations(&self) -> u64 {
        self.max_evaluations
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn remaining(&self) -> u64 {
        self.max_evaluations - self.used
    }

    pub fn is_exhausted(&self) -> bool {
        self.used >= self.max_evaluations
    }

    pub fn target_accuracy(&self) -> Option<f64> {
        self.target_accuracy
    }

    /// Reserves one evaluation.
    pub fn spend(&mut self) -> Result<()> {
        if self.is_exhausted() {
            return Err(Error::BudgetExhausted {
                max: self.max_evaluations,
            });
        }
        self.used += 1;
        Ok(())
    }
}

/// Elitist bookkeeping done outside the algorithms.
#[derive(Debug, Clone, Default)]
struct Tracker {
    best_value: Option<f64>,
    best_position: Vec<f64>,
    curve: Vec<(u64, f64)>,
    evals_to_accuracy: Option<u64>,
}

/// Gatekeeper for every objective call of one run.
///
/// Counts evaluations against the [`Budget`], remembers the best point ever
/// evaluated and records `(evaluations, best)` checkpoints when asked to.
#[derive(Debug)]
pub struct Evaluator<'a> {
    problem: &'a Problem,
    budget: Budget,
    tracker: Tracker,
}

impl<'a> Evaluator<'a> {
    pub fn new(problem: &'a Problem, budget: Budget) -> Self {
        Self {
            problem,
            budget,
            tracker: Tracker::default(),
        }
    }

    pub fn problem(&self) -> &'a Problem {
        self.problem
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    /// Evaluates `x`, which must already lie inside the bounds.
    pub fn evaluate(&mut self, x: &[f64]) -> Result<f64> {
        self.budget.spend()?;
        let value = self.problem.objective(x);
        if value.is_nan() {
            return Err(Error::NotANumber);
        }
        self.observe(x, value);
        Ok(value)
    }

    /// Evaluates an agent's position and caches the value on the agent.
    pub fn evaluate_agent(&mut self, agent: &mut Agent) -> Result<f64> {
        let value = self.evaluate(&agent.position)?;
        agent.fitness = Some(value);
        Ok(value)
    }

    fn observe(&mut self, x: &[f64], value: f64) {
        let t = &mut self.tracker;
        if t.best_value.is_none_or(|b| value < b) {
            t.best_value = Some(value);
            t.best_position.clear();
            t.best_position.extend_from_slice(x);
        }
        if t.evals_to_accuracy.is_none() {
            if let Some(delta) = self.budget.target_accuracy {
                if value <= delta {
                    t.evals_to_accuracy = Some(self.budget.used);
                }
            }
        }
    }

    pub fn best_value(&self) -> Option<f64> {
        self.tracker.best_value
    }

    pub fn best_position(&self) -> &[f64] {
        &self.tracker.best_position
    }

    pub fn evals_to_accuracy(&self) -> Option<u64> {
        self.tracker.evals_to_accuracy
    }

    /// Records a curve point at the current evaluation count. Called at
    /// sweep boundaries; repeated calls without new evaluations are ignored.
    pub fn checkpoint(&mut self) {
        let Some(best) = self.tracker.best_value else {
            return;
        };
        let used = self.budget.used;
        match self.tracker.curve.last() {
            Some(&(evals, _)) if evals >= used => {}
            _ => self.tracker.curve.push((used, best)),
        }
    }

    pub fn curve(&self) -> &[(u64, f64)] {
        &self.tracker.curve
    }

    #[allow(clippy::type_complexity)]
    pub(crate) fn into_parts(self) -> (Budget, Vec<(u64, f64)>, Option<f64>, Vec<f64>, Option<u64>) {
        let t = self.tracker;
        (self.budget, t.curve, t.best_value, t.best_position, t.evals_to_accuracy)
    }
}

/// Evaluates `agent` against `problem`, charging one unit to `budget`.
pub fn evaluate(problem: &Problem, agent: &mut Agent, budget: &mut Budget) -> Result<f64> {
    budget.spend()?;
    let value = problem.objective(&agent.position);
    if value.is_nan() {
        return Err(Error::NotANumber);
    }
    agent.fitness = Some(value);
    Ok(value)
}
