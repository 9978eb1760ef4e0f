use crate::budget::Evaluator;
use crate::error::Result;
use crate::rng::RngStream;

/// One candidate solution plus the per-agent state some algorithms carry.
#[derive(Debug, Clone, PartialEq)]
pub struct Agent {
    pub position: Vec<f64>,
    pub velocity: Option<Vec<f64>>,
    /// Objective value at `position`, if it has been evaluated.
    pub fitness: Option<f64>,
    /// Personal best `(position, value)` (PSO).
    pub personal_best: Option<(Vec<f64>, f64)>,
    /// Loudness (BA).
    pub loudness: f64,
    /// Pulse emission rate (BA).
    pub pulse_rate: f64,
    /// Consecutive non-improving trials (ABC).
    pub trials: usize,
}

impl Agent {
    pub fn new(position: Vec<f64>) -> Self {
        Self {
            position,
            velocity: None,
            fitness: None,
            personal_best: None,
            loudness: 0.0,
            pulse_rate: 0.0,
            trials: 0,
        }
    }

    pub fn with_fitness(position: Vec<f64>, fitness: f64) -> Self {
        Self {
            fitness: Some(fitness),
            ..Self::new(position)
        }
    }

    /// Cached value, or `+inf` if the agent was never evaluated.
    pub fn value(&self) -> f64 {
        self.fitness.unwrap_or(f64::INFINITY)
    }
}

/// A swarm of agents plus the current global best `g*`.
#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    pub agents: Vec<Agent>,
    /// Best `(position, value)` the algorithm itself knows about.
    pub best: Option<(Vec<f64>, f64)>,
    /// Completed sweeps.
    pub iteration: usize,
}

impl Population {
    pub fn from_agents(agents: Vec<Agent>) -> Self {
        let mut pop = Self {
            agents,
            best: None,
            iteration: 0,
        };
        pop.refresh_best();
        pop
    }

    /// `n` uniform points in the box, each evaluated once.
    pub fn random(n: usize, eval: &mut Evaluator<'_>, rng: &mut RngStream) -> Result<Self> {
        let problem = eval.problem();
        let mut agents = Vec::with_capacity(n);
        for _ in 0..n {
            let mut agent = Agent::new(problem.random_point(rng));
            eval.evaluate_agent(&mut agent)?;
            agents.push(agent);
        }
        Ok(Self::from_agents(agents))
    }

    pub fn len(&self) -> usize {
        self.agents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.agents.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.agents.first().map_or(0, |a| a.position.len())
    }

    pub fn positions(&self) -> Vec<Vec<f64>> {
        self.agents.iter().map(|a| a.position.clone()).collect()
    }

    pub fn values(&self) -> Vec<f64> {
        self.agents.iter().map(Agent::value).collect()
    }

    /// Index of the lowest cached value, lowest index on ties.
    pub fn best_index(&self) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for (i, a) in self.agents.iter().enumerate() {
            let v = a.value();
            if best.is_none_or(|(_, b)| v < b) {
                best = Some((i, v));
            }
        }
        best.map(|(i, _)| i)
    }

    /// Offers `(position, value)` as a new global best; kept if not worse.
    pub fn offer_best(&mut self, position: &[f64], value: f64) {
        if self.best.as_ref().is_none_or(|(_, b)| value <= *b) {
            self.best = Some((position.to_vec(), value));
        }
    }

    /// Re-derives `best` from the agents' cached values, keeping the old
    /// best if it is still better.
    pub fn refresh_best(&mut self) {
        if let Some(i) = self.best_index() {
            let a = &self.agents[i];
            if let Some(v) = a.fitness {
                let pos = a.position.clone();
                self.offer_best(&pos, v);
            }
        }
    }

    pub fn global_best(&self) -> Option<&[f64]> {
        self.best.as_ref().map(|(x, _)| x.as_slice())
    }

    pub fn global_best_value(&self) -> Option<f64> {
        self.best.as_ref().map(|&(_, v)| v)
    }
}
