use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

type Objective = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A box-bounded minimization problem.
#[derive(Clone)]
pub struct Problem {
    name: String,
    lower: Vec<f64>,
    upper: Vec<f64>,
    objective: Objective,
    known_optimum: Option<f64>,
}

impl Problem {
    pub fn new<F>(name: impl Into<String>, lower: Vec<f64>, upper: Vec<f64>, objective: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        if lower.is_empty() {
            return Err(Error::InvalidProblem("dimension must be positive".into()));
        }
        if lower.len() != upper.len() {
            return Err(Error::LengthMismatch {
                expected: lower.len(),
                got: upper.len(),
            });
        }
        if let Some(i) = (0..lower.len()).find(|&i| !(lower[i] < upper[i])) {
            return Err(Error::InvalidProblem(format!(
                "lower[{i}] = {} is not below upper[{i}] = {}",
                lower[i], upper[i]
            )));
        }
        Ok(Self {
            name: name.into(),
            lower,
            upper,
            objective: Arc::new(objective),
            known_optimum: None,
        })
    }

    /// Same bounds in every dimension.
    pub fn cube<F>(name: impl Into<String>, d: usize, lo: f64, hi: f64, objective: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self::new(name, vec![lo; d], vec![hi; d], objective)
    }

    pub fn with_known_optimum(mut self, value: f64) -> Self {
        self.known_optimum = Some(value);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn known_optimum(&self) -> Option<f64> {
        self.known_optimum
    }

    /// Raw objective call. Bypasses budget accounting; algorithms go through
    /// [`crate::Evaluator`] instead.
    pub fn objective(&self, x: &[f64]) -> f64 {
        (self.objective)(x)
    }

    pub fn width(&self, i: usize) -> f64 {
        self.upper[i] - self.lower[i]
    }

    /// Projects `x` onto the box.
    pub fn clamp(&self, x: &[f64]) -> Vec<f64> {
        let mut y = x.to_vec();
        self.clamp_in_place(&mut y);
        y
    }

    pub fn clamp_in_place(&self, x: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dimension());
        for ((xi, &lo), &hi) in x.iter_mut().zip(&self.lower).zip(&self.upper) {
            *xi = xi.clamp(lo, hi);
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dimension()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&xi, (&lo, &hi))| lo <= xi && xi <= hi)
    }

    /// Uniform point in the box.
    pub fn random_point(&self, rng: &mut crate::RngStream) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(&lo, &hi)| rng.uniform_in(lo, hi))
            .collect()
    }
}

impl fmt::Debug for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem")
            .field("name", &self.name)
            .field("lower", &self.lower)
            .field("upper", &self.upper)
            .field("known_optimum", &self.known_optimum)
            .finish_non_exhaustive()
    }
}

/// Free-function form of [`Problem::clamp`].
pub fn clamp(position: &[f64], problem: &Problem) -> Vec<f64> {
    problem.clamp(position)
}
