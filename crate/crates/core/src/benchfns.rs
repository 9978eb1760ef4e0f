//! Classic continuous test functions, all with minimum value 0.
//!
//! | name       | domain               | minimizer |
//! |------------|----------------------|-----------|
//! | sphere     | [-5.12, 5.12]^d      | 0         |
//! | rosenbrock | [-5, 10]^d, d >= 2   | 1         |
//! | ackley     | [-32.768, 32.768]^d  | 0         |
//! | rastrigin  | [-5.12, 5.12]^d      | 0         |
//! | griewank   | [-600, 600]^d        | 0         |
//! | two_well   | [-2, 2]^d            | ±1 per coordinate |
//!
//! `two_well` is `Σ (x_i² − 1)²`, a symmetric bimodal landscape used to check
//! that the firefly algorithm splits into subgroups.

use std::f64::consts::{E, PI};

use crate::error::{Error, Result};
use crate::problem::Problem;

#[derive(Debug, Clone, Copy)]
pub struct BenchmarkFunction {
    pub name: &'static str,
    pub lower: f64,
    pub upper: f64,
    pub optimum_value: f64,
    /// Coordinate of a minimizer, repeated in every dimension.
    pub optimum_coordinate: f64,
    pub min_dimension: usize,
    pub eval: fn(&[f64]) -> f64,
}

impl BenchmarkFunction {
    pub fn optimum_location(&self, d: usize) -> Vec<f64> {
        vec![self.optimum_coordinate; d]
    }
}

pub fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

pub fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (1.0 - w[0]).powi(2))
        .sum()
}

pub fn ackley(x: &[f64]) -> f64 {
    let d = x.len() as f64;
    let sq = x.iter().map(|v| v * v).sum::<f64>() / d;
    let cs = x.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / d;
    -20.0 * (-0.2 * sq.sqrt()).exp() - cs.exp() + 20.0 + E
}

pub fn rastrigin(x: &[f64]) -> f64 {
    10.0 * x.len() as f64 + x.iter().map(|v| v * v - 10.0 * (2.0 * PI * v).cos()).sum::<f64>()
}

pub fn griewank(x: &[f64]) -> f64 {
    let sum = x.iter().map(|v| v * v).sum::<f64>() / 4000.0;
    let prod: f64 = x
        .iter()
        .enumerate()
        .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
        .product();
    sum - prod + 1.0
}

pub fn two_well(x: &[f64]) -> f64 {
    x.iter().map(|v| (v * v - 1.0).powi(2)).sum()
}

pub const FUNCTIONS: &[BenchmarkFunction] = &[
    BenchmarkFunction {
        name: "sphere",
        lower: -5.12,
        upper: 5.12,
        optimum_value: 0.0,
        optimum_coordinate: 0.0,
        min_dimension: 1,
        eval: sphere,
    },
    BenchmarkFunction {
        name: "rosenbrock",
        lower: -5.0,
        upper: 10.0,
        optimum_value: 0.0,
        optimum_coordinate: 1.0,
        min_dimension: 2,
        eval: rosenbrock,
    },
    BenchmarkFunction {
        name: "ackley",
        lower: -32.768,
        upper: 32.768,
        optimum_value: 0.0,
        optimum_coordinate: 0.0,
        min_dimension: 1,
        eval: ackley,
    },
    BenchmarkFunction {
        name: "rastrigin",
        lower: -5.12,
        upper: 5.12,
        optimum_value: 0.0,
        optimum_coordinate: 0.0,
        min_dimension: 1,
        eval: rastrigin,
    },
    BenchmarkFunction {
        name: "griewank",
        lower: -600.0,
        upper: 600.0,
        optimum_value: 0.0,
        optimum_coordinate: 0.0,
        min_dimension: 1,
        eval: griewank,
    },
    BenchmarkFunction {
        name: "two_well",
        lower: -2.0,
        upper: 2.0,
        optimum_value: 0.0,
        optimum_coordinate: 1.0,
        min_dimension: 1,
        eval: two_well,
    },
];

pub fn lookup(name: &str) -> Result<&'static BenchmarkFunction> {
    FUNCTIONS
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::UnknownFunction(name.to_string()))
}

/// Builds the named benchmark as a `d`-dimensional [`Problem`].
pub fn make(name: &str, d: usize) -> Result<Problem> {
    let f = lookup(name)?;
    if d < f.min_dimension {
        return Err(Error::InvalidProblem(format!(
            "{name} needs dimension >= {}, got {d}",
            f.min_dimension
        )));
    }
    let eval = f.eval;
    Ok(Problem::cube(f.name, d, f.lower, f.upper, eval)?.with_known_optimum(f.optimum_value))
}
