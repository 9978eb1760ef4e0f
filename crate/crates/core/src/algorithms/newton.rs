//! Relaxed Newton-Raphson for stationary points of separable objectives.
//!
//! `x ← x − p f'(x) / f''(x)` per coordinate. `p = 1` is the classic
//! iteration; `p = 1 / (1 − A'(x*))`, where `A(x) = x − f'/f''`, restores
//! fast convergence at degenerate minima.

use crate::error::{Error, Result};

pub const CURVATURE_TOLERANCE: f64 = 1e-12;

/// First and second derivatives of a coordinate-separable objective.
pub trait SeparableDerivatives {
    fn gradient(&self, x: &[f64]) -> Vec<f64>;
    /// Diagonal of the Hessian.
    fn curvature(&self, x: &[f64]) -> Vec<f64>;
}

impl<G, H> SeparableDerivatives for (G, H)
where
    G: Fn(&[f64]) -> Vec<f64>,
    H: Fn(&[f64]) -> Vec<f64>,
{
    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        (self.0)(x)
    }

    fn curvature(&self, x: &[f64]) -> Vec<f64> {
        (self.1)(x)
    }
}

pub fn newton_step<P: SeparableDerivatives + ?Sized>(x: &[f64], problem: &P, p: f64) -> Result<Vec<f64>> {
    let g = problem.gradient(x);
    let h = problem.curvature(x);
    x.iter()
        .zip(g.iter().zip(&h))
        .map(|(&xi, (&gi, &hi))| {
            if hi.abs() < CURVATURE_TOLERANCE {
                Err(Error::SingularCurvature { curvature: hi })
            } else {
                Ok(xi - p * gi / hi)
            }
        })
        .collect()
}

/// `1 / (1 − A'(x*))` for the derivative of the Newton map at the fixed point.
pub fn optimal_relaxation(map_derivative: f64) -> Result<f64> {
    if map_derivative == 1.0 {
        return Err(Error::DivisionByZero("A'(x*) = 1"));
    }
    Ok(1.0 / (1.0 - map_derivative))
}
