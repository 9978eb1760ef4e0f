//! Lévy flights: the power-law tail density and a Mantegna-style sampler.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use crate::error::{check_range, Error, Result};
use crate::rng::RngStream;

/// Shape and scale of a Lévy flight.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevyParams {
    /// Tail index, in `(0, 2]`.
    #[serde(default = "LevyParams::default_lambda")]
    pub lambda: f64,
    /// Multiplier applied to every raw step.
    #[serde(default = "LevyParams::default_step_scale")]
    pub step_scale: f64,
    /// Lower end `s0` of the range where the power-law form holds.
    #[serde(default = "LevyParams::default_cutoff")]
    pub cutoff: f64,
}

impl LevyParams {
    fn default_lambda() -> f64 {
        1.5
    }

    fn default_step_scale() -> f64 {
        0.01
    }

    fn default_cutoff() -> f64 {
        1.0
    }

    pub fn new(lambda: f64, step_scale: f64, cutoff: f64) -> Result<Self> {
        let p = Self {
            lambda,
            step_scale,
            cutoff,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda > 0.0 && self.lambda <= 2.0) {
            return Err(Error::config("lambda", self.lambda, "(0, 2]"));
        }
        check_range("step_scale", self.step_scale, f64::MIN_POSITIVE, f64::MAX, "(0, inf)")?;
        check_range("cutoff", self.cutoff, f64::MIN_POSITIVE, f64::MAX, "(0, inf)")?;
        Ok(())
    }
}

impl Default for LevyParams {
    fn default() -> Self {
        Self {
            lambda: Self::default_lambda(),
            step_scale: Self::default_step_scale(),
            cutoff: Self::default_cutoff(),
        }
    }
}

fn tail_constant(lambda: f64) -> f64 {
    lambda * gamma(lambda) * (PI * lambda / 2.0).sin() / PI
}

/// `L(s, λ) = λ Γ(λ) sin(πλ/2) / π · s^-(1+λ)`, the large-step density.
pub fn levy_density(s: f64, lambda: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::Domain(format!("step length must be positive, got {s}")));
    }
    if !(lambda > 0.0 && lambda <= 2.0) {
        return Err(Error::config("lambda", lambda, "(0, 2]"));
    }
    Ok(tail_constant(lambda) * s.powf(-(1.0 + lambda)))
}

/// Closed form of `∫_{s0}^∞ L(s, λ) ds = Γ(λ) sin(πλ/2) / π · s0^-λ`.
pub fn levy_tail_mass(s0: f64, lambda: f64) -> Result<f64> {
    if !(s0 > 0.0) {
        return Err(Error::Domain(format!("cutoff must be positive, got {s0}")));
    }
    if !(lambda > 0.0 && lambda <= 2.0) {
        return Err(Error::config("lambda", lambda, "(0, 2]"));
    }
    Ok(tail_constant(lambda) / lambda * s0.powf(-lambda))
}

/// Mantegna's ratio `u / |v|^(1/λ)` with `u ~ N(0, σu²)`, `v ~ N(0, 1)`.
///
/// The ratio has survival function `P(|X| > s) ∝ s^-λ` for large `s`, the tail
/// of [`levy_density`]. At `λ = 2` the stable law is Gaussian and `σu`
/// vanishes, so that case draws `N(0, 2)` directly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevySampler {
    params: LevyParams,
    sigma_u: f64,
}

impl LevySampler {
    pub fn new(params: LevyParams) -> Result<Self> {
        params.validate()?;
        let l = params.lambda;
        let sigma_u = if l == 2.0 {
            0.0
        } else {
            let num = gamma(1.0 + l) * (PI * l / 2.0).sin();
            let den = gamma((1.0 + l) / 2.0) * l * 2f64.powf((l - 1.0) / 2.0);
            (num / den).powf(1.0 / l)
        };
        Ok(Self { params, sigma_u })
    }

    pub fn params(&self) -> &LevyParams {
        &self.params
    }

    pub fn sigma_u(&self) -> f64 {
        self.sigma_u
    }

    /// One unscaled step.
    pub fn raw(&self, rng: &mut RngStream) -> f64 {
        if self.params.lambda == 2.0 {
            return std::f64::consts::SQRT_2 * rng.gaussian();
        }
        let u = self.sigma_u * rng.gaussian();
        let v = rng.gaussian();
        u / v.abs().powf(1.0 / self.params.lambda)
    }

    /// One step multiplied by `step_scale`.
    pub fn sample(&self, rng: &mut RngStream) -> f64 {
        self.params.step_scale * self.raw(rng)
    }

    pub fn sample_vec(&self, d: usize, rng: &mut RngStream) -> Vec<f64> {
        (0..d).map(|_| self.sample(rng)).collect()
    }
}

/// One scaled Lévy step. Prefer [`LevySampler`] in loops.
pub fn levy_sample(params: &LevyParams, rng: &mut RngStream) -> Result<f64> {
    Ok(LevySampler::new(*params)?.sample(rng))
}
