use crate::error::{check_len, check_range, Result};
use crate::operators::LevySampler;
use crate::rng::RngStream;

/// Isotropic Gaussian perturbation `x + σ ε`.
pub fn mutate_gaussian(x: &[f64], sigma: f64, rng: &mut RngStream) -> Vec<f64> {
    x.iter().map(|&xi| xi + sigma * rng.gaussian()).collect()
}

/// Componentwise Lévy flight `x + α L`.
pub fn mutate_levy(x: &[f64], sampler: &LevySampler, rng: &mut RngStream) -> Vec<f64> {
    x.iter().map(|&xi| xi + sampler.sample(rng)).collect()
}

/// Pattern-search move `x + (x_new − x)`.
///
/// The increment telescopes, so the result is `new_move` itself; it is
/// returned verbatim rather than recomputed in floating point.
pub fn mutate_pattern(x: &[f64], new_move: &[f64]) -> Result<Vec<f64>> {
    check_len(x.len(), new_move.len())?;
    Ok(new_move.to_vec())
}

/// The `2d` coordinate moves `x ± δ_i e_i`, in the order `+e_0, −e_0, +e_1, …`.
pub fn pattern_directions(x: &[f64], step_sizes: &[f64]) -> Result<Vec<Vec<f64>>> {
    check_len(x.len(), step_sizes.len())?;
    let mut out = Vec::with_capacity(2 * x.len());
    for (i, &delta) in step_sizes.iter().enumerate() {
        for sign in [1.0, -1.0] {
            let mut y = x.to_vec();
            y[i] += sign * delta;
            out.push(y);
        }
    }
    Ok(out)
}

/// Differential mutation `x_r + F (x_p − x_q)` with `F ∈ [0, 2]`.
pub fn mutate_de(x_r: &[f64], x_p: &[f64], x_q: &[f64], f: f64) -> Result<Vec<f64>> {
    check_range("F", f, 0.0, 2.0, "[0, 2]")?;
    check_len(x_r.len(), x_p.len())?;
    check_len(x_r.len(), x_q.len())?;
    Ok(x_r
        .iter()
        .zip(x_p.iter().zip(x_q))
        .map(|(&r, (&p, &q))| r + f * (p - q))
        .collect())
}
