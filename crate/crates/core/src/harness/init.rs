use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::calculus::gradient;
use crate::spectral::{Grid, SpectralField, VectorField};
use crate::{Error, Result};

/// Initial-condition recipe.
#[derive(Clone, Debug, PartialEq)]
pub enum InitSpec {
    /// One of [`NAMED_FIELDS`], scaled by `amplitude`.
    Named { name: String, amplitude: f64 },
    /// `∇φ` for a Gaussian random mean-free potential on `1 ≤ |ℓ| ≤ k_max`,
    /// rescaled so that `‖∇φ‖_{L²} = amplitude`.
    RandomCurlFree { k_max: f64, amplitude: f64, seed: u64 },
}

/// Names accepted by [`InitSpec::Named`].
pub const NAMED_FIELDS: [&str; 5] = ["zero", "constant", "sin_x1", "grad_sin_sin", "grad_cos_cos"];

pub fn build_initial(spec: &InitSpec, grid: Grid) -> Result<VectorField> {
    match spec {
        InitSpec::Named { name, amplitude: a } => named(name, *a, grid),
        InitSpec::RandomCurlFree { k_max, amplitude, seed } => random_curl_free(grid, *k_max, *amplitude, *seed),
    }
}

fn named(name: &str, a: f64, grid: Grid) -> Result<VectorField> {
    let vf = |f1: &dyn Fn(f64, f64) -> f64, f2: &dyn Fn(f64, f64) -> f64| {
        VectorField::from_physical(grid, &grid.sample(f1), &grid.sample(f2))
    };
    match name {
        "zero" => Ok(VectorField::zeros(grid)),
        "constant" => Ok(VectorField::constant(grid, [a, 0.0])),
        "sin_x1" => vf(&|x, _| a * x.sin(), &|_, _| 0.0),
        // ∇(a sin x₁ sin x₂)
        "grad_sin_sin" => vf(&|x, y| a * x.cos() * y.sin(), &|x, y| a * x.sin() * y.cos()),
        // ∇(a cos x₁ cos x₂)
        "grad_cos_cos" => vf(&|x, y| -a * x.sin() * y.cos(), &|x, y| -a * x.cos() * y.sin()),
        other => Err(Error::InitialCondition(format!(
            "unknown field `{other}`; expected one of {NAMED_FIELDS:?} or `random`"
        ))),
    }
}

fn random_curl_free(grid: Grid, k_max: f64, amplitude: f64, seed: u64) -> Result<VectorField> {
    let half = (grid.n() / 2) as f64;
    if !(k_max >= 1.0 && k_max < half) {
        return Err(Error::InitialCondition(format!(
            "k_max = {k_max} must lie in [1, {half}) for n = {}",
            grid.n()
        )));
    }
    if !(amplitude >= 0.0 && amplitude.is_finite()) {
        return Err(Error::InitialCondition(format!("amplitude must be non-negative, got {amplitude}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut phi = SpectralField::zeros(grid);
    let k = k_max.floor() as i64;
    // one draw per ±ℓ pair, upper half-plane in a fixed order
    for l1 in 0..=k {
        for l2 in -k..=k {
            if l1 == 0 && l2 <= 0 {
                continue;
            }
            let r = ((l1 * l1 + l2 * l2) as f64).sqrt();
            if r > k_max {
                continue;
            }
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            phi.set_mode(l1, l2, Complex64::new(re, im));
        }
    }
    let u = gradient(&phi);
    let norm = u.l2_norm();
    Ok(if norm > 0.0 { &u * (amplitude / norm) } else { u })
}
