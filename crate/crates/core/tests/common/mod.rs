//! Test-side oracles. Everything here works from raw coefficient maps by
//! direct summation, independent of the transforms and products under test.
#![allow(dead_code)]

use std::f64::consts::PI;

use ks2d::{Grid, SpectralField, VectorField};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Real field with Gaussian coefficients on `|ℓ| ≤ k_max`, optionally without mean.
pub fn random_scalar(g: Grid, k_max: f64, mean_free: bool, rng: &mut ChaCha8Rng) -> SpectralField {
    let mut f = SpectralField::zeros(g);
    let k = k_max.floor() as i64;
    for l1 in 0..=k {
        for l2 in -k..=k {
            if (l1 == 0 && l2 < 0) || ((l1 * l1 + l2 * l2) as f64).sqrt() > k_max {
                continue;
            }
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            if l1 == 0 && l2 == 0 {
                if !mean_free {
                    f.set_mode(0, 0, Complex64::new(re, 0.0));
                }
            } else {
                f.set_mode(l1, l2, Complex64::new(re, im));
            }
        }
    }
    f
}

pub fn random_vector(g: Grid, k_max: f64, mean_free: bool, rng: &mut ChaCha8Rng) -> VectorField {
    VectorField::new(random_scalar(g, k_max, mean_free, rng), random_scalar(g, k_max, mean_free, rng)).unwrap()
}

/// Curl-free field `∇φ`, with the gradient taken coefficient-wise here.
pub fn random_curl_free(g: Grid, k_max: f64, rng: &mut ChaCha8Rng) -> VectorField {
    let phi = random_scalar(g, k_max, true, rng);
    VectorField::new(
        filter(&phi, |l1, _| Complex64::new(0.0, l1 as f64)),
        filter(&phi, |_, l2| Complex64::new(0.0, l2 as f64)),
    )
    .unwrap()
}

/// Resolved modes of a grid, `|ℓ_i| ≤ n/2 - 1`.
pub fn modes(g: Grid) -> Vec<(i64, i64)> {
    let k = g.kmax();
    let mut v = Vec::new();
    for l1 in -k..=k {
        for l2 in -k..=k {
            v.push((l1, l2));
        }
    }
    v
}

/// Coefficient-wise multiplier applied by walking the mode list.
pub fn filter(f: &SpectralField, m: impl Fn(i64, i64) -> Complex64) -> SpectralField {
    let g = f.grid();
    let mut out = SpectralField::zeros(g);
    for (l1, l2) in modes(g) {
        let c = f.coeff(l1, l2) * m(l1, l2);
        let idx = g.index(l1, l2).unwrap();
        out.coeffs_mut()[idx] = c;
    }
    out
}

pub fn dx(f: &SpectralField, axis: usize) -> SpectralField {
    filter(f, |l1, l2| Complex64::new(0.0, if axis == 0 { l1 } else { l2 } as f64))
}

pub fn low(f: &SpectralField, n: f64) -> SpectralField {
    filter(f, |l1, l2| {
        if (((l1 * l1 + l2 * l2) as f64).sqrt()) <= n {
            1.0.into()
        } else {
            0.0.into()
        }
    })
}

pub fn high(f: &SpectralField, n: f64) -> SpectralField {
    filter(f, |l1, l2| {
        if (((l1 * l1 + l2 * l2) as f64).sqrt()) > n {
            1.0.into()
        } else {
            0.0.into()
        }
    })
}

pub fn vlow(u: &VectorField, n: f64) -> VectorField {
    VectorField::new(low(&u.u1, n), low(&u.u2, n)).unwrap()
}

pub fn vhigh(u: &VectorField, n: f64) -> VectorField {
    VectorField::new(high(&u.u1, n), high(&u.u2, n)).unwrap()
}

/// Values of the Fourier series on an `m × m` uniform grid by direct
/// separable summation, `O(m³)`.
pub fn synthesize(f: &SpectralField, m: usize) -> Vec<f64> {
    let g = f.grid();
    let k = g.kmax();
    let width = (2 * k + 1) as usize;
    let phase = |l: i64, i: usize| {
        let x = 2.0 * PI * i as f64 / m as f64;
        Complex64::new((l as f64 * x).cos(), (l as f64 * x).sin())
    };
    // partial[l1][j] = Σ_{l2} c(l1, l2) e^{i l2 y_j}
    let mut partial = vec![Complex64::new(0.0, 0.0); width * m];
    for l1 in -k..=k {
        let row = (l1 + k) as usize;
        for l2 in -k..=k {
            let c = f.coeff(l1, l2);
            if c == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..m {
                partial[row * m + j] += c * phase(l2, j);
            }
        }
    }
    let mut out = vec![0.0; m * m];
    for i in 0..m {
        for l1 in -k..=k {
            let e = phase(l1, i);
            let row = (l1 + k) as usize;
            for j in 0..m {
                out[i * m + j] += (e * partial[row * m + j]).re;
            }
        }
    }
    out
}

/// `∫ f dx` on the periodic box by the rectangle rule on `m × m` samples.
pub fn quad(samples: &[f64]) -> f64 {
    let m = (samples.len() as f64).sqrt() as usize;
    let w = (2.0 * PI / m as f64).powi(2);
    w * samples.iter().sum::<f64>()
}

/// Samples of both components and their four first derivatives.
pub struct PhysicalVector {
    pub u: [Vec<f64>; 2],
    /// `du[j][i] = ∂ᵢ uʲ`
    pub du: [[Vec<f64>; 2]; 2],
}

pub fn physical(u: &VectorField, m: usize) -> PhysicalVector {
    let s = |f: &SpectralField| synthesize(f, m);
    PhysicalVector {
        u: [s(&u.u1), s(&u.u2)],
        du: [[s(&dx(&u.u1, 0)), s(&dx(&u.u1, 1))], [s(&dx(&u.u2, 0)), s(&dx(&u.u2, 1))]],
    }
}

/// `⟨(a·∇)b, c⟩` by quadrature of direct-summation samples.
pub fn trilinear(a: &PhysicalVector, b: &PhysicalVector, c: &PhysicalVector) -> f64 {
    let len = a.u[0].len();
    let vals: Vec<f64> = (0..len)
        .map(|p| {
            (0..2)
                .map(|j| (a.u[0][p] * b.du[j][0][p] + a.u[1][p] * b.du[j][1][p]) * c.u[j][p])
                .sum::<f64>()
        })
        .collect();
    quad(&vals)
}

/// `½⟨∇·u, |u|²⟩` by quadrature.
pub fn transport(u: &PhysicalVector) -> f64 {
    let len = u.u[0].len();
    let vals: Vec<f64> = (0..len)
        .map(|p| 0.5 * (u.du[0][0][p] + u.du[1][1][p]) * (u.u[0][p].powi(2) + u.u[1][p].powi(2)))
        .collect();
    quad(&vals)
}

/// Coefficients of `a·b` by brute-force convolution over resolved modes,
/// restricted to resolved output modes.
pub fn convolve(a: &SpectralField, b: &SpectralField) -> SpectralField {
    let g = a.grid();
    let k = g.kmax();
    let nz = |f: &SpectralField| -> Vec<((i64, i64), Complex64)> {
        modes(g)
            .into_iter()
            .map(|(l1, l2)| ((l1, l2), f.coeff(l1, l2)))
            .filter(|(_, c)| c.norm() > 0.0)
            .collect()
    };
    let (na, nb) = (nz(a), nz(b));
    let mut out = SpectralField::zeros(g);
    for &((p1, p2), ca) in &na {
        for &((q1, q2), cb) in &nb {
            let (l1, l2) = (p1 + q1, p2 + q2);
            if l1.abs() > k || l2.abs() > k {
                continue;
            }
            let idx = g.index(l1, l2).unwrap();
            out.coeffs_mut()[idx] += ca * cb;
        }
    }
    out
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}
