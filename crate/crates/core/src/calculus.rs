//! Vector calculus on the torus: derivatives, Helmholtz projection, potential
//! reconstruction, dealiased advection and exact off-grid evaluation.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::spectral::{Grid, SpectralField, VectorField};
use crate::{Error, Result};

/// Max-norm of `∇⊥·u` below which a field counts as curl-free.
pub const CURL_FREE_TOL: f64 = 1e-10;

/// Particle positions on the torus, each coordinate reduced to `[0, 2π)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    positions: Vec<[f64; 2]>,
}

impl PointSet {
    pub fn new(positions: impl IntoIterator<Item = [f64; 2]>) -> Self {
        PointSet {
            positions: positions.into_iter().map(wrap).collect(),
        }
    }

    pub fn positions(&self) -> &[[f64; 2]] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

fn wrap(p: [f64; 2]) -> [f64; 2] {
    let r = |x: f64| {
        let y = x.rem_euclid(TAU);
        // rem_euclid can round up to exactly 2π for tiny negative inputs
        if y >= TAU {
            0.0
        } else {
            y
        }
    };
    [r(p[0]), r(p[1])]
}

/// `∂φ/∂xⱼ`, coefficients `iℓⱼ φ̂_ℓ`.
pub fn partial(f: &SpectralField, axis: usize) -> SpectralField {
    assert!(axis < 2);
    f.map_modes(|l1, l2| {
        let l = if axis == 0 { l1 } else { l2 };
        Complex64::new(0.0, l as f64)
    })
}

pub fn gradient(f: &SpectralField) -> VectorField {
    VectorField {
        u1: partial(f, 0),
        u2: partial(f, 1),
    }
}

/// `δ = ∇·u`.
pub fn divergence(u: &VectorField) -> SpectralField {
    let mut d = partial(&u.u1, 0);
    d += &partial(&u.u2, 1);
    d
}

/// `ω = ∇⊥·u = ∂₁u² - ∂₂u¹`.
pub fn perp_curl(u: &VectorField) -> SpectralField {
    let mut w = partial(&u.u2, 0);
    w -= &partial(&u.u1, 1);
    w
}

/// `Δφ`, multiplier `-|ℓ|²`.
pub fn laplacian(f: &SpectralField) -> SpectralField {
    f.scale_modes(|l1, l2| -((l1 * l1 + l2 * l2) as f64))
}

pub fn vector_laplacian(u: &VectorField) -> VectorField {
    u.map(laplacian)
}

/// Mean plus the gradient part of the Helmholtz decomposition of `u`.
///
/// Mode `ℓ ≠ 0` maps to `ℓ (ℓ·û_ℓ)/|ℓ|²`; the mean is kept.
pub fn curl_free_projection(u: &VectorField) -> VectorField {
    let g = u.grid();
    let mut out = u.clone();
    let n = g.n();
    let (c1, c2) = (u.u1.coeffs(), u.u2.coeffs());
    let mut p1 = c1.to_vec();
    let mut p2 = c2.to_vec();
    for a in 0..n {
        let l1 = g.wavenumber(a) as f64;
        for b in 0..n {
            let idx = a * n + b;
            if idx == 0 {
                continue;
            }
            let l2 = g.wavenumber(b) as f64;
            let k2 = l1 * l1 + l2 * l2;
            let dot = c1[idx] * l1 + c2[idx] * l2;
            p1[idx] = dot * (l1 / k2);
            p2[idx] = dot * (l2 / k2);
        }
    }
    out.u1.coeffs_mut().copy_from_slice(&p1);
    out.u2.coeffs_mut().copy_from_slice(&p2);
    out
}

/// Mean-free potential `φ` with `∇φ = u`, for mean-free curl-free `u`.
pub fn potential_from_gradient(u: &VectorField) -> Result<SpectralField> {
    let curl = perp_curl(u).max_abs_physical();
    if curl > CURL_FREE_TOL {
        return Err(Error::NotCurlFree { curl });
    }
    let [m1, m2] = u.mean();
    if m1.hypot(m2) > CURL_FREE_TOL {
        // a nonzero constant is curl-free but has no periodic potential
        return Err(Error::NonZeroMean {
            kappa: -1.0,
            mean: m1.hypot(m2),
        });
    }
    let g = u.grid();
    Ok(SpectralField::from_fn(g, |l1, l2| {
        if l1 == 0 && l2 == 0 {
            return Complex64::new(0.0, 0.0);
        }
        let dot = u.u1.coeff(l1, l2) * l1 as f64 + u.u2.coeff(l1, l2) * l2 as f64;
        dot * Complex64::new(0.0, -1.0 / (l1 * l1 + l2 * l2) as f64)
    }))
}

/// Dealiased `(a·∇)b`.
pub fn advection(a: &VectorField, b: &VectorField) -> VectorField {
    let g = a.grid();
    let m = g.padded_size();
    let (a1, a2) = SpectralField::to_padded_physical_pair(&a.u1, &a.u2, m);
    let (d11, d21) = SpectralField::to_padded_physical_pair(&partial(&b.u1, 0), &partial(&b.u1, 1), m);
    let (d12, d22) = SpectralField::to_padded_physical_pair(&partial(&b.u2, 0), &partial(&b.u2, 1), m);
    let c1: Vec<f64> = (0..m * m).map(|i| a1[i] * d11[i] + a2[i] * d21[i]).collect();
    let c2: Vec<f64> = (0..m * m).map(|i| a1[i] * d12[i] + a2[i] * d22[i]).collect();
    let (u1, u2) = SpectralField::from_padded_physical_pair(g, m, &c1, &c2);
    VectorField { u1, u2 }
}

/// `|∇u|² = Σᵢⱼ (∂ᵢuʲ)²`, dealiased.
pub fn gradient_norm_sq(u: &VectorField) -> SpectralField {
    let g = u.grid();
    let m = g.padded_size();
    let (d11, d21) = SpectralField::to_padded_physical_pair(&partial(&u.u1, 0), &partial(&u.u1, 1), m);
    let (d12, d22) = SpectralField::to_padded_physical_pair(&partial(&u.u2, 0), &partial(&u.u2, 1), m);
    let s: Vec<f64> = (0..m * m)
        .map(|i| d11[i] * d11[i] + d21[i] * d21[i] + d12[i] * d12[i] + d22[i] * d22[i])
        .collect();
    SpectralField::from_padded_physical(g, m, &s)
}

/// `|u|²`, dealiased.
pub fn speed_sq(u: &VectorField) -> SpectralField {
    let g = u.grid();
    let m = g.padded_size();
    let (a, b) = SpectralField::to_padded_physical_pair(&u.u1, &u.u2, m);
    let s: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x * x + y * y).collect();
    SpectralField::from_padded_physical(g, m, &s)
}

/// Sums the Fourier series of `f` at each point.
pub fn evaluate_at(f: &SpectralField, pts: &PointSet) -> Vec<f64> {
    let mut out = evaluate_many(&[f], pts);
    out.pop().unwrap_or_default()
}

/// Evaluates several fields at the same points, sharing the phase tables.
///
/// Returns one vector per field.
pub fn evaluate_many(fields: &[&SpectralField], pts: &PointSet) -> Vec<Vec<f64>> {
    let Some(first) = fields.first() else {
        return Vec::new();
    };
    let g = first.grid();
    let n = g.n();
    let mut out = vec![Vec::with_capacity(pts.len()); fields.len()];
    let mut e1 = vec![Complex64::new(0.0, 0.0); n];
    let mut e2 = vec![Complex64::new(0.0, 0.0); n];
    for p in pts.positions() {
        phases(&g, p[0], &mut e1);
        phases(&g, p[1], &mut e2);
        for (f, dst) in fields.iter().zip(out.iter_mut()) {
            let c = f.coeffs();
            let mut total = 0.0;
            for a in 0..n {
                let row = &c[a * n..(a + 1) * n];
                let s: Complex64 = row.iter().zip(&e2).map(|(x, y)| x * y).sum();
                total += (e1[a] * s).re;
            }
            dst.push(total);
        }
    }
    out
}

fn phases(g: &Grid, x: f64, out: &mut [Complex64]) {
    for (idx, e) in out.iter_mut().enumerate() {
        let (s, c) = (g.wavenumber(idx) as f64 * x).sin_cos();
        *e = Complex64::new(c, s);
    }
}
