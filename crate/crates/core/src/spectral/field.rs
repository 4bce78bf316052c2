use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;

use super::{fft, Grid, AREA};
use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Means smaller than this (relative to the largest coefficient) count as zero
/// when a negative-order operator checks its input.
const MEAN_FREE_TOL: f64 = 1e-14;

/// Fourier coefficients of a real scalar field on the 2D torus.
///
/// Storage is row-major in FFT order: index `a·n + b` holds wavevector
/// `(grid.wavenumber(a), grid.wavenumber(b))`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralField {
    grid: Grid,
    coeffs: Vec<Complex64>,
}

impl SpectralField {
    pub fn zeros(grid: Grid) -> Self {
        SpectralField {
            grid,
            coeffs: vec![ZERO; grid.n() * grid.n()],
        }
    }

    /// Constant field.
    pub fn constant(grid: Grid, value: f64) -> Self {
        let mut f = Self::zeros(grid);
        f.coeffs[0] = Complex64::new(value, 0.0);
        f
    }

    /// Builds a field from a coefficient rule evaluated on every resolved mode.
    ///
    /// The rule must respect `c(-ℓ) = conj(c(ℓ))` for the field to be real.
    pub fn from_fn(grid: Grid, coeff: impl Fn(i64, i64) -> Complex64) -> Self {
        let mut f = Self::zeros(grid);
        f.set_each(|l1, l2, _| coeff(l1, l2));
        f
    }

    /// Sets `φ̂_ℓ = c` and `φ̂_{-ℓ} = conj(c)`. Unresolved modes are ignored.
    pub fn set_mode(&mut self, l1: i64, l2: i64, c: Complex64) {
        if l1 == 0 && l2 == 0 {
            self.coeffs[0] = Complex64::new(c.re, 0.0);
            return;
        }
        if let (Some(p), Some(m)) = (self.grid.index(l1, l2), self.grid.index(-l1, -l2)) {
            self.coeffs[p] = c;
            self.coeffs[m] = c.conj();
        }
    }

    /// Coefficient at wavevector `ℓ`; zero outside the resolved set.
    pub fn coeff(&self, l1: i64, l2: i64) -> Complex64 {
        self.grid.index(l1, l2).map_or(ZERO, |i| self.coeffs[i])
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Raw coefficient access. Callers are responsible for Hermitian symmetry
    /// and for leaving the Nyquist modes at zero.
    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    /// Builds a field from raw FFT-ordered coefficients; Nyquist entries are cleared.
    pub fn from_coeffs(grid: Grid, coeffs: Vec<Complex64>) -> Result<Self> {
        let expected = grid.n() * grid.n();
        if coeffs.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                actual: coeffs.len(),
            });
        }
        let mut f = SpectralField { grid, coeffs };
        f.clear_nyquist();
        Ok(f)
    }

    /// Replaces every resolved coefficient by `rule(l1, l2, current)`.
    pub(crate) fn set_each(&mut self, rule: impl Fn(i64, i64, Complex64) -> Complex64) {
        let g = self.grid;
        let n = g.n();
        for a in 0..n {
            let l1 = g.wavenumber(a);
            let row_nyq = g.is_nyquist_index(a);
            for b in 0..n {
                let idx = a * n + b;
                if row_nyq || g.is_nyquist_index(b) {
                    self.coeffs[idx] = ZERO;
                } else {
                    self.coeffs[idx] = rule(l1, g.wavenumber(b), self.coeffs[idx]);
                }
            }
        }
    }

    /// New field with `multiplier(ℓ)·φ̂_ℓ` at every mode.
    pub fn map_modes(&self, multiplier: impl Fn(i64, i64) -> Complex64) -> Self {
        let mut out = self.clone();
        out.set_each(|l1, l2, c| multiplier(l1, l2) * c);
        out
    }

    /// New field with the real multiplier `m(ℓ)` applied mode-wise.
    pub fn scale_modes(&self, multiplier: impl Fn(i64, i64) -> f64) -> Self {
        let mut out = self.clone();
        out.set_each(|l1, l2, c| c * multiplier(l1, l2));
        out
    }

    fn clear_nyquist(&mut self) {
        let n = self.grid.n();
        let h = n / 2;
        for k in 0..n {
            self.coeffs[h * n + k] = ZERO;
            self.coeffs[k * n + h] = ZERO;
        }
    }

    /// Forward transform of `n × n` row-major samples (`x₁` is the row index).
    pub fn from_physical(grid: Grid, samples: &[f64]) -> Result<Self> {
        let n = grid.n();
        if samples.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                actual: samples.len(),
            });
        }
        let mut buf: Vec<Complex64> = samples.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        fft::fft2(&mut buf, n, false);
        let norm = 1.0 / (n * n) as f64;
        buf.iter_mut().for_each(|c| *c *= norm);
        let mut f = SpectralField { grid, coeffs: buf };
        f.clear_nyquist();
        Ok(f)
    }

    /// Values on the collocation grid, row-major.
    pub fn to_physical(&self) -> Vec<f64> {
        let mut buf = self.coeffs.clone();
        fft::fft2(&mut buf, self.grid.n(), true);
        buf.into_iter().map(|c| c.re).collect()
    }

    /// Exact trigonometric interpolation onto an `m × m` grid, `m ≥ n`.
    pub fn to_padded_physical(&self, m: usize) -> Vec<f64> {
        let mut buf = vec![ZERO; m * m];
        self.scatter_into(&mut buf, m, Complex64::new(1.0, 0.0));
        fft::fft2(&mut buf, m, true);
        buf.into_iter().map(|c| c.re).collect()
    }

    /// Evaluates two fields on an `m × m` grid with a single complex transform.
    pub fn to_padded_physical_pair(a: &Self, b: &Self, m: usize) -> (Vec<f64>, Vec<f64>) {
        let mut buf = vec![ZERO; m * m];
        a.scatter_into(&mut buf, m, Complex64::new(1.0, 0.0));
        b.scatter_into(&mut buf, m, Complex64::new(0.0, 1.0));
        fft::fft2(&mut buf, m, true);
        buf.into_iter().map(|c| (c.re, c.im)).unzip()
    }

    /// Adds `weight·φ̂_ℓ` at the padded position of every resolved mode.
    fn scatter_into(&self, buf: &mut [Complex64], m: usize, weight: Complex64) {
        assert!(m >= self.grid.n(), "padded size must not be below grid size");
        let g = self.grid;
        let n = g.n();
        let mi = m as i64;
        for a in 0..n {
            if g.is_nyquist_index(a) {
                continue;
            }
            let pa = g.wavenumber(a).rem_euclid(mi) as usize;
            for b in 0..n {
                if g.is_nyquist_index(b) {
                    continue;
                }
                let pb = g.wavenumber(b).rem_euclid(mi) as usize;
                buf[pa * m + pb] += weight * self.coeffs[a * n + b];
            }
        }
    }

    /// Projects `m × m` samples back onto the resolved modes of `grid`.
    pub fn from_padded_physical(grid: Grid, m: usize, samples: &[f64]) -> Self {
        assert_eq!(samples.len(), m * m);
        let mut buf: Vec<Complex64> = samples.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        fft::fft2(&mut buf, m, false);
        let norm = 1.0 / (m * m) as f64;
        let mi = m as i64;
        Self::from_fn(grid, |l1, l2| {
            let p = l1.rem_euclid(mi) as usize * m + l2.rem_euclid(mi) as usize;
            buf[p] * norm
        })
    }

    /// Projects two real `m × m` sample sets with one complex transform.
    pub fn from_padded_physical_pair(grid: Grid, m: usize, p: &[f64], q: &[f64]) -> (Self, Self) {
        assert_eq!(p.len(), m * m);
        assert_eq!(q.len(), m * m);
        let mut buf: Vec<Complex64> = p.iter().zip(q).map(|(&x, &y)| Complex64::new(x, y)).collect();
        fft::fft2(&mut buf, m, false);
        let norm = 1.0 / (m * m) as f64;
        let mi = m as i64;
        let at = |l1: i64, l2: i64| buf[l1.rem_euclid(mi) as usize * m + l2.rem_euclid(mi) as usize];
        // Z = P̂ + iQ̂ with P, Q real: P̂_ℓ = (Z_ℓ + conj Z_{-ℓ})/2, Q̂_ℓ = (Z_ℓ - conj Z_{-ℓ})/(2i)
        let first = Self::from_fn(grid, |l1, l2| (at(l1, l2) + at(-l1, -l2).conj()) * (0.5 * norm));
        let second = Self::from_fn(grid, |l1, l2| {
            (at(l1, l2) - at(-l1, -l2).conj()) * Complex64::new(0.0, -0.5 * norm)
        });
        (first, second)
    }

    /// Spatial mean, the `ℓ = 0` coefficient.
    pub fn mean(&self) -> f64 {
        self.coeffs[0].re
    }

    /// The field with its mean removed.
    pub fn fluctuation(&self) -> Self {
        let mut f = self.clone();
        f.coeffs[0] = ZERO;
        f
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest `|ℓ|` carrying a coefficient above `tol` in magnitude.
    pub fn active_radius(&self, tol: f64) -> f64 {
        let g = self.grid;
        g.modes()
            .filter(|&(l1, l2)| self.coeff(l1, l2).norm() > tol)
            .map(|(l1, l2)| ((l1 * l1 + l2 * l2) as f64).sqrt())
            .fold(0.0, f64::max)
    }

    /// `⟨φ, ψ⟩ = ∫ φψ dx = (2π)² Σ φ̂_ℓ conj(ψ̂_ℓ)`.
    pub fn inner(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.grid, other.grid);
        AREA * self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.re * b.re + a.im * b.im)
            .sum::<f64>()
    }

    pub fn l2_norm(&self) -> f64 {
        self.inner(self).sqrt()
    }

    /// Sobolev norm of order `kappa`.
    ///
    /// Homogeneous: `((2π)² Σ_{ℓ≠0} |ℓ|^{2κ} |φ̂_ℓ|²)^{1/2}`.
    /// Inhomogeneous: `(‖φ‖²_{L²} + ‖φ‖²_{Ḣ^κ})^{1/2}`.
    pub fn sobolev_norm(&self, kappa: f64, homogeneous: bool) -> f64 {
        let hom = self.homogeneous_sq(kappa);
        if homogeneous {
            hom.sqrt()
        } else {
            (self.inner(self) + hom).sqrt()
        }
    }

    fn homogeneous_sq(&self, kappa: f64) -> f64 {
        let g = self.grid;
        let n = g.n();
        let mut sum = 0.0;
        for a in 0..n {
            let l1 = g.wavenumber(a) as f64;
            for b in 0..n {
                let c = self.coeffs[a * n + b];
                if (a == 0 && b == 0) || (c.re == 0.0 && c.im == 0.0) {
                    continue;
                }
                let l2 = g.wavenumber(b) as f64;
                sum += (l1 * l1 + l2 * l2).powf(kappa) * c.norm_sqr();
            }
        }
        AREA * sum
    }

    /// `D^κ = (-Δ)^{κ/2}`: multiplies mode `ℓ ≠ 0` by `|ℓ|^κ`.
    ///
    /// The mean is passed through for `κ = 0` and dropped otherwise. Negative
    /// orders require mean-free input.
    pub fn fractional_laplacian(&self, kappa: f64) -> Result<Self> {
        if kappa == 0.0 {
            return Ok(self.clone());
        }
        if kappa < 0.0 {
            let mean = self.mean();
            if mean.abs() > MEAN_FREE_TOL * self.max_abs_coeff().max(1.0) {
                return Err(Error::NonZeroMean { kappa, mean });
            }
        }
        let half = kappa / 2.0;
        Ok(self.scale_modes(|l1, l2| {
            if l1 == 0 && l2 == 0 {
                0.0
            } else {
                ((l1 * l1 + l2 * l2) as f64).powf(half)
            }
        }))
    }

    /// Keeps the modes with `|ℓ| ≤ cutoff` (Euclidean), mean included.
    pub fn project_low(&self, cutoff: f64) -> Self {
        let c2 = cutoff * cutoff;
        self.scale_modes(|l1, l2| if ((l1 * l1 + l2 * l2) as f64) <= c2 { 1.0 } else { 0.0 })
    }

    /// `φ - project_low(φ, cutoff)`.
    pub fn project_high(&self, cutoff: f64) -> Self {
        let c2 = cutoff * cutoff;
        self.scale_modes(|l1, l2| if ((l1 * l1 + l2 * l2) as f64) <= c2 { 0.0 } else { 1.0 })
    }

    /// `self += alpha·other`.
    pub fn axpy(&mut self, alpha: f64, other: &Self) {
        debug_assert_eq!(self.grid, other.grid);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b * alpha;
        }
    }

    /// Max-norm of the collocation values.
    pub fn max_abs_physical(&self) -> f64 {
        self.to_physical().iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

impl Add for &SpectralField {
    type Output = SpectralField;
    fn add(self, rhs: &SpectralField) -> SpectralField {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &SpectralField {
    type Output = SpectralField;
    fn sub(self, rhs: &SpectralField) -> SpectralField {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&SpectralField> for SpectralField {
    fn add_assign(&mut self, rhs: &SpectralField) {
        self.axpy(1.0, rhs);
    }
}

impl SubAssign<&SpectralField> for SpectralField {
    fn sub_assign(&mut self, rhs: &SpectralField) {
        self.axpy(-1.0, rhs);
    }
}

impl Mul<f64> for &SpectralField {
    type Output = SpectralField;
    fn mul(self, rhs: f64) -> SpectralField {
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(|c| *c *= rhs);
        out
    }
}

impl Neg for &SpectralField {
    type Output = SpectralField;
    fn neg(self) -> SpectralField {
        self * -1.0
    }
}
