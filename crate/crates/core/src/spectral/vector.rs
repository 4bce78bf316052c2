use std::ops::{Add, Mul, Sub};

use super::{Grid, SpectralField, AREA};
use crate::Result;

/// A planar vector field `u = (u¹, u²)` stored spectrally.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    pub u1: SpectralField,
    pub u2: SpectralField,
}

impl VectorField {
    pub fn new(u1: SpectralField, u2: SpectralField) -> Result<Self> {
        u1.grid().check_same(&u2.grid())?;
        Ok(VectorField { u1, u2 })
    }

    pub fn zeros(grid: Grid) -> Self {
        VectorField {
            u1: SpectralField::zeros(grid),
            u2: SpectralField::zeros(grid),
        }
    }

    pub fn constant(grid: Grid, c: [f64; 2]) -> Self {
        VectorField {
            u1: SpectralField::constant(grid, c[0]),
            u2: SpectralField::constant(grid, c[1]),
        }
    }

    pub fn from_physical(grid: Grid, u1: &[f64], u2: &[f64]) -> Result<Self> {
        Ok(VectorField {
            u1: SpectralField::from_physical(grid, u1)?,
            u2: SpectralField::from_physical(grid, u2)?,
        })
    }

    /// Collocation values of both components.
    pub fn to_physical(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.grid().n();
        SpectralField::to_padded_physical_pair(&self.u1, &self.u2, n)
    }

    pub fn grid(&self) -> Grid {
        self.u1.grid()
    }

    /// Spatial mean `ū`.
    pub fn mean(&self) -> [f64; 2] {
        [self.u1.mean(), self.u2.mean()]
    }

    /// Fluctuation `ũ = u - ū`.
    pub fn fluctuation(&self) -> Self {
        self.map(SpectralField::fluctuation)
    }

    pub fn map(&self, f: impl Fn(&SpectralField) -> SpectralField) -> Self {
        VectorField {
            u1: f(&self.u1),
            u2: f(&self.u2),
        }
    }

    pub fn try_map(&self, f: impl Fn(&SpectralField) -> Result<SpectralField>) -> Result<Self> {
        Ok(VectorField {
            u1: f(&self.u1)?,
            u2: f(&self.u2)?,
        })
    }

    pub fn inner(&self, other: &Self) -> f64 {
        self.u1.inner(&other.u1) + self.u2.inner(&other.u2)
    }

    pub fn l2_norm(&self) -> f64 {
        self.inner(self).sqrt()
    }

    /// Component-wise Sobolev norm, `(‖u¹‖² + ‖u²‖²)^{1/2}`.
    pub fn sobolev_norm(&self, kappa: f64, homogeneous: bool) -> f64 {
        let a = self.u1.sobolev_norm(kappa, homogeneous);
        let b = self.u2.sobolev_norm(kappa, homogeneous);
        a.hypot(b)
    }

    pub fn project_low(&self, cutoff: f64) -> Self {
        self.map(|f| f.project_low(cutoff))
    }

    pub fn project_high(&self, cutoff: f64) -> Self {
        self.map(|f| f.project_high(cutoff))
    }

    pub fn fractional_laplacian(&self, kappa: f64) -> Result<Self> {
        self.try_map(|f| f.fractional_laplacian(kappa))
    }

    pub fn is_finite(&self) -> bool {
        self.u1.is_finite() && self.u2.is_finite()
    }

    pub fn axpy(&mut self, alpha: f64, other: &Self) {
        self.u1.axpy(alpha, &other.u1);
        self.u2.axpy(alpha, &other.u2);
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.u1.max_abs_coeff().max(self.u2.max_abs_coeff())
    }

    /// `(2π)² |ū|²`, the mean's share of `‖u‖²_{L²}`.
    pub fn mean_energy(&self) -> f64 {
        let [a, b] = self.mean();
        AREA * (a * a + b * b)
    }
}

impl Add for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        VectorField {
            u1: &self.u1 + &rhs.u1,
            u2: &self.u2 + &rhs.u2,
        }
    }
}

impl Sub for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        VectorField {
            u1: &self.u1 - &rhs.u1,
            u2: &self.u2 - &rhs.u2,
        }
    }
}

impl Mul<f64> for &VectorField {
    type Output = VectorField;
    fn mul(self, rhs: f64) -> VectorField {
        VectorField {
            u1: &self.u1 * rhs,
            u2: &self.u2 * rhs,
        }
    }
}
