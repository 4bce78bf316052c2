//! Fourier representation of real periodic fields on the torus `[0, 2π)²`.
//!
//! Coefficients follow the normalization `φ̂_ℓ = (2π)⁻² ∫ φ e^{-iℓ·x} dx`, so
//! `φ(x) = Σ φ̂_ℓ e^{iℓ·x}` and `‖φ‖²_{L²} = (2π)² Σ |φ̂_ℓ|²`. The resolved
//! wavevectors are `|ℓᵢ| ≤ n/2 - 1`; the Nyquist row and column are always zero.

mod field;
mod grid;
mod vector;

pub(crate) mod fft;

pub use field::SpectralField;
pub use grid::Grid;
pub use vector::VectorField;

/// `(2π)²`, the area of the periodic box.
pub const AREA: f64 = 4.0 * std::f64::consts::PI * std::f64::consts::PI;

/// Pointwise product `a·b` with exact coefficients on every resolved mode.
///
/// Both factors are evaluated on a `3n/2` grid so that no quadratic
/// interaction aliases back onto a retained wavevector.
pub fn dealiased_product(a: &SpectralField, b: &SpectralField) -> crate::Result<SpectralField> {
    let grid = a.grid();
    grid.check_same(&b.grid())?;
    let m = grid.padded_size();
    let (pa, pb) = SpectralField::to_padded_physical_pair(a, b, m);
    let prod: Vec<f64> = pa.iter().zip(&pb).map(|(x, y)| x * y).collect();
    Ok(SpectralField::from_padded_physical(grid, m, &prod))
}
