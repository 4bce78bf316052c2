use std::f64::consts::PI;

use crate::{Error, Result};

/// Uniform `n × n` collocation grid on `[0, 2π)²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Grid {
    n: usize,
}

impl Grid {
    pub fn new(n: usize) -> Result<Self> {
        if n < 8 || !n.is_multiple_of(2) {
            return Err(Error::GridSize(n));
        }
        Ok(Grid { n })
    }

    /// Points per axis.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spacing(&self) -> f64 {
        2.0 * PI / self.n as f64
    }

    /// Largest resolved wavenumber magnitude per axis, `n/2 - 1`.
    pub fn kmax(&self) -> i64 {
        (self.n / 2) as i64 - 1
    }

    /// Size of the zero-padded grid used for quadratic products.
    pub fn padded_size(&self) -> usize {
        3 * self.n / 2
    }

    /// Signed wavenumber stored at FFT index `idx`.
    #[inline]
    pub fn wavenumber(&self, idx: usize) -> i64 {
        if idx <= self.n / 2 {
            idx as i64
        } else {
            idx as i64 - self.n as i64
        }
    }

    #[inline]
    pub fn is_resolved(&self, l1: i64, l2: i64) -> bool {
        let k = self.kmax();
        l1.abs() <= k && l2.abs() <= k
    }

    /// FFT index holding wavenumber `l` along one axis, if resolved.
    #[inline]
    pub fn axis_index(&self, l: i64) -> Option<usize> {
        if l.abs() > self.kmax() {
            None
        } else {
            Some(l.rem_euclid(self.n as i64) as usize)
        }
    }

    /// Flat coefficient index of wavevector `(l1, l2)`, if resolved.
    pub fn index(&self, l1: i64, l2: i64) -> Option<usize> {
        Some(self.axis_index(l1)? * self.n + self.axis_index(l2)?)
    }

    #[inline]
    pub fn is_nyquist_index(&self, idx: usize) -> bool {
        idx == self.n / 2
    }

    /// Coordinate of collocation index `i` along either axis.
    pub fn coordinate(&self, i: usize) -> f64 {
        i as f64 * self.spacing()
    }

    /// Sample `f(x₁, x₂)` on the grid in row-major order (`x₁` is the row).
    pub fn sample(&self, f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
        let n = self.n;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            let x1 = self.coordinate(i);
            for j in 0..n {
                out.push(f(x1, self.coordinate(j)));
            }
        }
        out
    }

    /// All resolved wavevectors in storage order (Nyquist excluded).
    pub fn modes(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        let n = self.n;
        (0..n)
            .filter(move |&a| !self.is_nyquist_index(a))
            .flat_map(move |a| {
                (0..n)
                    .filter(move |&b| !self.is_nyquist_index(b))
                    .map(move |b| (self.wavenumber(a), self.wavenumber(b)))
            })
    }

    pub(crate) fn check_same(&self, other: &Grid) -> Result<()> {
        if self.n != other.n {
            return Err(Error::GridMismatch(self.n, other.n));
        }
        Ok(())
    }
}
