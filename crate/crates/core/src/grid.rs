use crate::error::{Error, Result};
use crate::real::Real;

/// Uniform periodic grid on `[-1, 1)`.
///
/// Point `j` is `x_j = -1 + j h` for `j < n`; the right endpoint is not
/// stored, so periodicity is purely an index-wrap convention and an integer
/// shift of a field is an exact permutation. Cell `i` is `[x_i, x_i + h)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid1D<T> {
    n: usize,
    h: T,
}

impl<T: Real> Grid1D<T> {
    pub const X_LEFT: f64 = -1.0;
    pub const LENGTH: f64 = 2.0;

    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::config("n", "grid needs at least one point"));
        }
        let h = Self::length() / T::from_usize(n);
        Ok(Self { n, h })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn h(&self) -> T {
        self.h
    }

    #[inline]
    pub fn x_left() -> T {
        T::from_f64(Self::X_LEFT)
    }

    #[inline]
    pub fn length() -> T {
        T::from_f64(Self::LENGTH)
    }

    #[inline]
    pub fn point(&self, j: usize) -> T {
        Self::x_left() + T::from_usize(j) * self.h
    }

    pub fn points(&self) -> impl Iterator<Item = T> + '_ {
        (0..self.n).map(move |j| self.point(j))
    }

    /// Index of `j + offset` modulo `n`.
    #[inline]
    pub fn wrap_index(&self, j: i64) -> usize {
        j.rem_euclid(self.n as i64) as usize
    }
}
