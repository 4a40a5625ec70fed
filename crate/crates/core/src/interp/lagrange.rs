use crate::error::{Error, Result};
use crate::exact::wrap_periodic;
use crate::field::NodalField;
use crate::grid::Grid1D;
use crate::real::Real;

pub const MAX_LAGRANGE_DEGREE: usize = 9;

/// Consecutive grid offsets of a degree-`l` interpolation stencil.
///
/// Offsets are relative to the right endpoint `r` of the interval
/// `[x_{r-1}, x_r]` that contains the departure point and start at
/// `-floor((l - 1) / 2) - 1`. Odd degrees are centred on the interval; even
/// degrees are centred on `x_r`, so for `l = 2` the stencil is
/// `{r - 1, r, r + 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LagrangeStencil {
    degree: usize,
    first: i64,
}

impl LagrangeStencil {
    pub fn new(degree: usize) -> Result<Self> {
        if !(1..=MAX_LAGRANGE_DEGREE).contains(&degree) {
            return Err(Error::config(
                "degree",
                format!("Lagrange degree must be in 1..={MAX_LAGRANGE_DEGREE}, got {degree}"),
            ));
        }
        let first = -((degree as i64 - 1) / 2) - 1;
        Ok(Self { degree, first })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn offsets(&self) -> impl Iterator<Item = i64> {
        self.first..=self.first + self.degree as i64
    }

    /// Interpolation weights for the point `a` grid spacings to the left of
    /// `x_r`, `0 <= a < 1`. `out` must hold `degree + 1` entries.
    pub fn weights<T: Real>(&self, a: T, out: &mut [T]) {
        debug_assert_eq!(out.len(), self.degree + 1);
        let nodes: Vec<i64> = self.offsets().collect();
        for (k, w) in out.iter_mut().enumerate() {
            let mut num = T::one();
            let mut den = 1i64;
            for (m, &om) in nodes.iter().enumerate() {
                if m != k {
                    num *= -a - T::from_i64(om);
                    den *= nodes[k] - om;
                }
            }
            *w = num / T::from_i64(den);
        }
    }
}

/// Evaluates the degree-`l` Lagrange interpolant of `field` at `departure`.
pub fn lagrange_eval<T: Real>(field: &NodalField<T>, degree: usize, departure: T) -> Result<T> {
    let stencil = LagrangeStencil::new(degree)?;
    if !departure.is_finite() {
        return Err(Error::Argument("departure point must be finite".into()));
    }
    let grid = field.grid;
    let x = wrap_periodic(departure);
    let pos = (x - Grid1D::<T>::x_left()) / grid.h();

    let nearest = pos.round().to_f64() as i64;
    let j = grid.wrap_index(nearest);
    if grid.point(j) == x {
        return Ok(field.values[j]);
    }

    let r = pos.ceil();
    let a = r - pos;
    let r = r.to_f64() as i64;
    let mut w = vec![T::zero(); degree + 1];
    stencil.weights(a, &mut w);
    Ok(stencil
        .offsets()
        .zip(&w)
        .map(|(o, &wk)| wk * field.values[grid.wrap_index(r + o)])
        .sum())
}
