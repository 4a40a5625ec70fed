//! Nodal and modal (Legendre) representations of a periodic function.

use crate::error::{Error, Result};
use crate::grid::Grid1D;
use crate::initial::InitialCondition;
use crate::quadrature::{legendre_all, GaussLegendre};
use crate::real::Real;

/// `n` samples at the grid points.
#[derive(Clone, Debug, PartialEq)]
pub struct NodalField<T> {
    pub grid: Grid1D<T>,
    pub values: Vec<T>,
}

impl<T: Real> NodalField<T> {
    pub fn new(grid: Grid1D<T>, values: Vec<T>) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(Error::Argument(format!(
                "{} values for a grid of {} points",
                values.len(),
                grid.n()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid1D<T>, f: impl Fn(T) -> T) -> Self {
        let values = grid.points().map(f).collect();
        Self { grid, values }
    }

    /// Cyclic rotation: `out[j] = values[j - shift]`.
    pub fn rotated(&self, shift: i64) -> Self {
        let n = self.grid.n();
        let values = (0..n).map(|j| self.values[self.grid.wrap_index(j as i64 - shift)]).collect();
        Self { grid: self.grid, values }
    }
}

/// Per-cell Legendre expansion of degree `degree`.
///
/// Cell `i` at reference coordinate `s = 2 xi / h - 1` reconstructs
/// `sum_m coeffs[i][m] P_m(s)` with unnormalized `P_m(1) = 1`, so the zeroth
/// coefficient is the cell average.
#[derive(Clone, Debug, PartialEq)]
pub struct ModalField<T> {
    pub grid: Grid1D<T>,
    degree: usize,
    coeffs: Vec<T>,
}

impl<T: Real> ModalField<T> {
    pub fn zeros(grid: Grid1D<T>, degree: usize) -> Self {
        Self { grid, degree, coeffs: vec![T::zero(); grid.n() * (degree + 1)] }
    }

    /// `coeffs` is row-major, `degree + 1` entries per cell.
    pub fn new(grid: Grid1D<T>, degree: usize, coeffs: Vec<T>) -> Result<Self> {
        if coeffs.len() != grid.n() * (degree + 1) {
            return Err(Error::Argument(format!(
                "{} coefficients for {} cells of degree {degree}",
                coeffs.len(),
                grid.n()
            )));
        }
        Ok(Self { grid, degree, coeffs })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn cell(&self, i: usize) -> &[T] {
        let w = self.degree + 1;
        &self.coeffs[i * w..(i + 1) * w]
    }

    #[inline]
    pub fn cell_mut(&mut self, i: usize) -> &mut [T] {
        let w = self.degree + 1;
        &mut self.coeffs[i * w..(i + 1) * w]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [T] {
        &mut self.coeffs
    }

    /// Reconstruction in cell `i` at reference coordinate `s` in `[-1, 1]`.
    pub fn eval_cell(&self, i: usize, s: T) -> T {
        let mut p = vec![T::zero(); self.degree + 1];
        legendre_all(s, &mut p);
        self.cell(i).iter().zip(&p).map(|(&c, &pm)| c * pm).sum()
    }

    /// Reconstruction at an arbitrary position (wrapped periodically).
    pub fn eval(&self, x: T) -> T {
        let h = self.grid.h();
        let pos = (x - Grid1D::<T>::x_left()) / h;
        let cell = pos.floor();
        let i = self.grid.wrap_index(cell.to_f64() as i64);
        let s = (pos - cell) * T::from_f64(2.0) - T::one();
        self.eval_cell(i, s)
    }

    /// Cyclic rotation of whole cells: `out[i] = cells[i - shift]`.
    pub fn rotated(&self, shift: i64) -> Self {
        let mut out = Self::zeros(self.grid, self.degree);
        for i in 0..self.grid.n() {
            let src = self.grid.wrap_index(i as i64 - shift);
            out.cell_mut(i).copy_from_slice(self.cell(src));
        }
        out
    }
}

/// Samples `ic` at the grid points.
pub fn sample_nodal<T: Real>(ic: &InitialCondition<T>, grid: Grid1D<T>) -> NodalField<T> {
    NodalField::from_fn(grid, |x| ic.eval(x))
}

/// Minimum number of Gauss nodes per cell for projecting analytic profiles;
/// enough to integrate a full period of `cos(4 pi x)` on a four-cell grid to
/// round-off.
pub const PROJECTION_NODES: usize = 16;

/// L2 projection of `f` onto per-cell polynomials of `degree`, using
/// `max(degree + 2, PROJECTION_NODES)` Gauss–Legendre nodes per cell.
pub fn project_fn<T: Real>(grid: Grid1D<T>, degree: usize, f: impl Fn(T) -> T) -> ModalField<T> {
    let rule = GaussLegendre::<T>::new((degree + 2).max(PROJECTION_NODES));
    let mut out = ModalField::zeros(grid, degree);
    let half_h = grid.h() * T::from_f64(0.5);
    let table = legendre_table(&rule, degree);
    for i in 0..grid.n() {
        let x0 = grid.point(i);
        let cell = out.cell_mut(i);
        for (q, (&s, &w)) in rule.nodes().iter().zip(rule.weights()).enumerate() {
            let fx = f(x0 + half_h * (s + T::one()));
            for (m, c) in cell.iter_mut().enumerate() {
                *c += w * fx * table[q][m];
            }
        }
        for (m, c) in cell.iter_mut().enumerate() {
            *c *= T::from_usize(2 * m + 1) * T::from_f64(0.5);
        }
    }
    out
}

pub fn project_modal<T: Real>(
    ic: &InitialCondition<T>,
    grid: Grid1D<T>,
    degree: usize,
) -> ModalField<T> {
    project_fn(grid, degree, |x| ic.eval(x))
}

/// `table[q][m] = P_m(node_q)`.
pub(crate) fn legendre_table<T: Real>(rule: &GaussLegendre<T>, degree: usize) -> Vec<Vec<T>> {
    rule.nodes()
        .iter()
        .map(|&s| {
            let mut p = vec![T::zero(); degree + 1];
            legendre_all(s, &mut p);
            p
        })
        .collect()
}

/// Operations shared by every discrete representation.
pub trait Discretization<T: Real> {
    fn grid(&self) -> Grid1D<T>;

    /// Positions where the representation is compared against a reference:
    /// grid points for nodal fields, `degree + 2` Gauss nodes per cell for
    /// modal fields.
    fn sample(&self) -> Vec<(T, T)>;

    /// `h * sum` of point values or of cell averages.
    fn total_mass(&self) -> T;

    /// Maximum of `|value - exact(x)|` over [`Discretization::sample`].
    fn max_error(&self, exact: impl Fn(T) -> T) -> T {
        self.sample()
            .into_iter()
            .map(|(x, u)| (u - exact(x)).abs())
            .fold(T::zero(), |a, b| if b > a || b.is_nan() { b } else { a })
    }
}

impl<T: Real> Discretization<T> for NodalField<T> {
    fn grid(&self) -> Grid1D<T> {
        self.grid
    }

    fn sample(&self) -> Vec<(T, T)> {
        self.grid.points().zip(self.values.iter().copied()).collect()
    }

    fn total_mass(&self) -> T {
        self.grid.h() * self.values.iter().copied().sum::<T>()
    }
}

impl<T: Real> Discretization<T> for ModalField<T> {
    fn grid(&self) -> Grid1D<T> {
        self.grid
    }

    fn sample(&self) -> Vec<(T, T)> {
        let rule = GaussLegendre::<T>::new(self.degree + 2);
        let table = legendre_table(&rule, self.degree);
        let half_h = self.grid.h() * T::from_f64(0.5);
        let mut out = Vec::with_capacity(self.grid.n() * rule.len());
        for i in 0..self.grid.n() {
            let x0 = self.grid.point(i);
            let cell = self.cell(i);
            for (q, &s) in rule.nodes().iter().enumerate() {
                let u = cell.iter().zip(&table[q]).map(|(&c, &p)| c * p).sum();
                out.push((x0 + half_h * (s + T::one()), u));
            }
        }
        out
    }

    fn total_mass(&self) -> T {
        let w = self.degree + 1;
        self.grid.h() * self.coeffs.iter().step_by(w).copied().sum::<T>()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::initial::IcKind;

    fn grid(n: usize) -> Grid1D<f64> {
        Grid1D::new(n).unwrap()
    }

    #[test]
    fn nodal_samples() {
        let convex = InitialCondition::new(IcKind::Convex);
        assert_eq!(sample_nodal(&convex, grid(2)).values, vec![0.0, -1.0]);
        let cos4 = InitialCondition::new(IcKind::Cos4);
        assert_eq!(sample_nodal(&cos4, grid(4)).values, vec![1.0; 4]);
        let runge = InitialCondition::new(IcKind::RungeCos);
        assert_eq!(sample_nodal(&runge, grid(2)).values, vec![1.0, 1.0 / 3.0]);
    }

    #[test]
    fn cell_averages_of_full_periods_vanish() {
        // each cell of width 1/2 holds exactly one period of cos(4 pi x)
        let m = project_modal(&InitialCondition::new(IcKind::Cos4), grid(4), 0);
        for &c in m.coeffs() {
            assert!(c.abs() < 1e-15, "{c}");
        }
    }

    #[test]
    fn quadratics_are_reproduced() {
        let convex = InitialCondition::new(IcKind::Convex);
        for n in [3, 10, 37] {
            let m = project_modal(&convex, grid(n), 2);
            for (x, u) in m.sample() {
                assert!((u - convex.eval(x)).abs() <= 1e-13);
            }
        }
    }

    #[test]
    fn mass_of_unit_averages() {
        let g = grid(10);
        let mut m = ModalField::zeros(g, 2);
        for i in 0..10 {
            m.cell_mut(i)[0] = 1.0;
        }
        assert!((m.total_mass() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn rotation_is_a_permutation() {
        let f = NodalField::new(grid(4), vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(f.rotated(1).values, vec![4.0, 1.0, 2.0, 3.0]);
        assert_eq!(f.rotated(-5).values, vec![2.0, 3.0, 4.0, 1.0]);
    }

    #[test]
    fn shape_mismatch_rejected() {
        assert!(NodalField::new(grid(3), vec![0.0; 2]).is_err());
        assert!(ModalField::new(grid(3), 1, vec![0.0; 5]).is_err());
    }

    #[test]
    fn eval_matches_cell_eval() {
        let m = project_modal(&InitialCondition::new(IcKind::RungeCos), grid(8), 3);
        let x = -1.0 + 2.5 * m.grid.h();
        assert_eq!(m.eval(x), m.eval_cell(2, 0.0));
        assert_eq!(m.eval(x + 2.0), m.eval_cell(2, 0.0));
    }
}
