use crate::error::{Error, Result};
use crate::exact::wrap_periodic;
use crate::field::NodalField;
use crate::grid::Grid1D;
use crate::real::Real;

/// C² periodic cubic spline through nodal data, stored as values and second
/// derivatives `M_i` at the nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicSpline<T> {
    pub grid: Grid1D<T>,
    pub values: Vec<T>,
    pub second_derivs: Vec<T>,
}

/// Solves the constant-coefficient cyclic system
/// `M_{i-1} + 4 M_i + M_{i+1} = rhs_i` (indices mod n) with a Thomas sweep
/// and a Sherman–Morrison correction for the two corner entries.
pub fn solve_cyclic_141<T: Real>(rhs: &[T]) -> Vec<T> {
    let n = rhs.len();
    assert!(n >= 3, "cyclic system needs at least three unknowns");
    let four = T::from_f64(4.0);
    // corners A[0][n-1] = A[n-1][0] = 1
    let gamma = -four;
    let mut diag = vec![four; n];
    diag[0] = four - gamma;
    diag[n - 1] = four - T::one() / gamma;

    let x = thomas_unit_offdiag(&diag, rhs);
    let mut u = vec![T::zero(); n];
    u[0] = gamma;
    u[n - 1] = T::one();
    let z = thomas_unit_offdiag(&diag, &u);

    let fact = (x[0] + x[n - 1] / gamma) / (T::one() + z[0] + z[n - 1] / gamma);
    x.iter().zip(&z).map(|(&xi, &zi)| xi - fact * zi).collect()
}

/// Tridiagonal solve with unit sub- and super-diagonals.
fn thomas_unit_offdiag<T: Real>(diag: &[T], rhs: &[T]) -> Vec<T> {
    let n = diag.len();
    let mut c = vec![T::zero(); n];
    let mut d = vec![T::zero(); n];
    c[0] = T::one() / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..n {
        let m = T::one() / (diag[i] - c[i - 1]);
        c[i] = m;
        d[i] = (rhs[i] - d[i - 1]) * m;
    }
    let mut x = vec![T::zero(); n];
    x[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    x
}

/// Builds the periodic spline; requires at least three points.
pub fn spline_build<T: Real>(field: &NodalField<T>) -> Result<PeriodicSpline<T>> {
    let n = field.grid.n();
    if n < 3 {
        return Err(Error::config("n", "periodic spline needs at least 3 points"));
    }
    let u = &field.values;
    let h = field.grid.h();
    let scale = T::from_f64(6.0) / (h * h);
    let rhs: Vec<T> = (0..n)
        .map(|i| {
            let prev = u[(i + n - 1) % n];
            let next = u[(i + 1) % n];
            scale * ((next - u[i]) - (u[i] - prev))
        })
        .collect();
    Ok(PeriodicSpline {
        grid: field.grid,
        values: u.clone(),
        second_derivs: solve_cyclic_141(&rhs),
    })
}

impl<T: Real> PeriodicSpline<T> {
    /// Value at fraction `theta` in `[0, 1]` of cell `p`, measured from `x_p`.
    #[inline]
    pub fn eval_in_cell(&self, p: usize, theta: T) -> T {
        let q = (p + 1) % self.grid.n();
        self.piece(p, q, theta)
    }

    /// Value `a` spacings to the left of node `r` (`0 <= a <= 1`).
    #[inline]
    pub fn eval_left_of(&self, r: usize, a: T) -> T {
        let q = (r + self.grid.n() - 1) % self.grid.n();
        self.piece(r, q, a)
    }

    // The cubic between nodes `from` and `to`, at fraction `t` from `from`.
    // Written so that constant data with zero curvature reproduces exactly.
    #[inline]
    fn piece(&self, from: usize, to: usize, t: T) -> T {
        let h = self.grid.h();
        let (u0, u1) = (self.values[from], self.values[to]);
        let (m0, m1) = (self.second_derivs[from], self.second_derivs[to]);
        let two = T::from_f64(2.0);
        let curvature = (two - t) * m0 + (T::one() + t) * m1;
        u0 + t * (u1 - u0) - h * h / T::from_f64(6.0) * t * (T::one() - t) * curvature
    }

    pub fn eval(&self, departure: T) -> T {
        let x = wrap_periodic(departure);
        let pos = (x - Grid1D::<T>::x_left()) / self.grid.h();
        let p = pos.floor();
        let theta = pos - p;
        self.eval_in_cell(self.grid.wrap_index(p.to_f64() as i64), theta)
    }
}

pub fn spline_eval<T: Real>(spline: &PeriodicSpline<T>, departure: T) -> T {
    spline.eval(departure)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sampled(n: usize, f: impl Fn(f64) -> f64) -> NodalField<f64> {
        NodalField::from_fn(Grid1D::new(n).unwrap(), f)
    }

    #[test]
    fn constant_data_has_zero_curvature() {
        let f = sampled(10, |_| 0.7);
        let s = spline_build(&f).unwrap();
        assert!(s.second_derivs.iter().all(|&m| m == 0.0));
        for i in 0..50 {
            assert_eq!(s.eval(-1.0 + i as f64 * 0.0391), 0.7);
        }
    }

    #[test]
    fn cyclic_residual() {
        let rhs: Vec<f64> = (0..37).map(|i| ((i * i) as f64 * 0.37).sin() * 10.0).collect();
        let m = solve_cyclic_141(&rhs);
        let n = rhs.len();
        let scale = rhs.iter().fold(0.0f64, |a, b| a.max(b.abs()));
        for i in 0..n {
            let lhs = m[(i + n - 1) % n] + 4.0 * m[i] + m[(i + 1) % n];
            assert!((lhs - rhs[i]).abs() <= 1e-13 * scale);
        }
        let m3 = solve_cyclic_141(&[6.0f64, 6.0, 6.0]);
        assert!(m3.iter().all(|&x| (x - 1.0).abs() < 1e-15));
    }

    #[test]
    fn second_derivatives_of_sine() {
        let pi = std::f64::consts::PI;
        let f = sampled(64, |x| (pi * x).sin());
        let s = spline_build(&f).unwrap();
        let h = f.grid.h();
        for (j, x) in f.grid.points().enumerate() {
            let exact = -pi * pi * (pi * x).sin();
            assert!((s.second_derivs[j] - exact).abs() <= 2.0 * pi.powi(4) * h * h / 12.0);
        }
    }

    #[test]
    fn nodes_are_reproduced() {
        let f = sampled(33, |x| 1.0 / (2.0 + (3.0 * x).cos()));
        let s = spline_build(&f).unwrap();
        for (j, x) in f.grid.points().enumerate() {
            assert!((s.eval(x) - f.values[j]).abs() <= 1e-13);
            assert_eq!(s.eval_left_of(j, 0.0), f.values[j]);
        }
    }

    #[test]
    fn too_few_points() {
        assert!(spline_build(&sampled(2, |x| x)).is_err());
    }
}
