//! Interpolation of nodal data at departure points.

mod lagrange;
mod spline;

pub use lagrange::{lagrange_eval, LagrangeStencil, MAX_LAGRANGE_DEGREE};
pub use spline::{solve_cyclic_141, spline_build, spline_eval, PeriodicSpline};
