//! The four advection schemes behind one interface, plus a runtime selector.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{project_modal, sample_nodal, Discretization, ModalField, NodalField};
use crate::grid::Grid1D;
use crate::initial::InitialCondition;
use crate::interp::MAX_LAGRANGE_DEGREE;
use crate::real::Real;
use crate::semilag::{AdvectionStep, DgStep, LagrangeStep, SplineStep};
use crate::spectral::{FftMode, FftPlan, FftStep};
use crate::splitting::SourceStep;

pub const MAX_DG_DEGREE: usize = 12;

/// A representation together with a way to build its time step.
pub trait Advector<T: Real> {
    type State: Discretization<T> + SourceStep<T> + Clone;
    type Step: AdvectionStep<Self::State>;

    fn initial(&self, ic: &InitialCondition<T>, grid: Grid1D<T>) -> Self::State;

    fn prepare(&self, grid: Grid1D<T>, v: T, tau: T) -> Result<Self::Step>;
}

#[derive(Clone, Copy, Debug)]
pub struct Lagrange {
    pub degree: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct Spline;

#[derive(Clone, Copy, Debug)]
pub struct Dg {
    pub degree: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct Fft {
    pub mode: FftMode,
}

impl<T: Real> Advector<T> for Lagrange {
    type State = NodalField<T>;
    type Step = LagrangeStep<T>;

    fn initial(&self, ic: &InitialCondition<T>, grid: Grid1D<T>) -> NodalField<T> {
        sample_nodal(ic, grid)
    }

    fn prepare(&self, grid: Grid1D<T>, v: T, tau: T) -> Result<LagrangeStep<T>> {
        LagrangeStep::new(grid, v, tau, self.degree)
    }
}

impl<T: Real> Advector<T> for Spline {
    type State = NodalField<T>;
    type Step = SplineStep<T>;

    fn initial(&self, ic: &InitialCondition<T>, grid: Grid1D<T>) -> NodalField<T> {
        sample_nodal(ic, grid)
    }

    fn prepare(&self, grid: Grid1D<T>, v: T, tau: T) -> Result<SplineStep<T>> {
        SplineStep::new(grid, v, tau)
    }
}

impl<T: Real> Advector<T> for Dg {
    type State = ModalField<T>;
    type Step = DgStep<T>;

    fn initial(&self, ic: &InitialCondition<T>, grid: Grid1D<T>) -> ModalField<T> {
        project_modal(ic, grid, self.degree)
    }

    fn prepare(&self, grid: Grid1D<T>, v: T, tau: T) -> Result<DgStep<T>> {
        Ok(DgStep::new(grid, self.degree, v, tau))
    }
}

impl<T: Real> Advector<T> for Fft {
    type State = NodalField<T>;
    type Step = FftStep<T>;

    fn initial(&self, ic: &InitialCondition<T>, grid: Grid1D<T>) -> NodalField<T> {
        sample_nodal(ic, grid)
    }

    fn prepare(&self, grid: Grid1D<T>, v: T, tau: T) -> Result<FftStep<T>> {
        Ok(FftStep::new(FftPlan::new(grid.n(), self.mode)?, v, tau))
    }
}

/// Runtime choice of scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Lagrange { degree: usize },
    Spline,
    Dg { degree: usize },
    Fft { mode: FftMode },
}

/// Generic code run against whichever advector a [`Method`] selects.
pub trait MethodVisitor<T: Real> {
    type Output;

    fn visit<A: Advector<T>>(self, advector: A) -> Self::Output;
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Lagrange { .. } => "lagrange",
            Method::Spline => "spline",
            Method::Dg { .. } => "dg",
            Method::Fft { .. } => "fft",
        }
    }

    pub fn degree(&self) -> Option<usize> {
        match *self {
            Method::Lagrange { degree } | Method::Dg { degree } => Some(degree),
            _ => None,
        }
    }

    pub fn fft_mode(&self) -> Option<FftMode> {
        match *self {
            Method::Fft { mode } => Some(mode),
            _ => None,
        }
    }

    /// Checks the method against a grid size.
    pub fn validate(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::config("n", "n must be positive"));
        }
        match *self {
            Method::Lagrange { degree } if !(1..=MAX_LAGRANGE_DEGREE).contains(&degree) => {
                Err(Error::config(
                    "degree",
                    format!("Lagrange degree must be in 1..={MAX_LAGRANGE_DEGREE}, got {degree}"),
                ))
            }
            Method::Dg { degree } if degree > MAX_DG_DEGREE => Err(Error::config(
                "degree",
                format!("dG degree must be at most {MAX_DG_DEGREE}, got {degree}"),
            )),
            Method::Spline if n < 3 => {
                Err(Error::config("n", "spline advection needs at least 3 points"))
            }
            Method::Fft { .. } if n < 2 || !n.is_power_of_two() => {
                Err(Error::config("n", "n must be a power of two"))
            }
            _ => Ok(()),
        }
    }

    pub fn visit<T: Real, V: MethodVisitor<T>>(&self, visitor: V) -> V::Output {
        match *self {
            Method::Lagrange { degree } => visitor.visit(Lagrange { degree }),
            Method::Spline => visitor.visit(Spline),
            Method::Dg { degree } => visitor.visit(Dg { degree }),
            Method::Fft { mode } => visitor.visit(Fft { mode }),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Lagrange { degree } => write!(f, "lagrange(l={degree})"),
            Method::Spline => f.write_str("spline"),
            Method::Dg { degree } => write!(f, "dg(l={degree})"),
            Method::Fft { mode } => write!(f, "fft({mode})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_names_the_field() {
        let fft = Method::Fft { mode: FftMode::Standard };
        let err = fft.validate(511).unwrap_err().to_string();
        assert!(err.contains("n must be a power of two"), "{err}");
        assert!(fft.validate(512).is_ok());
        let err = Method::Lagrange { degree: 0 }.validate(10).unwrap_err().to_string();
        assert!(err.contains("degree"));
        assert!(Method::Dg { degree: 0 }.validate(1).is_ok());
        assert!(Method::Spline.validate(2).is_err());
    }
}
