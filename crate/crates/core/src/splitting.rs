//! Advection with the source term `s(x) = (1 + cos pi x) cos 5 pi x`.
//!
//! The source sub-problem `u_t = s(x)` is solved exactly; it is combined
//! with an advection step by Strang splitting (source, advection, source)
//! or by a symmetric seven-stage composition of Strang steps.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::wrap_periodic;
use crate::field::{Discretization, ModalField, NodalField};
use crate::grid::Grid1D;
use crate::initial::InitialCondition;
use crate::method::Advector;
use crate::quadrature::{legendre_all, GaussLegendre};
use crate::real::Real;
use crate::semilag::AdvectionStep;

pub fn source<T: Real>(x: T) -> T {
    let pi = T::PI();
    (T::one() + (pi * x).cos()) * (T::from_f64(5.0) * pi * x).cos()
}

/// `S(y) = sin(5 pi y)/(5 pi) + sin(6 pi y)/(12 pi) + sin(4 pi y)/(8 pi)`,
/// from `s(y) = cos 5 pi y + (cos 6 pi y + cos 4 pi y) / 2`.
pub fn source_antiderivative<T: Real>(y: T) -> T {
    let pi = T::PI();
    let term = |k: f64, d: f64| (T::from_f64(k) * pi * y).sin() / (T::from_f64(d) * pi);
    term(5.0, 5.0) + term(6.0, 12.0) + term(4.0, 8.0)
}

/// Solution of `u_t + v u_x = s(x)` with `u(0) = ic`.
pub fn exact_solution_source<T: Real>(ic: &InitialCondition<T>, v: T, t: T, x: T) -> T {
    if v == T::zero() {
        return ic.eval(x) + t * source(x);
    }
    let foot = wrap_periodic(x - v * t);
    ic.eval(foot) + (source_antiderivative(x) - source_antiderivative(foot)) / v
}

/// The exact flow of `u_t = s(x)` on a discrete representation.
pub trait SourceStep<T: Real>: Sized + Clone {
    /// `s` at the positions the step updates.
    fn source_samples(&self) -> Vec<T>;

    /// Adds `tau * samples` using samples from [`SourceStep::source_samples`].
    fn add_source(&self, samples: &[T], tau: T) -> Self;

    fn source_step(&self, tau: T) -> Self {
        if tau == T::zero() {
            return self.clone();
        }
        self.add_source(&self.source_samples(), tau)
    }
}

impl<T: Real> SourceStep<T> for NodalField<T> {
    fn source_samples(&self) -> Vec<T> {
        self.grid.points().map(source).collect()
    }

    fn add_source(&self, samples: &[T], tau: T) -> Self {
        let mut out = self.clone();
        if tau != T::zero() {
            for (u, &s) in out.values.iter_mut().zip(samples) {
                *u += tau * s;
            }
        }
        out
    }
}

/// Per cell: evaluate at the `l + 1` Gauss nodes, add `tau s`, project back.
/// Projection is the identity on the existing polynomial, so only the
/// increment `tau s` is projected and added to the coefficients. Samples are
/// stored cell by cell, node by node.
impl<T: Real> SourceStep<T> for ModalField<T> {
    fn source_samples(&self) -> Vec<T> {
        let rule = GaussLegendre::<T>::new(self.degree() + 1);
        let half_h = self.grid.h() * T::from_f64(0.5);
        let mut out = Vec::with_capacity(self.grid.n() * rule.len());
        for i in 0..self.grid.n() {
            let x0 = self.grid.point(i);
            out.extend(rule.nodes().iter().map(|&s| source(x0 + half_h * (s + T::one()))));
        }
        out
    }

    fn add_source(&self, samples: &[T], tau: T) -> Self {
        let mut out = self.clone();
        if tau == T::zero() {
            return out;
        }
        let degree = self.degree();
        let rule = GaussLegendre::<T>::new(degree + 1);
        let q = rule.len();
        // weight * P_m(node) * (2m + 1) / 2
        let half = T::from_f64(0.5);
        let table: Vec<Vec<T>> = rule
            .nodes()
            .iter()
            .zip(rule.weights())
            .map(|(&s, &w)| {
                let mut p = vec![T::zero(); degree + 1];
                legendre_all(s, &mut p);
                p.iter().enumerate().map(|(m, &pm)| w * pm * T::from_usize(2 * m + 1) * half).collect()
            })
            .collect();
        for i in 0..self.grid.n() {
            let cell_samples = &samples[i * q..(i + 1) * q];
            for (m, c) in out.cell_mut(i).iter_mut().enumerate() {
                let inc: T = cell_samples.iter().zip(&table).map(|(&s, row)| s * row[m]).sum();
                *c += tau * inc;
            }
        }
        out
    }
}

/// Time integrator built from Strang steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CompositionScheme {
    Strang,
    Compose6,
}

// Symmetric seven-stage composition of order six (Yoshida's solution A).
const W1: f64 = -1.177_679_984_178_871_006_946_415_68;
const W2: f64 = 0.235_573_213_359_358_133_684_793_18;
const W3: f64 = 0.784_513_610_477_557_263_819_497_63;

impl CompositionScheme {
    pub fn name(self) -> &'static str {
        match self {
            CompositionScheme::Strang => "strang",
            CompositionScheme::Compose6 => "compose6",
        }
    }

    pub fn order(self) -> u32 {
        match self {
            CompositionScheme::Strang => 2,
            CompositionScheme::Compose6 => 6,
        }
    }

    /// Substep scale factors; they sum to one.
    pub fn weights<T: Real>(self) -> Vec<T> {
        match self {
            CompositionScheme::Strang => vec![T::one()],
            CompositionScheme::Compose6 => {
                let (w1, w2, w3) = (T::from_f64(W1), T::from_f64(W2), T::from_f64(W3));
                let w0 = T::one() - T::from_f64(2.0) * (w1 + w2 + w3);
                vec![w3, w2, w1, w0, w1, w2, w3]
            }
        }
    }
}

impl fmt::Display for CompositionScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CompositionScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strang" => Ok(CompositionScheme::Strang),
            "compose6" => Ok(CompositionScheme::Compose6),
            _ => Err(Error::config("scheme", format!("unknown scheme '{s}'"))),
        }
    }
}

/// One Strang step: half source, advection over `tau`, half source.
pub fn strang_step<T: Real, A: Advector<T>>(
    advector: &A,
    state: &A::State,
    v: T,
    tau: T,
) -> Result<A::State> {
    let step = advector.prepare(state.grid(), v, tau)?;
    let half = tau * T::from_f64(0.5);
    Ok(step.apply(&state.source_step(half)).source_step(half))
}

pub fn compose6_step<T: Real, A: Advector<T>>(
    advector: &A,
    state: &A::State,
    v: T,
    tau: T,
) -> Result<A::State> {
    let grid = state.grid();
    let integrator = SplitIntegrator::new(advector, CompositionScheme::Compose6, grid, v, tau)?;
    Ok(integrator.step(state))
}

/// A composition scheme with its advection steps prepared once for a fixed
/// step size.
pub struct SplitIntegrator<T: Real, A: Advector<T>> {
    // (half source substep, index into `steps`) per stage
    stages: Vec<(T, usize)>,
    steps: Vec<A::Step>,
    samples: Option<Vec<T>>,
}

impl<T: Real, A: Advector<T>> SplitIntegrator<T, A> {
    pub fn new(
        advector: &A,
        scheme: CompositionScheme,
        grid: Grid1D<T>,
        v: T,
        tau: T,
    ) -> Result<Self> {
        let mut distinct: Vec<T> = Vec::new();
        let mut steps = Vec::new();
        let mut stages = Vec::new();
        let half = T::from_f64(0.5);
        for w in scheme.weights::<T>() {
            let sub = w * tau;
            let idx = match distinct.iter().position(|&d| d == sub) {
                Some(idx) => idx,
                None => {
                    distinct.push(sub);
                    steps.push(advector.prepare(grid, v, sub)?);
                    distinct.len() - 1
                }
            };
            stages.push((sub * half, idx));
        }
        Ok(Self { stages, steps, samples: None })
    }

    pub fn step(&self, state: &A::State) -> A::State {
        let owned;
        let samples = match &self.samples {
            Some(s) => s,
            None => {
                owned = state.source_samples();
                &owned
            }
        };
        let mut s = state.clone();
        for &(half, idx) in &self.stages {
            s = s.add_source(samples, half);
            s = self.steps[idx].apply(&s);
            s = s.add_source(samples, half);
        }
        s
    }

    /// Caches the source samples of `state`'s layout for later steps.
    pub fn with_samples_of(mut self, state: &A::State) -> Self {
        self.samples = Some(state.source_samples());
        self
    }
}

/// Outcome of integrating to a fixed final time.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitRun<T> {
    /// Number of steps taken, counting a trailing partial step.
    pub steps: u64,
    pub tau: T,
    pub final_time: T,
    pub error_linf: T,
}

/// Integrates from `ic` to `final_time` with step `tau`. When `tau` does not
/// divide `final_time`, one shorter step closes the gap.
pub fn run_split<T: Real, A: Advector<T>>(
    advector: &A,
    scheme: CompositionScheme,
    ic: &InitialCondition<T>,
    grid: Grid1D<T>,
    v: T,
    tau: T,
    final_time: T,
) -> Result<(SplitRun<T>, A::State)> {
    if !(tau > T::zero()) || !(final_time >= T::zero()) {
        return Err(Error::config("tau", "step size and final time must be positive"));
    }
    let ratio = final_time / tau;
    let nearest = ratio.round();
    let tol = T::from_f64(1e-9);
    let (full, rest) = if (nearest * tau - final_time).abs() <= tol * final_time.max(tau) {
        (nearest.to_f64() as u64, T::zero())
    } else {
        let full = ratio.floor();
        (full.to_f64() as u64, final_time - full * tau)
    };

    let mut state = advector.initial(ic, grid);
    let integrator = SplitIntegrator::new(advector, scheme, grid, v, tau)?.with_samples_of(&state);
    for _ in 0..full {
        state = integrator.step(&state);
    }
    let mut steps = full;
    if rest > T::zero() {
        let last = SplitIntegrator::new(advector, scheme, grid, v, rest)?;
        state = last.step(&state);
        steps += 1;
    }
    let error_linf = state.max_error(|x| exact_solution_source(ic, v, final_time, x));
    Ok((SplitRun { steps, tau, final_time, error_linf }, state))
}
