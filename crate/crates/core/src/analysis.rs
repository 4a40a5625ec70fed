//! Averaged one-step errors, error series and slope fits.
//!
//! The averaged errors describe a single step of size `tau = a h` with `a`
//! uniform in `[0, 1]`, averaged over a cell `[x_i, x_{i+1}]`. Nodal data is
//! extended to the continuum by the piecewise interpolant through nodes
//! `i..i+1` (linear) or `i-1..i+1` (quadratic); a scheme's cell average is the
//! average of that interpolant through its new nodal values.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{linf_error_after, Displacement};
use crate::field::{Discretization, ModalField};
use crate::grid::Grid1D;
use crate::initial::InitialCondition;
use crate::interp::LagrangeStencil;
use crate::method::{Advector, Method, MethodVisitor};
use crate::quadrature::GaussLegendre;
use crate::real::Real;
use crate::semilag::{AdvectionStep, DgStep, LagrangeStep};

/// Exact advection averaged over the cell and over `tau`, for piecewise
/// linear data `(u_{i-1}, u_i, u_{i+1})`.
pub fn avg_exact<T: Real>(u: [T; 3]) -> T {
    (u[0] + T::from_f64(4.0) * u[1] + u[2]) / T::from_f64(6.0)
}

/// Linear-interpolation step averaged the same way.
pub fn avg_lagrange1<T: Real>(u: [T; 3]) -> T {
    (u[0] + T::from_f64(2.0) * u[1] + u[2]) / T::from_f64(4.0)
}

/// Doubly averaged error (scheme minus exact) of Lagrange interpolation.
/// Degree 1 takes `u_{i-1..=i+1}`, degree 2 takes `u_{i-2..=i+2}`.
pub fn davg_error<T: Real>(u: &[T], degree: usize) -> Result<T> {
    let c = |x: f64| T::from_f64(x);
    match (degree, u.len()) {
        (1, 3) => Ok((u[0] - c(2.0) * u[1] + u[2]) / c(12.0)),
        (2, 5) => Ok((u[0] + c(2.0) * u[1] - c(12.0) * u[2] + c(14.0) * u[3] - c(5.0) * u[4])
            / c(144.0)),
        (1 | 2, len) => Err(Error::Argument(format!(
            "degree {degree} needs a stencil of {} values, got {len}",
            2 * degree + 1
        ))),
        _ => Err(Error::Argument(format!("averaged error is defined for degree 1 or 2, got {degree}"))),
    }
}

/// One-step schemes understood by [`brute_force_avg`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AvgScheme {
    Exact,
    Lagrange1,
    Lagrange2,
    Dg,
}

/// Local data around cell `i`.
#[derive(Clone, Copy, Debug)]
pub enum LocalData<'a, T> {
    /// `u_{i-1..=i+1}` (3 values) or `u_{i-2..=i+2}` (5 values).
    Nodal(&'a [T]),
    /// Legendre coefficients of cells `i - 1` and `i`, `degree + 1` each.
    Modal { degree: usize, cells: &'a [T] },
}

/// Minimum number of quadrature points for the brute-force averages.
pub const MIN_QUAD_POINTS: usize = 32;

/// Cell average after one step of `a` cell widths (`0 <= a <= 1`), evaluated
/// by quadrature on unit spacing.
pub fn one_step_avg<T: Real>(
    scheme: AvgScheme,
    data: LocalData<'_, T>,
    a: T,
    quad_points: usize,
) -> Result<T> {
    one_step_avg_with(&GaussLegendre::new(quad_points), scheme, data, a)
}

fn one_step_avg_with<T: Real>(
    rule: &GaussLegendre<T>,
    scheme: AvgScheme,
    data: LocalData<'_, T>,
    a: T,
) -> Result<T> {
    match (scheme, data) {
        (AvgScheme::Exact, LocalData::Nodal(u)) => {
            let recon = NodalRecon::new(u)?;
            Ok(split_integral(rule, a, |cell, s| recon.eval(cell, s)))
        }
        (AvgScheme::Lagrange1 | AvgScheme::Lagrange2, LocalData::Nodal(u)) => {
            let recon = NodalRecon::new(u)?;
            let degree = if scheme == AvgScheme::Lagrange1 { 1 } else { 2 };
            if recon.degree != degree {
                return Err(Error::Argument(format!(
                    "{scheme:?} needs a stencil of {} values",
                    2 * degree + 1
                )));
            }
            let stencil = LagrangeStencil::new(degree)?;
            let mut w = vec![T::zero(); degree + 1];
            stencil.weights(a, &mut w);
            let stepped = |j: i64| -> T {
                stencil.offsets().zip(&w).map(|(o, &wk)| wk * recon.node(j + o)).sum()
            };
            // only the nodes of cell 0 are needed after the step
            let mut new = NodalRecon { values: vec![T::nan(); recon.values.len()], ..recon };
            for j in new.cell_nodes(0) {
                let k = new.index(j);
                new.values[k] = stepped(j);
            }
            Ok(integrate(rule, T::zero(), T::one(), |xi| new.eval(0, xi)))
        }
        (AvgScheme::Exact, LocalData::Modal { degree, cells }) => {
            let field = two_cell_field(degree, cells)?;
            let two = T::from_f64(2.0);
            Ok(split_integral(rule, a, |cell, s| field.eval_cell((cell + 1) as usize, s * two - T::one())))
        }
        (AvgScheme::Dg, LocalData::Modal { degree, cells }) => {
            let field = two_cell_field(degree, cells)?;
            let step = DgStep::new(field.grid, degree, T::one(), a);
            Ok(step.apply(&field).cell(1)[0])
        }
        (scheme, _) => Err(Error::Argument(format!("{scheme:?} does not apply to this data layout"))),
    }
}

/// Cell average after one step, averaged over `tau` uniform in `[0, h]`.
pub fn brute_force_avg<T: Real>(
    scheme: AvgScheme,
    data: LocalData<'_, T>,
    quad_points: usize,
) -> Result<T> {
    if quad_points < MIN_QUAD_POINTS {
        return Err(Error::Argument(format!(
            "brute-force averages need at least {MIN_QUAD_POINTS} quadrature points"
        )));
    }
    let rule = GaussLegendre::<T>::new(quad_points);
    let half = T::from_f64(0.5);
    let mut acc = T::zero();
    for (&s, &w) in rule.nodes().iter().zip(rule.weights()) {
        acc += w * half * one_step_avg_with(&rule, scheme, data, half * (s + T::one()))?;
    }
    Ok(acc)
}

// Average over xi in [0, 1] of the exactly shifted data: the part xi < a
// reads the previous cell at xi - a + 1, the rest reads the cell itself.
// `f(cell, local)` takes cell -1 or 0 and a local coordinate in [0, 1].
fn split_integral<T: Real>(rule: &GaussLegendre<T>, a: T, f: impl Fn(i64, T) -> T) -> T {
    integrate(rule, T::zero(), a, |xi| f(-1, xi - a + T::one()))
        + integrate(rule, a, T::one(), |xi| f(0, xi - a))
}

fn integrate<T: Real>(rule: &GaussLegendre<T>, lo: T, hi: T, f: impl Fn(T) -> T) -> T {
    if hi <= lo {
        return T::zero();
    }
    rule.integrate(lo, hi, f)
}

fn two_cell_field<T: Real>(degree: usize, cells: &[T]) -> Result<ModalField<T>> {
    if cells.len() != 2 * (degree + 1) {
        return Err(Error::Argument(format!(
            "two cells of degree {degree} need {} coefficients, got {}",
            2 * (degree + 1),
            cells.len()
        )));
    }
    ModalField::new(Grid1D::new(2)?, degree, cells.to_vec())
}

// Piecewise interpolant of nodal stencil data on unit spacing. Node indices
// are relative to node i; cell c covers [c, c + 1].
struct NodalRecon<T> {
    degree: usize,
    center: usize,
    values: Vec<T>,
}

impl<T: Real> NodalRecon<T> {
    fn new(u: &[T]) -> Result<Self> {
        let degree = match u.len() {
            3 => 1,
            5 => 2,
            len => {
                return Err(Error::Argument(format!("stencil of 3 or 5 values expected, got {len}")))
            }
        };
        Ok(Self { degree, center: u.len() / 2, values: u.to_vec() })
    }

    fn index(&self, j: i64) -> usize {
        (j + self.center as i64) as usize
    }

    fn node(&self, j: i64) -> T {
        self.values[self.index(j)]
    }

    // Linear pieces use nodes {c, c+1}; quadratic pieces use {c-1, c, c+1}.
    fn cell_nodes(&self, cell: i64) -> std::ops::RangeInclusive<i64> {
        let first = if self.degree == 1 { cell } else { cell - 1 };
        first..=first + self.degree as i64
    }

    fn eval(&self, cell: i64, xi: T) -> T {
        let nodes: Vec<i64> = self.cell_nodes(cell).collect();
        let x = T::from_i64(cell) + xi;
        nodes
            .iter()
            .map(|&j| {
                let basis = nodes
                    .iter()
                    .filter(|&&m| m != j)
                    .fold(T::one(), |acc, &m| acc * (x - T::from_i64(m)) / T::from_i64(j - m));
                basis * self.node(j)
            })
            .sum()
    }
}

/// `(step, L-infinity error)` records with the run that produced them.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorSeries<T> {
    pub meta: SeriesMeta,
    pub records: Vec<(u64, T)>,
}

/// Run description attached to an [`ErrorSeries`].
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesMeta {
    pub method: String,
    pub n: usize,
    pub degree: Option<usize>,
    pub v: f64,
    pub tau: f64,
    pub ic: String,
    pub phase_seed: Option<u64>,
    pub fft_mode: Option<String>,
}

impl SeriesMeta {
    /// Key-value pairs in a fixed order.
    pub fn entries(&self) -> Vec<(&'static str, String)> {
        let mut out = vec![("method", self.method.clone()), ("n", self.n.to_string())];
        if let Some(d) = self.degree {
            out.push(("degree", d.to_string()));
        }
        out.push(("v", format!("{:.16e}", self.v)));
        out.push(("tau", format!("{:.16e}", self.tau)));
        out.push(("ic", self.ic.clone()));
        if let Some(seed) = self.phase_seed {
            out.push(("phase_seed", seed.to_string()));
        }
        if let Some(mode) = &self.fft_mode {
            out.push(("fft_mode", mode.clone()));
        }
        out
    }
}

impl<T: Real> ErrorSeries<T> {
    pub fn new(meta: SeriesMeta) -> Self {
        Self { meta, records: Vec::new() }
    }

    pub fn push(&mut self, step: u64, error: T) -> Result<()> {
        if let Some(&(last, _)) = self.records.last() {
            if step <= last {
                return Err(Error::Argument(format!("step {step} does not follow {last}")));
            }
        }
        if !(error >= T::zero()) || !error.is_finite() {
            return Err(Error::Analysis(format!("error at step {step} is {error}")));
        }
        self.records.push((step, error));
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn error_at(&self, step: u64) -> Option<T> {
        self.records.iter().find(|r| r.0 == step).map(|r| r.1)
    }

    /// Largest recorded error.
    pub fn max_error(&self) -> Option<T> {
        self.records.iter().map(|r| r.1).reduce(T::max)
    }
}

/// Least-squares slope of `log10 error` against `log10 step` over the
/// records with `step_min <= step <= step_max`.
pub fn fit_slope<T: Real>(series: &ErrorSeries<T>, step_min: u64, step_max: u64) -> Result<f64> {
    let points: Vec<(f64, f64)> = series
        .records
        .iter()
        .filter(|r| r.0 >= step_min && r.0 <= step_max)
        .map(|r| (r.0 as f64, r.1.to_f64()))
        .collect();
    if points.len() < 5 {
        return Err(Error::Analysis(format!(
            "window [{step_min}, {step_max}] holds {} records, at least 5 are needed",
            points.len()
        )));
    }
    fit_loglog(&points).map_err(|e| match e {
        Error::Analysis(msg) => Error::Analysis(format!("window [{step_min}, {step_max}]: {msg}")),
        other => other,
    })
}

/// Least-squares slope of `log10 y` against `log10 x`.
pub fn fit_loglog(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::Analysis("a slope needs at least two points".into()));
    }
    if let Some(p) = points.iter().find(|p| !(p.0 > 0.0 && p.1 > 0.0)) {
        return Err(Error::Analysis(format!("non-positive value at {}: {}", p.0, p.1)));
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.log10()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.log10()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::Analysis("all records share one step count".into()));
    }
    Ok(sxy / sxx)
}

/// Distinct values of `ceil(10^(j/20))` for `j = 0, 1, ...` up to `max_steps`.
pub fn geometric_schedule(max_steps: u64) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    for j in 0.. {
        let x = 10f64.powf(j as f64 / 20.0);
        let near = x.round();
        // powers like 10^(20/20) come out a hair above the integer
        let step = if (x - near).abs() <= 1e-9 * x { near } else { x.ceil() } as u64;
        if step > max_steps {
            break;
        }
        if out.last() != Some(&step) {
            out.push(step);
        }
    }
    out
}

/// One propagation experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig<T> {
    pub method: Method,
    pub n: usize,
    pub v: T,
    pub tau: T,
    pub steps: u64,
    pub ic: InitialCondition<T>,
}

impl<T: Real> RunConfig<T> {
    pub fn validate(&self) -> Result<()> {
        self.method.validate(self.n)?;
        if !self.v.is_finite() {
            return Err(Error::config("v", "velocity must be finite"));
        }
        if !(self.tau >= T::zero()) || !self.tau.is_finite() {
            return Err(Error::config("tau", "step size must be finite and non-negative"));
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<Grid1D<T>> {
        Grid1D::new(self.n)
    }

    pub fn meta(&self) -> SeriesMeta {
        SeriesMeta {
            method: self.method.name().to_string(),
            n: self.n,
            degree: self.method.degree(),
            v: self.v.to_f64(),
            tau: self.tau.to_f64(),
            ic: self.ic.kind.name().to_string(),
            phase_seed: self.ic.seed,
            fft_mode: self.method.fft_mode().map(|m| m.name().to_string()),
        }
    }
}

/// Runs `config` and records the L-infinity error at each scheduled step.
/// Step 0 measures the initial representation.
pub fn record_series<T: Real>(config: &RunConfig<T>, schedule: &[u64]) -> Result<ErrorSeries<T>> {
    config.validate()?;
    if schedule.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Argument("record schedule must be strictly increasing".into()));
    }
    config.method.visit(Recorder { config, schedule })
}

struct Recorder<'a, T> {
    config: &'a RunConfig<T>,
    schedule: &'a [u64],
}

impl<'a, T: Real> MethodVisitor<T> for Recorder<'a, T> {
    type Output = Result<ErrorSeries<T>>;

    fn visit<A: Advector<T>>(self, advector: A) -> Self::Output {
        let c = self.config;
        let mut series = ErrorSeries::new(c.meta());
        if self.schedule.is_empty() {
            return Ok(series);
        }
        let grid = c.grid()?;
        let step = advector.prepare(grid, c.v, c.tau)?;
        let mut state = advector.initial(&c.ic, grid);
        let mut done = 0u64;
        for &target in self.schedule {
            while done < target {
                state = step.apply(&state);
                done += 1;
            }
            let shift = Displacement::after_steps(c.v, c.tau, done);
            series.push(done, linf_error_after(&state, &c.ic, &shift))?;
        }
        Ok(series)
    }
}

/// One pointwise sample after a run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointSample<T> {
    pub x: T,
    pub cell: usize,
    pub numeric: T,
    pub exact: T,
    /// `u0''` at the foot of the characteristic through `x`.
    pub curvature: T,
}

impl<T: Real> PointSample<T> {
    pub fn error(&self) -> T {
        self.numeric - self.exact
    }
}

/// Runs `config` for `config.steps` steps and returns the field at its
/// sampling positions next to the exact solution.
pub fn pointwise<T: Real>(config: &RunConfig<T>) -> Result<Vec<PointSample<T>>> {
    config.validate()?;
    config.method.visit(Pointwise { config })
}

struct Pointwise<'a, T> {
    config: &'a RunConfig<T>,
}

impl<'a, T: Real> MethodVisitor<T> for Pointwise<'a, T> {
    type Output = Result<Vec<PointSample<T>>>;

    fn visit<A: Advector<T>>(self, advector: A) -> Self::Output {
        let c = self.config;
        let grid = c.grid()?;
        let step = advector.prepare(grid, c.v, c.tau)?;
        let mut state = advector.initial(&c.ic, grid);
        for _ in 0..c.steps {
            state = step.apply(&state);
        }
        let shift = Displacement::after_steps(c.v, c.tau, c.steps);
        let h = grid.h();
        Ok(state
            .sample()
            .into_iter()
            .map(|(x, numeric)| {
                let foot = shift.departure(x);
                let cell = ((x - Grid1D::<T>::x_left()) / h).floor().to_f64() as i64;
                PointSample {
                    x,
                    cell: grid.wrap_index(cell),
                    numeric,
                    exact: c.ic.eval(foot),
                    curvature: c.ic.second_derivative(foot),
                }
            })
            .collect())
    }
}

/// Pearson correlation coefficient of two equally long sequences.
pub fn pearson(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() || a.len() < 2 {
        return Err(Error::Analysis("correlation needs two sequences of equal length >= 2".into()));
    }
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let mut sab = 0.0;
    let mut saa = 0.0;
    let mut sbb = 0.0;
    for (x, y) in a.iter().zip(b) {
        sab += (x - ma) * (y - mb);
        saa += (x - ma) * (x - ma);
        sbb += (y - mb) * (y - mb);
    }
    if saa == 0.0 || sbb == 0.0 {
        return Err(Error::Analysis("correlation of a constant sequence".into()));
    }
    Ok(sab / (saa * sbb).sqrt())
}

/// Shape statistics of a pointwise error profile.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorShape {
    /// Correlation between the error and `u0''` along characteristics.
    pub curvature_correlation: f64,
    /// Fraction of cells whose samples contain both error signs.
    pub sign_change_fraction: f64,
}

pub fn error_shape<T: Real>(samples: &[PointSample<T>]) -> Result<ErrorShape> {
    let err: Vec<f64> = samples.iter().map(|s| s.error().to_f64()).collect();
    let curv: Vec<f64> = samples.iter().map(|s| s.curvature.to_f64()).collect();
    let curvature_correlation = pearson(&err, &curv)?;

    let mut cells: Vec<(usize, bool, bool)> = Vec::new();
    for (s, e) in samples.iter().zip(&err) {
        match cells.last_mut() {
            Some(last) if last.0 == s.cell => {
                last.1 |= *e > 0.0;
                last.2 |= *e < 0.0;
            }
            _ => cells.push((s.cell, *e > 0.0, *e < 0.0)),
        }
    }
    let changing = cells.iter().filter(|c| c.1 && c.2).count();
    Ok(ErrorShape {
        curvature_correlation,
        sign_change_fraction: changing as f64 / cells.len() as f64,
    })
}

/// Schemes for the one-step cell-average experiment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OneStepScheme {
    /// Linear interpolation; cell averages by the trapezoidal rule.
    Lagrange1,
    /// dG of the given degree; cell averages are the zeroth coefficients.
    Dg(usize),
}

impl fmt::Display for OneStepScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OneStepScheme::Lagrange1 => f.write_str("lagrange1"),
            OneStepScheme::Dg(l) => write!(f, "dg{l}"),
        }
    }
}

/// Per-cell error of the cell average after one step of `tau` (with `v = 1`)
/// against the exact average of the shifted initial profile.
pub fn one_step_cell_errors<T: Real>(
    scheme: OneStepScheme,
    ic: &InitialCondition<T>,
    grid: Grid1D<T>,
    tau: T,
) -> Result<Vec<T>> {
    let rule = GaussLegendre::<T>::new(16);
    let h = grid.h();
    let a = crate::semilag::decompose_shift(T::one(), tau, h);
    if a.whole_cells != 0 {
        return Err(Error::config("tau", "one-step experiment needs 0 <= tau < h"));
    }
    let exact: Vec<T> = (0..grid.n())
        .map(|i| {
            let x0 = grid.point(i);
            let f = |xi: T| ic.eval(crate::exact::wrap_periodic(x0 + xi - tau));
            (integrate(&rule, T::zero(), tau, f) + integrate(&rule, tau, h, f)) / h
        })
        .collect();
    let numeric: Vec<T> = match scheme {
        OneStepScheme::Lagrange1 => {
            let f = crate::field::sample_nodal(ic, grid);
            let out = LagrangeStep::new(grid, T::one(), tau, 1)?.apply(&f);
            let half = T::from_f64(0.5);
            (0..grid.n()).map(|i| half * (out.values[i] + out.values[(i + 1) % grid.n()])).collect()
        }
        OneStepScheme::Dg(degree) => {
            let m = crate::field::project_modal(ic, grid, degree);
            let out = DgStep::new(grid, degree, T::one(), tau).apply(&m);
            (0..grid.n()).map(|i| out.cell(i)[0]).collect()
        }
    };
    Ok(numeric.iter().zip(&exact).map(|(&u, &e)| u - e).collect())
}
