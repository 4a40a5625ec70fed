//! One semi-Lagrangian time step per representation.
//!
//! Every step first splits the displacement `v tau` into a whole number of
//! cells, applied as an exact cyclic rotation, and a fraction `alpha` in
//! `[0, h)` handled by interpolation or projection. The fraction is computed
//! from `(v, tau, h)` once per step plan, never accumulated.

use crate::error::Result;
use crate::field::{ModalField, NodalField};
use crate::grid::Grid1D;
use crate::interp::{spline_build, LagrangeStencil};
use crate::quadrature::{legendre_all, GaussLegendre};
use crate::real::Real;
use crate::xprec::DoubleWord;

/// A map from one state to the next. Implemented by every prepared step.
pub trait AdvectionStep<S> {
    fn apply(&self, state: &S) -> S;
}

/// `v tau = whole_cells * h + frac` with `0 <= frac < h`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShiftDecomposition<T> {
    pub whole_cells: i64,
    pub frac: T,
}

impl<T: Real> ShiftDecomposition<T> {
    pub fn is_whole(&self) -> bool {
        self.frac == T::zero()
    }
}

/// Splits `v tau` into whole cells (floor convention, so negative velocities
/// give negative `whole_cells`) and a fraction, which is rounded once from
/// the exact difference `v tau - s h`.
pub fn decompose_shift<T: Real>(v: T, tau: T, h: T) -> ShiftDecomposition<T> {
    let vt = DoubleWord::from_product(v, tau);
    let mut s = (vt.hi / h).floor();
    let frac_of = |s: T| (vt - DoubleWord::from_product(s, h)).round();
    let mut frac = frac_of(s);
    if frac < T::zero() {
        s -= T::one();
        frac = frac_of(s);
    } else if frac >= h {
        s += T::one();
        frac = frac_of(s);
    }
    if frac < T::zero() || frac >= h {
        frac = T::zero();
    }
    ShiftDecomposition { whole_cells: s.to_f64() as i64, frac }
}

/// Prepared Lagrange step: stencil weights for the fixed fractional offset.
#[derive(Clone, Debug)]
pub struct LagrangeStep<T> {
    pub shift: ShiftDecomposition<T>,
    stencil: LagrangeStencil,
    weights: Vec<T>,
}

impl<T: Real> LagrangeStep<T> {
    pub fn new(grid: Grid1D<T>, v: T, tau: T, degree: usize) -> Result<Self> {
        let stencil = LagrangeStencil::new(degree)?;
        let shift = decompose_shift(v, tau, grid.h());
        let mut weights = vec![T::zero(); degree + 1];
        stencil.weights(shift.frac / grid.h(), &mut weights);
        Ok(Self { shift, stencil, weights })
    }

    pub fn apply_into(&self, src: &[T], dst: &mut [T]) {
        let n = src.len() as i64;
        let s = self.shift.whole_cells;
        if self.shift.is_whole() {
            for (i, out) in dst.iter_mut().enumerate() {
                *out = src[(i as i64 - s).rem_euclid(n) as usize];
            }
            return;
        }
        let offsets: Vec<i64> = self.stencil.offsets().collect();
        for (i, out) in dst.iter_mut().enumerate() {
            let r = i as i64 - s;
            *out = offsets
                .iter()
                .zip(&self.weights)
                .map(|(&o, &w)| w * src[(r + o).rem_euclid(n) as usize])
                .sum();
        }
    }
}

impl<T: Real> AdvectionStep<NodalField<T>> for LagrangeStep<T> {
    fn apply(&self, state: &NodalField<T>) -> NodalField<T> {
        let mut out = state.clone();
        self.apply_into(&state.values, &mut out.values);
        out
    }
}

/// Prepared spline step.
#[derive(Clone, Debug)]
pub struct SplineStep<T> {
    pub shift: ShiftDecomposition<T>,
    a: T,
}

impl<T: Real> SplineStep<T> {
    pub fn new(grid: Grid1D<T>, v: T, tau: T) -> Result<Self> {
        if grid.n() < 3 {
            return Err(crate::Error::config("n", "spline advection needs at least 3 points"));
        }
        let shift = decompose_shift(v, tau, grid.h());
        Ok(Self { shift, a: shift.frac / grid.h() })
    }
}

impl<T: Real> AdvectionStep<NodalField<T>> for SplineStep<T> {
    fn apply(&self, state: &NodalField<T>) -> NodalField<T> {
        let s = self.shift.whole_cells;
        if self.shift.is_whole() {
            return state.rotated(s);
        }
        let spline = spline_build(state).expect("grid size checked at construction");
        let grid = state.grid;
        let values = (0..grid.n())
            .map(|i| spline.eval_left_of(grid.wrap_index(i as i64 - s), self.a))
            .collect();
        NodalField { grid, values }
    }
}

/// Prepared discontinuous Galerkin step.
///
/// With `a = alpha / h`, the new cell `i` overlaps the tail `[1 - 2a, 1]`
/// (reference coordinates) of cell `i - s - 1` and the head `[-1, 1 - 2a]`
/// of cell `i - s`. Each overlap is integrated with an (l+1)-point Gauss
/// rule, which is exact for the degree-2l integrands.
#[derive(Clone, Debug)]
pub struct DgStep<T> {
    pub shift: ShiftDecomposition<T>,
    degree: usize,
    // per quadrature node: weight, P_k at the source position, P_m at the
    // target position; `left` reads cell i-s-1, `own` reads cell i-s
    left: Vec<DgNode<T>>,
    own: Vec<DgNode<T>>,
}

#[derive(Clone, Debug)]
struct DgNode<T> {
    weight: T,
    source: Vec<T>,
    target: Vec<T>,
}

impl<T: Real> DgStep<T> {
    pub fn new(grid: Grid1D<T>, degree: usize, v: T, tau: T) -> Self {
        let shift = decompose_shift(v, tau, grid.h());
        let a = shift.frac / grid.h();
        let rule = GaussLegendre::<T>::new(degree + 1);
        let one = T::one();
        let two = T::from_f64(2.0);

        let node = |weight: T, s_src: T, s_tgt: T| {
            let mut source = vec![T::zero(); degree + 1];
            let mut target = vec![T::zero(); degree + 1];
            legendre_all(s_src, &mut source);
            legendre_all(s_tgt, &mut target);
            DgNode { weight, source, target }
        };
        let mut left = Vec::new();
        let mut own = Vec::new();
        if !shift.is_whole() {
            let b = one - a;
            for (&sigma, &w) in rule.nodes().iter().zip(rule.weights()) {
                let t = a * (sigma + one) - one;
                left.push(node(a * w, t + two * b, t));
                let t = b * (sigma + one) + two * a - one;
                own.push(node(b * w, t - two * a, t));
            }
        }
        Self { shift, degree, left, own }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn apply_into(&self, src: &ModalField<T>, dst: &mut ModalField<T>) {
        let grid = src.grid;
        let s = self.shift.whole_cells;
        let half = T::from_f64(0.5);
        for i in 0..grid.n() {
            let r = i as i64 - s;
            let cell_left = src.cell(grid.wrap_index(r - 1));
            let cell_own = src.cell(grid.wrap_index(r));
            let out = dst.cell_mut(i);
            if self.shift.is_whole() {
                out.copy_from_slice(cell_own);
                continue;
            }
            out.iter_mut().for_each(|c| *c = T::zero());
            for (nodes, cell) in [(&self.left, cell_left), (&self.own, cell_own)] {
                for q in nodes {
                    let u: T = cell.iter().zip(&q.source).map(|(&c, &p)| c * p).sum();
                    let wu = q.weight * u;
                    for (c, &p) in out.iter_mut().zip(&q.target) {
                        *c += wu * p;
                    }
                }
            }
            for (m, c) in out.iter_mut().enumerate() {
                *c *= T::from_usize(2 * m + 1) * half;
            }
        }
    }
}

impl<T: Real> AdvectionStep<ModalField<T>> for DgStep<T> {
    fn apply(&self, state: &ModalField<T>) -> ModalField<T> {
        debug_assert_eq!(state.degree(), self.degree);
        let mut out = ModalField::zeros(state.grid, state.degree());
        self.apply_into(state, &mut out);
        out
    }
}

pub fn step_lagrange<T: Real>(
    field: &NodalField<T>,
    v: T,
    tau: T,
    degree: usize,
) -> Result<NodalField<T>> {
    Ok(LagrangeStep::new(field.grid, v, tau, degree)?.apply(field))
}

pub fn step_spline<T: Real>(field: &NodalField<T>, v: T, tau: T) -> Result<NodalField<T>> {
    Ok(SplineStep::new(field.grid, v, tau)?.apply(field))
}

pub fn step_dg<T: Real>(field: &ModalField<T>, v: T, tau: T) -> ModalField<T> {
    DgStep::new(field.grid, field.degree(), v, tau).apply(field)
}
