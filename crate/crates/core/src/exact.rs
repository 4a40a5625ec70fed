//! Reference solutions of the periodic advection problem and error norms.

use crate::field::Discretization;
use crate::grid::Grid1D;
use crate::initial::InitialCondition;
use crate::real::Real;
use crate::xprec::{product_mod, DoubleWord};

/// Maps `x` into `[-1, 1)` by subtracting multiples of the domain length.
pub fn wrap_periodic<T: Real>(x: T) -> T {
    if x >= -T::one() && x < T::one() {
        return x;
    }
    let two = Grid1D::<T>::length();
    let y = x + T::one();
    let mut r = y - two * (y / two).floor() - T::one();
    if r >= T::one() {
        r -= two;
    }
    if r < -T::one() {
        r += two;
    }
    r
}

/// `u(t, x) = u0(x - v t)` on the periodic domain.
pub fn exact_advection<T: Real>(ic: &InitialCondition<T>, v: T, t: T, x: T) -> T {
    ic.eval(wrap_periodic(x - v * t))
}

/// Total displacement `steps * v * tau`, reduced modulo the domain length in
/// double-word arithmetic.
///
/// Long runs accumulate hundreds of domain transits; forming `v * t` in
/// working precision would put an O(ulp(t)) phase error into the reference
/// that is comparable to the round-off being measured.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Displacement<T> {
    shift: DoubleWord<T>,
}

impl<T: Real> Displacement<T> {
    pub fn after_steps(v: T, tau: T, steps: u64) -> Self {
        let k = T::from_f64(steps as f64);
        debug_assert_eq!(k.to_f64() as u64, steps);
        Self { shift: product_mod(k, v, tau, Grid1D::<T>::length()) }
    }

    pub fn zero() -> Self {
        Self { shift: DoubleWord::zero() }
    }

    pub fn shift(&self) -> DoubleWord<T> {
        self.shift
    }

    /// Foot of the characteristic through `x`, wrapped into `[-1, 1)`.
    pub fn departure(&self, x: T) -> T {
        wrap_periodic((DoubleWord::from_real(x) - self.shift).round())
    }

    pub fn exact(&self, ic: &InitialCondition<T>, x: T) -> T {
        ic.eval(self.departure(x))
    }
}

/// Maximum pointwise deviation from `u0(x - v t)`, measured at grid points
/// (nodal) or at `degree + 2` Gauss nodes per cell (modal).
pub fn linf_error<T: Real, D: Discretization<T>>(
    field: &D,
    ic: &InitialCondition<T>,
    v: T,
    t: T,
) -> T {
    field.max_error(|x| exact_advection(ic, v, t, x))
}

/// Same as [`linf_error`] with the reference shift given exactly.
pub fn linf_error_after<T: Real, D: Discretization<T>>(
    field: &D,
    ic: &InitialCondition<T>,
    displacement: &Displacement<T>,
) -> T {
    field.max_error(|x| displacement.exact(ic, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{project_modal, sample_nodal, NodalField};
    use crate::initial::IcKind;

    #[test]
    fn wrap_into_reference_interval() {
        assert_eq!(wrap_periodic(1.0f64), -1.0);
        assert_eq!(wrap_periodic(-1.0f64), -1.0);
        assert_eq!(wrap_periodic(2.5f64), 0.5);
        assert_eq!(wrap_periodic(-3.25f64), 0.75);
        assert!(wrap_periodic(-1e-300f64) < 1.0);
    }

    #[test]
    fn exact_solution_examples() {
        let cos4 = InitialCondition::<f64>::new(IcKind::Cos4);
        for &x in &[-0.9, -0.3, 0.0, 0.41] {
            let u = exact_advection(&cos4, 1.0, 0.5, x);
            assert!((u - cos4.eval(x)).abs() < 1e-14);
        }
        let runge = InitialCondition::<f64>::new(IcKind::RungeCos);
        assert_eq!(exact_advection(&runge, 0.0, 7.0, 0.3), runge.eval(0.3));
        let convex = InitialCondition::<f64>::new(IcKind::Convex);
        assert_eq!(exact_advection(&convex, 1.0, 1.0, 0.0), 0.0);
    }

    #[test]
    fn full_transit_is_periodic() {
        let runge = InitialCondition::<f64>::new(IcKind::RungeCos);
        for &(v, t, x) in &[(1.0, 0.3, 0.2), (-0.5, 1.7, -0.6), (3.0, 0.01, 0.99)] {
            let a = exact_advection(&runge, v, t, x);
            let b = exact_advection(&runge, v, t + 2.0 / v, x);
            assert!((a - b).abs() <= 4.0 * f64::EPSILON * a.abs(), "{a} {b}");
        }
    }

    #[test]
    fn errors_of_exact_and_offset_fields() {
        let ic = InitialCondition::<f64>::new(IcKind::RungeCos);
        let g = Grid1D::new(32).unwrap();
        let f = sample_nodal(&ic, g);
        assert_eq!(linf_error(&f, &ic, 1.0, 0.0), 0.0);
        let shifted = NodalField::from_fn(g, |x| ic.eval(x) + 1e-3);
        assert!((linf_error(&shifted, &ic, 1.0, 0.0) - 1e-3).abs() < 1e-15);
    }

    #[test]
    fn displacement_matches_plain_product_for_short_runs() {
        let d = Displacement::after_steps(1.0f64, 0.125, 20);
        assert_eq!(d.shift(), DoubleWord::from_real(0.5));
        assert_eq!(d.departure(0.0), -0.5);
        let d = Displacement::after_steps(1.0f64, 0.1, 10);
        // one full unit of shift is half a domain transit
        assert!((d.shift().round().abs() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn modal_error_at_projection_is_small_but_positive() {
        let ic = InitialCondition::<f64>::new(IcKind::RungeCos);
        let m = project_modal(&ic, Grid1D::new(100).unwrap(), 2);
        let e = linf_error(&m, &ic, 1.0, 0.0);
        assert!(e > 0.0 && e < 1e-4, "{e}");
    }
}
