//! Radix-2 Cooley–Tukey transform with selectable butterfly arithmetic, and
//! the spectral advection step built on it.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::field::NodalField;
use crate::grid::Grid1D;
use crate::real::Real;
use crate::semilag::{decompose_shift, AdvectionStep};
use crate::xprec::{reduce_angle, DwComplex};

/// Arithmetic used for twiddle and phase multiplications.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum FftMode {
    /// Factors rounded to working precision once, plain complex products.
    #[default]
    Standard,
    /// Factors kept in double-word form, each product rounded once.
    Extended,
}

impl FftMode {
    pub fn name(self) -> &'static str {
        match self {
            FftMode::Standard => "standard",
            FftMode::Extended => "extended",
        }
    }
}

impl fmt::Display for FftMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FftMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(FftMode::Standard),
            "extended" => Ok(FftMode::Extended),
            _ => Err(Error::config("fft-mode", format!("unknown mode '{s}'"))),
        }
    }
}

/// Precomputed tables for transforms of one power-of-two size.
#[derive(Clone, Debug)]
pub struct FftPlan<T> {
    n: usize,
    mode: FftMode,
    bitrev: Vec<usize>,
    // exp(-2 pi i j / n) for j < n/2
    twiddles_dw: Vec<DwComplex<T>>,
    twiddles: Vec<Complex<T>>,
}

impl<T: Real> FftPlan<T> {
    pub fn new(n: usize, mode: FftMode) -> Result<Self> {
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::config("n", "n must be a power of two"));
        }
        let bits = n.trailing_zeros();
        let bitrev = (0..n).map(|i| i.reverse_bits() >> (usize::BITS - bits)).collect();
        let nf = T::from_usize(n);
        let twiddles_dw: Vec<DwComplex<T>> = (0..n / 2)
            .map(|j| DwComplex::from_angle(reduce_angle(j as i64, T::one(), T::one(), nf)))
            .collect();
        let twiddles = twiddles_dw.iter().map(|w| w.round()).collect();
        Ok(Self { n, mode, bitrev, twiddles_dw, twiddles })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> FftMode {
        self.mode
    }

    pub fn twiddle(&self, j: usize) -> DwComplex<T> {
        self.twiddles_dw[j]
    }

    /// Unnormalized forward transform `X_k = sum_j x_j exp(-2 pi i j k / n)`.
    pub fn forward(&self, data: &mut [Complex<T>]) -> Result<()> {
        self.check_len(data.len())?;
        self.transform(data, false);
        Ok(())
    }

    /// Inverse transform including the `1/n` factor.
    pub fn inverse(&self, data: &mut [Complex<T>]) -> Result<()> {
        self.check_len(data.len())?;
        self.transform(data, true);
        let scale = T::one() / T::from_usize(self.n);
        for z in data.iter_mut() {
            *z = *z * scale;
        }
        Ok(())
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.n {
            return Err(Error::Argument(format!(
                "signal of length {len} for a plan of size {}",
                self.n
            )));
        }
        Ok(())
    }

    fn transform(&self, a: &mut [Complex<T>], inverse: bool) {
        let n = self.n;
        for i in 0..n {
            let j = self.bitrev[i];
            if i < j {
                a.swap(i, j);
            }
        }
        let mut m = 2;
        while m <= n {
            let half = m / 2;
            let stride = n / m;
            for start in (0..n).step_by(m) {
                for j in 0..half {
                    let (p, q) = (start + j, start + j + half);
                    let t = self.twiddle_mul(j * stride, a[q], inverse);
                    let u = a[p];
                    a[p] = u + t;
                    a[q] = u - t;
                }
            }
            m *= 2;
        }
    }

    #[inline]
    fn twiddle_mul(&self, idx: usize, z: Complex<T>, inverse: bool) -> Complex<T> {
        if idx == 0 {
            return z;
        }
        match self.mode {
            FftMode::Standard => {
                let w = self.twiddles[idx];
                z * if inverse { w.conj() } else { w }
            }
            FftMode::Extended => {
                let w = self.twiddles_dw[idx];
                if inverse { w.conj() } else { w }.mul_round(z)
            }
        }
    }
}

pub fn fft_forward<T: Real>(plan: &FftPlan<T>, signal: &mut [Complex<T>]) -> Result<()> {
    plan.forward(signal)
}

pub fn fft_inverse<T: Real>(plan: &FftPlan<T>, signal: &mut [Complex<T>]) -> Result<()> {
    plan.inverse(signal)
}

/// Signed wavenumber stored at transform index `j`.
pub fn wavenumber(j: usize, n: usize) -> i64 {
    if j <= n / 2 {
        j as i64
    } else {
        j as i64 - n as i64
    }
}

/// Per-index advection multipliers `exp(-i (2 pi k / L) v tau)`.
#[derive(Clone, Debug, PartialEq)]
pub enum PhaseFactors<T> {
    Standard(Vec<Complex<T>>),
    Extended(Vec<DwComplex<T>>),
}

impl<T: Real> PhaseFactors<T> {
    pub fn len(&self) -> usize {
        match self {
            PhaseFactors::Standard(p) => p.len(),
            PhaseFactors::Extended(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Factor at index `j` rounded to working precision.
    pub fn get(&self, j: usize) -> Complex<T> {
        match self {
            PhaseFactors::Standard(p) => p[j],
            PhaseFactors::Extended(p) => p[j].round(),
        }
    }

    pub fn apply(&self, spectrum: &mut [Complex<T>]) {
        match self {
            PhaseFactors::Standard(p) => {
                for (z, w) in spectrum.iter_mut().zip(p) {
                    *z = *z * *w;
                }
            }
            PhaseFactors::Extended(p) => {
                for (z, w) in spectrum.iter_mut().zip(p) {
                    *z = w.mul_round(*z);
                }
            }
        }
    }
}

/// Phase factors for a shift of `v tau` on a domain of length `length`.
/// The Nyquist index receives the real factor `cos(angle)`.
pub fn phase_factors<T: Real>(n: usize, v: T, tau: T, length: T, mode: FftMode) -> PhaseFactors<T> {
    let dw: Vec<DwComplex<T>> = (0..n)
        .map(|j| {
            let w = DwComplex::from_angle(reduce_angle(wavenumber(j, n), v, tau, length));
            if n % 2 == 0 && j == n / 2 {
                DwComplex::new(w.re, Default::default())
            } else {
                w
            }
        })
        .collect();
    match mode {
        FftMode::Standard => PhaseFactors::Standard(dw.iter().map(|w| w.round()).collect()),
        FftMode::Extended => PhaseFactors::Extended(dw),
    }
}

/// Prepared spectral advection step for a fixed `v tau`.
#[derive(Clone, Debug)]
pub struct FftStep<T> {
    plan: FftPlan<T>,
    phases: PhaseFactors<T>,
    // whole-cell shifts are applied as the permutation they are
    rotation: Option<usize>,
}

impl<T: Real> FftStep<T> {
    pub fn new(plan: FftPlan<T>, v: T, tau: T) -> Self {
        let n = plan.n();
        let phases = phase_factors(n, v, tau, Grid1D::<T>::length(), plan.mode());
        let h = Grid1D::<T>::length() / T::from_usize(n);
        let shift = decompose_shift(v, tau, h);
        let rotation = shift.is_whole().then(|| shift.whole_cells.rem_euclid(n as i64) as usize);
        Self { plan, phases, rotation }
    }

    pub fn plan(&self) -> &FftPlan<T> {
        &self.plan
    }

    /// Advances `values` in place using `scratch` for the spectrum.
    pub fn apply_with(&self, values: &mut [T], scratch: &mut Vec<Complex<T>>) {
        if let Some(m) = self.rotation {
            values.rotate_right(m);
            return;
        }
        scratch.clear();
        scratch.extend(values.iter().map(|&x| Complex::new(x, T::zero())));
        self.plan.transform(scratch, false);
        self.phases.apply(scratch);
        self.plan.transform(scratch, true);
        let scale = T::one() / T::from_usize(self.plan.n());
        for (x, z) in values.iter_mut().zip(scratch.iter()) {
            *x = z.re * scale;
        }
    }
}

impl<T: Real> AdvectionStep<NodalField<T>> for FftStep<T> {
    fn apply(&self, state: &NodalField<T>) -> NodalField<T> {
        let mut out = state.clone();
        let mut scratch = Vec::with_capacity(self.plan.n());
        self.apply_with(&mut out.values, &mut scratch);
        out
    }
}

pub fn step_fft<T: Real>(
    field: &NodalField<T>,
    plan: &FftPlan<T>,
    v: T,
    tau: T,
) -> Result<NodalField<T>> {
    if field.grid.n() != plan.n() {
        return Err(Error::Argument(format!(
            "field of {} points for a plan of size {}",
            field.grid.n(),
            plan.n()
        )));
    }
    Ok(FftStep::new(plan.clone(), v, tau).apply(field))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::linf_error;
    use crate::field::sample_nodal;
    use crate::initial::{IcKind, InitialCondition};

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    #[test]
    fn small_transforms() {
        for mode in [FftMode::Standard, FftMode::Extended] {
            let plan = FftPlan::<f64>::new(4, mode).unwrap();
            let mut x = vec![c(1.0), c(0.0), c(0.0), c(0.0)];
            plan.forward(&mut x).unwrap();
            assert_eq!(x, vec![c(1.0); 4]);
            let mut x = vec![c(1.0); 4];
            plan.forward(&mut x).unwrap();
            assert_eq!(x, vec![c(4.0), c(0.0), c(0.0), c(0.0)]);
        }
    }

    #[test]
    fn size_validation() {
        assert!(FftPlan::<f64>::new(511, FftMode::Standard).is_err());
        assert!(FftPlan::<f64>::new(1, FftMode::Standard).is_err());
        let plan = FftPlan::<f64>::new(8, FftMode::Standard).unwrap();
        assert!(plan.forward(&mut vec![c(0.0); 4]).is_err());
        let f = NodalField::from_fn(Grid1D::new(16).unwrap(), |x| x);
        assert!(step_fft(&f, &plan, 1.0, 0.1).is_err());
    }

    #[test]
    fn twiddles_have_unit_modulus() {
        let plan = FftPlan::<f64>::new(512, FftMode::Extended).unwrap();
        for j in 0..256 {
            let m = plan.twiddle(j).norm_sqr() - 1.0;
            assert!(m.hi.abs() <= 1e-30, "j={j}: {m:?}");
        }
    }

    #[test]
    fn wavenumber_layout() {
        let k: Vec<i64> = (0..8).map(|j| wavenumber(j, 8)).collect();
        assert_eq!(k, vec![0, 1, 2, 3, 4, -3, -2, -1]);
    }

    #[test]
    fn phase_factor_special_cases() {
        for mode in [FftMode::Standard, FftMode::Extended] {
            let p = phase_factors(64, 0.7f64, 0.013, 2.0, mode);
            assert_eq!(p.get(0), c(1.0));
            assert_eq!(p.get(32).im, 0.0);
            let p = phase_factors(64, 1.0f64, 2.0, 2.0, mode);
            for j in 0..64 {
                assert!((p.get(j) - c(1.0)).norm() <= 1e-14);
            }
        }
    }

    #[test]
    fn zero_velocity_leaves_field() {
        let ic = InitialCondition::new(IcKind::RungeCos);
        let f = sample_nodal(&ic, Grid1D::new(128).unwrap());
        let plan = FftPlan::new(128, FftMode::Standard).unwrap();
        let out = step_fft(&f, &plan, 0.0f64, 0.37).unwrap();
        for (a, b) in out.values.iter().zip(&f.values) {
            assert!((a - b).abs() <= 7.0f64 * f64::EPSILON);
        }
    }

    #[test]
    fn whole_cell_shift_is_a_rotation() {
        let ic = InitialCondition::new(IcKind::RungeCos);
        let grid = Grid1D::new(64).unwrap();
        let f = sample_nodal(&ic, grid);
        for mode in [FftMode::Standard, FftMode::Extended] {
            let plan = FftPlan::new(64, mode).unwrap();
            let out = step_fft(&f, &plan, -1.0f64, 5.0 * grid.h()).unwrap();
            assert_eq!(out.values, f.rotated(-5).values);
        }
    }

    #[test]
    fn band_limited_profile_is_advected_exactly() {
        let ic = InitialCondition::new(IcKind::Cos4);
        let g = Grid1D::new(64).unwrap();
        let f = sample_nodal(&ic, g);
        for mode in [FftMode::Standard, FftMode::Extended] {
            let plan = FftPlan::new(64, mode).unwrap();
            for tau in [0.0123, 0.3, 1.7] {
                let out = step_fft(&f, &plan, 1.0, tau).unwrap();
                assert!(linf_error(&out, &ic, 1.0, tau) <= 100.0 * f64::EPSILON);
            }
        }
    }
}
