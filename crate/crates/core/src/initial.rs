//! The closed registry of initial values used by the experiments.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::real::Real;

/// SplitMix64 (Steele, Lea and Flood 2014). Fixed here so that every seeded
/// quantity in the crate is reproducible bit for bit across platforms.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IcKind {
    /// `1 / (2 + cos(pi x))`
    RungeCos,
    /// `cos(4 pi x)`
    Cos4,
    /// `(x - 1)(x + 1)`
    Convex,
    /// `-(x - 1)(x + 1)`
    Concave,
    /// `1 / (2 + cos(pi x + phi))` with a seeded phase
    RandomPhase,
}

impl IcKind {
    pub const ALL: [IcKind; 5] =
        [IcKind::RungeCos, IcKind::Cos4, IcKind::Convex, IcKind::Concave, IcKind::RandomPhase];

    pub fn name(self) -> &'static str {
        match self {
            IcKind::RungeCos => "runge_cos",
            IcKind::Cos4 => "cos4",
            IcKind::Convex => "convex",
            IcKind::Concave => "concave",
            IcKind::RandomPhase => "random_phase",
        }
    }
}

impl fmt::Display for IcKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IcKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IcKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::config("ic", format!("unknown initial condition `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InitialCondition<T> {
    pub kind: IcKind,
    /// Phase shift in `[0, 2 pi)`; only read by [`IcKind::RandomPhase`].
    pub phase: T,
    pub seed: Option<u64>,
}

impl<T: Real> InitialCondition<T> {
    pub fn new(kind: IcKind) -> Self {
        Self { kind, phase: T::zero(), seed: None }
    }

    /// Random-phase profile with `phi` drawn from the first SplitMix64
    /// output for `seed`, mapped to `[0, 2 pi)`.
    pub fn random_phase(seed: u64) -> Self {
        let u = SplitMix64::new(seed).next_f64();
        let phase = T::from_f64(u * 2.0 * std::f64::consts::PI);
        Self { kind: IcKind::RandomPhase, phase, seed: Some(seed) }
    }

    pub fn with_phase(kind: IcKind, phase: T) -> Self {
        Self { kind, phase, seed: None }
    }

    pub fn eval(&self, x: T) -> T {
        let pi = T::PI();
        let two = T::from_f64(2.0);
        match self.kind {
            IcKind::RungeCos => T::one() / (two + (pi * x).cos()),
            IcKind::Cos4 => (T::from_f64(4.0) * pi * x).cos(),
            IcKind::Convex => (x - T::one()) * (x + T::one()),
            IcKind::Concave => -((x - T::one()) * (x + T::one())),
            IcKind::RandomPhase => T::one() / (two + (pi * x + self.phase).cos()),
        }
    }

    /// Second derivative in `x`; the polynomial profiles report their
    /// interior value and ignore the kink at the periodic junction.
    pub fn second_derivative(&self, x: T) -> T {
        let pi = T::PI();
        let two = T::from_f64(2.0);
        match self.kind {
            IcKind::RungeCos | IcKind::RandomPhase => {
                let phase = if self.kind == IcKind::RandomPhase { self.phase } else { T::zero() };
                let (s, c) = (pi * x + phase).sin_cos();
                let d = two + c;
                pi * pi * (c / (d * d) + two * s * s / (d * d * d))
            }
            IcKind::Cos4 => {
                let k = T::from_f64(4.0) * pi;
                -k * k * (k * x).cos()
            }
            IcKind::Convex => two,
            IcKind::Concave => -two,
        }
    }
}
