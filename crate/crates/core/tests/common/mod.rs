#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rat(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().expect("representable")
}

/// Spacing of doubles at `x`.
pub fn ulp(x: f64) -> f64 {
    let x = x.abs();
    if x == 0.0 {
        return f64::from_bits(1);
    }
    f64::from_bits(x.to_bits() + 1) - x
}

/// Fixed-point reals with 256 fractional bits, for sin/cos and pi.
#[derive(Clone, Debug, PartialEq)]
pub struct Fx(pub BigInt);

const FRAC_BITS: usize = 256;

impl Fx {
    pub fn from_rat(r: &BigRational) -> Fx {
        let scaled = r * BigRational::from_integer(BigInt::one() << FRAC_BITS);
        Fx(scaled.round().to_integer())
    }

    pub fn from_int(k: i64) -> Fx {
        Fx(BigInt::from(k) << FRAC_BITS)
    }

    pub fn to_rat(&self) -> BigRational {
        BigRational::new(self.0.clone(), BigInt::one() << FRAC_BITS)
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.to_rat())
    }

    pub fn add(&self, o: &Fx) -> Fx {
        Fx(&self.0 + &o.0)
    }

    pub fn sub(&self, o: &Fx) -> Fx {
        Fx(&self.0 - &o.0)
    }

    pub fn mul(&self, o: &Fx) -> Fx {
        Fx((&self.0 * &o.0) >> FRAC_BITS)
    }

    pub fn div_int(&self, k: i64) -> Fx {
        Fx(&self.0 / BigInt::from(k))
    }

    pub fn is_tiny(&self) -> bool {
        self.0.abs() < BigInt::from(16)
    }
}

fn atan_inv(k: i64) -> Fx {
    // atan(1/k) = sum (-1)^j / ((2j+1) k^(2j+1))
    let mut power = Fx::from_int(1).div_int(k);
    let mut sum = Fx(BigInt::zero());
    let mut j = 0i64;
    while !power.is_tiny() {
        let term = power.div_int(2 * j + 1);
        sum = if j % 2 == 0 { sum.add(&term) } else { sum.sub(&term) };
        power = power.div_int(k * k);
        j += 1;
    }
    sum
}

pub fn pi() -> Fx {
    atan_inv(5).mul(&Fx::from_int(16)).sub(&atan_inv(239).mul(&Fx::from_int(4)))
}

/// `(sin x, cos x)` by Taylor series; intended for `|x| <= 4`.
pub fn sin_cos(x: &Fx) -> (Fx, Fx) {
    let x2 = x.mul(x);
    let mut sin = x.clone();
    let mut term = x.clone();
    let mut k = 1i64;
    while !term.is_tiny() {
        term = Fx(-term.mul(&x2).0).div_int((2 * k) * (2 * k + 1));
        sin = sin.add(&term);
        k += 1;
    }
    let mut cos = Fx::from_int(1);
    let mut term = Fx::from_int(1);
    let mut k = 1i64;
    while !term.is_tiny() {
        term = Fx(-term.mul(&x2).0).div_int((2 * k - 1) * (2 * k));
        cos = cos.add(&term);
        k += 1;
    }
    (sin, cos)
}

/// `x - round(x)` for a rational, in `[-1/2, 1/2]`.
pub fn frac_centered(x: &BigRational) -> BigRational {
    x - x.round()
}
