//! Error-free transforms and double-word arithmetic.
//!
//! A [`DoubleWord`] holds an unevaluated sum `hi + lo` of two working
//! precision numbers with `hi = fl(hi + lo)`, giving roughly twice the
//! significand width of `T`. The algorithms follow Joldes, Muller and Popescu,
//! "Tight and rigorous error bounds for basic building blocks of double-word
//! arithmetic" (ACM TOMS 2017):
//!
//! | op        | algorithm       | relative error bound |
//! |-----------|-----------------|----------------------|
//! | DW + DW   | AccurateDWPlusDW | 3u^2 + 13u^3        |
//! | DW + fp   | DWPlusFP        | 2u^2                 |
//! | DW * DW   | DWTimesDW3      | 4u^2                 |
//! | DW * fp   | DWTimesFP3      | 2u^2                 |
//! | DW / fp   | DWDivFP3        | 3u^2                 |
//!
//! where `u = 2^-p` is the unit roundoff of `T`.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex;

use crate::real::Real;

/// `s = fl(a + b)` and the exact rounding error `e`, so that `a + b = s + e`.
#[inline]
pub fn two_sum<T: Real>(a: T, b: T) -> (T, T) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Same as [`two_sum`] but requires `|a| >= |b|` (or `a == 0`).
#[inline]
pub fn fast_two_sum<T: Real>(a: T, b: T) -> (T, T) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

/// `p = fl(a * b)` and the exact error `e` with `a * b = p + e`, using a
/// fused multiply-add.
#[inline]
pub fn two_prod<T: Real>(a: T, b: T) -> (T, T) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

#[inline]
fn veltkamp_split<T: Real>(a: T) -> (T, T) {
    let c = T::SPLIT_FACTOR * a;
    let hi = c - (c - a);
    (hi, a - hi)
}

/// Dekker's product without FMA. Agrees bit for bit with [`two_prod`] as long
/// as nothing overflows.
#[inline]
pub fn two_prod_dekker<T: Real>(a: T, b: T) -> (T, T) {
    let p = a * b;
    let (ah, al) = veltkamp_split(a);
    let (bh, bl) = veltkamp_split(b);
    let e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    (p, e)
}

/// An unevaluated pair `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DoubleWord<T> {
    pub hi: T,
    pub lo: T,
}

impl<T: Real> DoubleWord<T> {
    #[inline]
    pub fn from_real(x: T) -> Self {
        Self { hi: x, lo: T::zero() }
    }

    #[inline]
    pub fn zero() -> Self {
        Self::from_real(T::zero())
    }

    #[inline]
    pub fn one() -> Self {
        Self::from_real(T::one())
    }

    /// Exact sum of two working-precision numbers.
    #[inline]
    pub fn from_sum(a: T, b: T) -> Self {
        let (hi, lo) = two_sum(a, b);
        Self { hi, lo }
    }

    /// Exact product of two working-precision numbers.
    #[inline]
    pub fn from_product(a: T, b: T) -> Self {
        let (p, e) = two_prod(a, b);
        let (hi, lo) = fast_two_sum(p, e);
        Self { hi, lo }
    }

    pub fn two_pi() -> Self {
        Self { hi: T::TWO_PI_HI, lo: T::TWO_PI_LO }
    }

    pub fn half_pi() -> Self {
        Self { hi: T::HALF_PI_HI, lo: T::HALF_PI_LO }
    }

    /// Rounds to working precision. For a normalized pair this is `hi`.
    #[inline]
    pub fn round(self) -> T {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn is_negative(self) -> bool {
        self.hi < T::zero() || (self.hi == T::zero() && self.lo < T::zero())
    }

    /// Lexicographic comparison, valid for normalized pairs.
    #[inline]
    pub fn lt(self, other: Self) -> bool {
        self.hi < other.hi || (self.hi == other.hi && self.lo < other.lo)
    }

    pub fn to_f64_pair(self) -> (f64, f64) {
        (self.hi.to_f64(), self.lo.to_f64())
    }

    /// Sine and cosine, accurate to double-word precision for moderate
    /// arguments (|x| up to a few thousand radians).
    ///
    /// The argument is reduced by multiples of pi/2 against a double-word
    /// constant and the reduced value (|r| <= pi/4) is fed to Taylor series
    /// evaluated entirely in double-word arithmetic.
    pub fn sin_cos(self) -> (Self, Self) {
        let negative = self.is_negative();
        let x = self.abs();
        let quadrant = (x.hi / T::HALF_PI_HI).round();
        let r = x - Self::half_pi() * quadrant;
        let (s, c) = taylor_sin_cos(r);
        let q = quadrant.to_f64() as i64 & 3;
        let (sin, cos) = match q {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        };
        if negative {
            (-sin, cos)
        } else {
            (sin, cos)
        }
    }
}

fn taylor_sin_cos<T: Real>(r: DoubleWord<T>) -> (DoubleWord<T>, DoubleWord<T>) {
    let r2 = r * r;
    // stop once a term no longer moves the trailing word
    let tiny = T::unit_roundoff() * T::unit_roundoff() * T::from_f64(0.0625);

    let mut sin = r;
    let mut term = r;
    let mut k = 1usize;
    while term.hi.abs() > tiny * sin.hi.abs() {
        let denom = T::from_usize((2 * k) * (2 * k + 1));
        term = -(term * r2 / denom);
        sin = sin + term;
        k += 1;
    }

    let mut cos = DoubleWord::one();
    let mut term = DoubleWord::<T>::one();
    let mut k = 1usize;
    while term.hi.abs() > tiny {
        let denom = T::from_usize((2 * k - 1) * (2 * k));
        term = -(term * r2 / denom);
        cos = cos + term;
        k += 1;
    }
    (sin, cos)
}

impl<T: Real> Neg for DoubleWord<T> {
    type Output = Self;

    #[inline]
    fn neg(self) -> Self {
        Self { hi: -self.hi, lo: -self.lo }
    }
}

impl<T: Real> Add for DoubleWord<T> {
    type Output = Self;

    #[inline]
    fn add(self, rhs: Self) -> Self {
        let (sh, sl) = two_sum(self.hi, rhs.hi);
        let (th, tl) = two_sum(self.lo, rhs.lo);
        let c = sl + th;
        let (vh, vl) = fast_two_sum(sh, c);
        let w = tl + vl;
        let (hi, lo) = fast_two_sum(vh, w);
        Self { hi, lo }
    }
}

impl<T: Real> Add<T> for DoubleWord<T> {
    type Output = Self;

    #[inline]
    fn add(self, rhs: T) -> Self {
        let (sh, sl) = two_sum(self.hi, rhs);
        let v = self.lo + sl;
        let (hi, lo) = fast_two_sum(sh, v);
        Self { hi, lo }
    }
}

impl<T: Real> Sub for DoubleWord<T> {
    type Output = Self;

    #[inline]
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Real> Sub<T> for DoubleWord<T> {
    type Output = Self;

    #[inline]
    fn sub(self, rhs: T) -> Self {
        self + (-rhs)
    }
}

impl<T: Real> Mul for DoubleWord<T> {
    type Output = Self;

    #[inline]
    fn mul(self, rhs: Self) -> Self {
        let (ch, cl1) = two_prod(self.hi, rhs.hi);
        let tl0 = self.lo * rhs.lo;
        let tl1 = self.hi.mul_add(rhs.lo, tl0);
        let cl2 = self.lo.mul_add(rhs.hi, tl1);
        let cl3 = cl1 + cl2;
        let (hi, lo) = fast_two_sum(ch, cl3);
        Self { hi, lo }
    }
}

impl<T: Real> Mul<T> for DoubleWord<T> {
    type Output = Self;

    #[inline]
    fn mul(self, rhs: T) -> Self {
        let (ch, cl1) = two_prod(self.hi, rhs);
        let cl3 = self.lo.mul_add(rhs, cl1);
        let (hi, lo) = fast_two_sum(ch, cl3);
        Self { hi, lo }
    }
}

impl<T: Real> Div<T> for DoubleWord<T> {
    type Output = Self;

    #[inline]
    fn div(self, rhs: T) -> Self {
        let th = self.hi / rhs;
        let (ph, pl) = two_prod(th, rhs);
        let dh = self.hi - ph;
        let dt = dh - pl;
        let d = dt + self.lo;
        let tl = d / rhs;
        let (hi, lo) = fast_two_sum(th, tl);
        Self { hi, lo }
    }
}

/// Complex number with double-word components. Used for twiddle and phase
/// factors, which are computed once and reused for every transform.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DwComplex<T> {
    pub re: DoubleWord<T>,
    pub im: DoubleWord<T>,
}

impl<T: Real> DwComplex<T> {
    pub fn new(re: DoubleWord<T>, im: DoubleWord<T>) -> Self {
        Self { re, im }
    }

    pub fn one() -> Self {
        Self::new(DoubleWord::one(), DoubleWord::zero())
    }

    /// `exp(i * angle)`.
    pub fn from_angle(angle: DoubleWord<T>) -> Self {
        let (sin, cos) = angle.sin_cos();
        Self::new(cos, sin)
    }

    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    pub fn norm_sqr(self) -> DoubleWord<T> {
        self.re * self.re + self.im * self.im
    }

    /// Rounds both components to working precision.
    pub fn round(self) -> Complex<T> {
        Complex::new(self.re.round(), self.im.round())
    }

    /// `self * z` with every partial product and sum in double-word
    /// arithmetic and a single rounding per output component.
    #[inline]
    pub fn mul_round(self, z: Complex<T>) -> Complex<T> {
        let re = dot2(self.re, z.re, -self.im, z.im);
        let im = dot2(self.re, z.im, self.im, z.re);
        Complex::new(re, im)
    }
}

// `a x + b y` for double-word `a`, `b`: the products of the leading parts and
// their sum are exact pairs, the remaining terms are second order, and the
// total is rounded once.
#[inline]
fn dot2<T: Real>(a: DoubleWord<T>, x: T, b: DoubleWord<T>, y: T) -> T {
    let (p1, e1) = two_prod(a.hi, x);
    let (p2, e2) = two_prod(b.hi, y);
    let (s, es) = two_sum(p1, p2);
    let tail = a.lo.mul_add(x, b.lo * y) + (e1 + e2 + es);
    s + tail
}

/// `k * v * tau` modulo `length`, as a double-word remainder of magnitude at
/// most about `length / 2`.
///
/// The product is formed exactly as a sum of four working-precision terms and
/// the nearest multiple of `length` is removed before anything is rounded, so
/// the remainder keeps double-word accuracy even for large `k`.
pub fn product_mod<T: Real>(k: T, v: T, tau: T, length: T) -> DoubleWord<T> {
    let (p, e) = two_prod(v, tau);
    let (a1, a2) = two_prod(k, p);
    let (b1, b2) = two_prod(k, e);

    let periods = (a1 / length).round();
    let (c1, c2) = two_prod(periods, length);
    DoubleWord::from_sum(a1, -c1) + (-c2) + a2 + b1 + b2
}

/// The rotation angle `-(2 pi k / length) * v * tau`, reduced into `(-pi, pi]`.
///
/// Twiddle angles `-2 pi j / n` are `reduce_angle(j, 1, 1, n)`.
pub fn reduce_angle<T: Real>(k: i64, v: T, tau: T, length: T) -> DoubleWord<T> {
    let kf = T::from_i64(k);
    debug_assert_eq!(kf.to_f64() as i64, k, "wavenumber not exact in working precision");

    let mut turns = product_mod(kf, v, tau, length) / length;
    let whole = turns.hi.round();
    turns = turns - whole;
    let half = T::from_f64(0.5);
    if turns.hi > half || (turns.hi == half && turns.lo >= T::zero()) {
        turns = turns - T::one();
    } else if turns.lt(DoubleWord::from_real(-half)) {
        turns = turns + T::one();
    }
    -(DoubleWord::two_pi() * turns)
}
