mod common;

use advlab::xprec::{product_mod, reduce_angle, two_prod, two_sum};
use advlab::{DoubleWord, DwComplex};
use common::{frac_centered, pi, rat, sin_cos, to_f64, ulp, Fx};
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Signed;
use rand::Rng;

fn wide(rng: &mut impl Rng) -> f64 {
    let m: f64 = rng.gen_range(-1.0..1.0);
    m * 2f64.powi(rng.gen_range(-40..40))
}

fn dw_rat(x: DoubleWord<f64>) -> BigRational {
    rat(x.hi) + rat(x.lo)
}

#[test]
fn two_sum_is_error_free() {
    let s = two_sum(0.1, 0.2);
    assert_eq!(s.0, 0.1 + 0.2);
    assert_eq!(rat(s.0) + rat(s.1), rat(0.1) + rat(0.2));

    let mut rng = common::rng(11);
    for _ in 0..10_000 {
        let (a, b) = (wide(&mut rng), wide(&mut rng));
        let (s, e) = two_sum(a, b);
        assert_eq!(s, a + b);
        assert_eq!(rat(s) + rat(e), rat(a) + rat(b), "{a} + {b}");
    }
}

#[test]
fn two_prod_is_error_free() {
    let (p, e) = two_prod(std::f64::consts::PI, std::f64::consts::E);
    assert_eq!(rat(p) + rat(e), rat(std::f64::consts::PI) * rat(std::f64::consts::E));

    let mut rng = common::rng(12);
    for _ in 0..10_000 {
        let (a, b) = (wide(&mut rng), wide(&mut rng));
        let (p, e) = two_prod(a, b);
        assert_eq!(p, a * b);
        assert_eq!(rat(p) + rat(e), rat(a) * rat(b), "{a} * {b}");
    }
}

fn random_dw(rng: &mut impl Rng) -> DoubleWord<f64> {
    let hi: f64 = rng.gen_range(-4.0..4.0);
    let lo = rng.gen_range(-0.5..0.5) * ulp(hi);
    DoubleWord::from_sum(hi, lo)
}

#[test]
fn double_word_arithmetic_to_relative_1e30() {
    let mut rng = common::rng(13);
    for _ in 0..2_000 {
        let (a, b) = (random_dw(&mut rng), random_dw(&mut rng));
        let exact = dw_rat(a) * dw_rat(b);
        let rel = to_f64(&((dw_rat(a * b) - &exact) / &exact)).abs();
        assert!(rel <= 1e-30, "mul rel {rel:e}");

        let exact = dw_rat(a) + dw_rat(b);
        let got = dw_rat(a + b);
        let err = to_f64(&(got - &exact)).abs();
        assert!(err <= 1e-30 * (a.hi.abs() + b.hi.abs()), "add err {err:e}");
    }
}

#[test]
fn mul_round_is_correctly_rounded() {
    let mut rng = common::rng(14);
    for _ in 0..10_000 {
        let theta = Fx::from_rat(&rat(rng.gen_range(-3.1..3.1)));
        let (s, c) = sin_cos(&theta);
        let split = |x: &Fx| {
            let hi = x.to_f64();
            DoubleWord::from_sum(hi, to_f64(&(x.to_rat() - rat(hi))))
        };
        let w = DwComplex::new(split(&c), split(&s));
        let z = Complex::new(wide(&mut rng), wide(&mut rng));
        let got = w.mul_round(z);

        let (wr, wi) = (dw_rat(w.re), dw_rat(w.im));
        let re = &wr * rat(z.re) - &wi * rat(z.im);
        let im = &wr * rat(z.im) + &wi * rat(z.re);
        for (g, e) in [(got.re, re), (got.im, im)] {
            let err = to_f64(&(rat(g) - e).abs());
            assert!(err <= 0.5 * ulp(g), "error {err:e} vs ulp {:e}", ulp(g));
        }
    }
}

#[test]
fn sin_cos_matches_high_precision() {
    let mut rng = common::rng(15);
    for _ in 0..500 {
        let hi: f64 = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        let lo = rng.gen_range(-0.5..0.5) * ulp(hi);
        let x = DoubleWord::from_sum(hi, lo);
        let (s, c) = x.sin_cos();
        let (es, ec) = sin_cos(&Fx::from_rat(&dw_rat(x)));
        for (got, exact) in [(s, es), (c, ec)] {
            let err = to_f64(&(dw_rat(got) - exact.to_rat())).abs();
            assert!(err <= 1e-30, "sin/cos({hi:e}) error {err:e}");
            assert!((got.hi - exact.to_f64()).abs() <= 2.0 * ulp(got.hi));
        }
    }
}

#[test]
fn angle_reduction_matches_oracle() {
    let mut rng = common::rng(16);
    let two_pi = pi().mul(&Fx::from_int(2));
    for _ in 0..2_000 {
        let k: i64 = rng.gen_range(-1_000_000..=1_000_000);
        let v: f64 = rng.gen_range(-3.0..3.0);
        let tau: f64 = rng.gen_range(0.0..0.1);
        let turns = frac_centered(&(BigRational::from_integer(k.into()) * rat(v) * rat(tau) / rat(2.0)));
        let exact = Fx(-two_pi.mul(&Fx::from_rat(&turns)).0);
        let got = reduce_angle(k, v, tau, 2.0);
        let err = to_f64(&(dw_rat(got) - exact.to_rat())).abs();
        // exact half turns may land on either end of the interval
        if (to_f64(&turns).abs() - 0.5).abs() > 1e-20 {
            assert!(err <= 1e-28, "k={k} err {err:e}");
        }

        let m = product_mod(k as f64, v, tau, 2.0);
        let full = BigRational::from_integer(k.into()) * rat(v) * rat(tau);
        let periods = ((full.clone() - dw_rat(m)) / rat(2.0)).round();
        let exact_rem = full - periods * rat(2.0);
        let err = to_f64(&(dw_rat(m) - exact_rem)).abs();
        assert!(err <= 1e-28, "k={k} remainder err {err:e}");
        assert!(m.hi.abs() <= 1.0 + 1e-12);
    }
}
