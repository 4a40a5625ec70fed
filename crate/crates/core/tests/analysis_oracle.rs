mod common;

use advlab::analysis::{
    avg_exact, avg_lagrange1, brute_force_avg, davg_error, fit_slope, record_series, AvgScheme,
    ErrorSeries, LocalData, RunConfig, SeriesMeta,
};
use advlab::method::Method;
use advlab::quadrature::{legendre, GaussLegendre};
use advlab::splitting::{exact_solution_source, source};
use advlab::{project_modal, Grid, Ic, IcKind};
use proptest::prelude::*;
use rand::Rng;

fn stencil(rng: &mut impl Rng, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

#[test]
fn closed_forms_match_brute_force() {
    let mut rng = common::rng(41);
    let mut worst = [0.0f64; 4];
    for _ in 0..1_000 {
        let u = stencil(&mut rng, 3);
        let data = LocalData::Nodal(&u);
        let exact = brute_force_avg(AvgScheme::Exact, data, 64).unwrap();
        let lin = brute_force_avg(AvgScheme::Lagrange1, data, 64).unwrap();
        let u3 = [u[0], u[1], u[2]];
        worst[0] = worst[0].max((exact - avg_exact(u3)).abs());
        worst[1] = worst[1].max((lin - avg_lagrange1(u3)).abs());
        worst[2] = worst[2].max((lin - exact - davg_error(&u, 1).unwrap()).abs());

        let u = stencil(&mut rng, 5);
        let data = LocalData::Nodal(&u);
        let quad = brute_force_avg(AvgScheme::Lagrange2, data, 64).unwrap()
            - brute_force_avg(AvgScheme::Exact, data, 64).unwrap();
        worst[3] = worst[3].max((quad - davg_error(&u, 2).unwrap()).abs());
    }
    for (name, w) in ["avg_exact", "avg_lagrange1", "davg(1)", "davg(2)"].iter().zip(worst) {
        assert!(w <= 1e-10, "{name}: {w:e}");
    }
}

#[test]
fn brute_force_basics() {
    let ones = [1.0f64; 3];
    let c = brute_force_avg(AvgScheme::Exact, LocalData::Nodal(&ones), 32).unwrap();
    assert!((c - 1.0).abs() <= 1e-14);
    assert!(brute_force_avg(AvgScheme::Exact, LocalData::Nodal(&ones), 31).is_err());
    assert!(brute_force_avg(AvgScheme::Lagrange2, LocalData::Nodal(&ones), 32).is_err());
    assert!(davg_error(&ones, 2).is_err());
}

#[test]
fn dg_preserves_the_double_average() {
    let mut rng = common::rng(42);
    for degree in 1..=3 {
        for _ in 0..20 {
            let cells = stencil(&mut rng, 2 * (degree + 1));
            let data = LocalData::Modal { degree, cells: &cells };
            let dg = brute_force_avg(AvgScheme::Dg, data, 32).unwrap();
            let exact = brute_force_avg(AvgScheme::Exact, data, 32).unwrap();
            assert!((dg - exact).abs() <= 1e-12, "degree {degree}: {:e}", (dg - exact).abs());
        }
    }
}

#[test]
fn linear_error_is_curvature_over_twelve() {
    for h in [0.5, 0.1, 0.01] {
        let q = |x: f64| 3.0 * x * x - x + 0.25;
        let u: Vec<f64> = [-1.0, 0.0, 1.0].iter().map(|&k| q(0.3 + k * h)).collect();
        // unit-spacing formula applied to data with spacing h
        let want = h * h / 12.0 * 6.0;
        let got = davg_error(&u, 1).unwrap();
        assert!(((got - want) / want).abs() <= 1e-10, "h={h}: {got} vs {want}");
    }
}

#[test]
fn projection_matches_refined_quadrature() {
    let grid = Grid::new(100).unwrap();
    let h = grid.h();
    let ic = Ic::new(IcKind::RungeCos);
    let m = project_modal(&ic, grid, 2);
    let rule = GaussLegendre::<f64>::new(16);
    for i in (0..100).step_by(9) {
        let x0 = grid.point(i);
        for deg in 0..=2 {
            let mut integral = 0.0;
            for k in 0..10 {
                let (a, b) = (x0 + k as f64 * h / 10.0, x0 + (k + 1) as f64 * h / 10.0);
                integral += rule.integrate(a, b, |x| ic.eval(x) * legendre(deg, 2.0 * (x - x0) / h - 1.0));
            }
            let want = (2 * deg + 1) as f64 / h * integral;
            assert!((m.cell(i)[deg] - want).abs() <= 1e-12, "cell {i} m={deg}");
        }
    }
}

#[test]
fn source_solution_matches_characteristics_quadrature() {
    let mut rng = common::rng(43);
    let rule = GaussLegendre::<f64>::new(16);
    for kind in [IcKind::RungeCos, IcKind::Cos4] {
        let ic = Ic::new(kind);
        for _ in 0..50 {
            let x = rng.gen_range(-1.0..1.0);
            let t = rng.gen_range(0.0..2.0);
            let v = rng.gen_range(-2.0..2.0);
            let panels = 400;
            let mut integral = 0.0;
            for k in 0..panels {
                let (a, b) = (t * k as f64 / panels as f64, t * (k + 1) as f64 / panels as f64);
                integral += rule.integrate(a, b, |s| source(x - v * s));
            }
            let want = ic.eval(advlab::exact::wrap_periodic(x - v * t)) + integral;
            let got = exact_solution_source(&ic, v, t, x);
            assert!((got - want).abs() <= 1e-12, "x={x} t={t} v={v}: {:e}", (got - want).abs());
        }
    }
}

fn meta() -> SeriesMeta {
    SeriesMeta {
        method: "synthetic".into(),
        n: 1,
        degree: None,
        v: 1.0,
        tau: 1.0,
        ic: "none".into(),
        phase_seed: None,
        fft_mode: None,
    }
}

#[test]
fn slopes_of_power_laws() {
    for (exponent, want) in [(1.0, 1.0), (0.5, 0.5), (0.0, 0.0)] {
        let power = |k: f64| 3e-9 * k.powf(exponent);
        let mut s = ErrorSeries::new(meta());
        for k in advlab::analysis::geometric_schedule(100_000) {
            s.push(k, power(k as f64)).unwrap();
        }
        let slope = fit_slope(&s, 100, 10_000).unwrap();
        assert!((slope - want).abs() <= 1e-12, "{slope}");
    }
    let mut s = ErrorSeries::new(meta());
    s.push(1, 1.0).unwrap();
    s.push(2, 1.0).unwrap();
    assert!(matches!(fit_slope(&s, 1, 10), Err(advlab::Error::Analysis(_))));
}

#[test]
fn series_are_reproducible() {
    let config = RunConfig {
        method: Method::Lagrange { degree: 3 },
        n: 100,
        v: 1.0,
        tau: 0.02 * (2f64.sqrt() - 1.0),
        steps: 10_000,
        ic: Ic::new(IcKind::RungeCos),
    };
    let schedule = advlab::analysis::geometric_schedule(10_000);
    let a = record_series(&config, &schedule).unwrap();
    let b = record_series(&config, &schedule).unwrap();
    assert_eq!(a, b);
    assert!(a.records.windows(2).all(|w| w[0].0 < w[1].0));
    assert!(record_series(&config, &[]).unwrap().is_empty());
}

proptest! {
    #[test]
    fn averaged_error_identity(u in prop::array::uniform3(-1e3f64..1e3)) {
        let lhs = avg_lagrange1(u) - avg_exact(u);
        let rhs = davg_error(&u, 1).unwrap();
        let scale = u.iter().map(|x| x.abs()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
        prop_assert!((lhs - rhs).abs() <= 2.0 * f64::EPSILON * scale, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn constants_have_no_averaged_error(c in -10.0f64..10.0) {
        prop_assert!(davg_error(&[c; 3], 1).unwrap().abs() <= 4.0 * f64::EPSILON * c.abs());
        prop_assert!(davg_error(&[c; 5], 2).unwrap().abs() <= 16.0 * f64::EPSILON * c.abs());
    }
}
