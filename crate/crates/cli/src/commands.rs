//! Subcommand bodies. Each returns a [`Report`] instead of printing.

use std::fs;

use advlab::analysis::{
    self, brute_force_avg, davg_error, error_shape, fit_slope, geometric_schedule,
    one_step_cell_errors, record_series, AvgScheme, ErrorSeries, LocalData, OneStepScheme,
};
use advlab::initial::SplitMix64;
use advlab::method::{Advector, MethodVisitor};
use advlab::splitting::{run_split, CompositionScheme};
use advlab::{Grid1D, InitialCondition};

use crate::report::{parse_series, real, series_report, Report};
use crate::{AvgErrorArgs, CliError, OneStepArgs, PointwiseArgs, PropagateArgs, SlopeArgs, SplitArgs};

/// Steps at which the error is recorded, always starting at 0.
pub fn parse_schedule(spec: &str, steps: u64) -> Result<Vec<u64>, CliError> {
    let mut out = match spec {
        "geometric" => geometric_schedule(steps),
        "all" => (1..=steps).collect(),
        list => {
            let mut v = Vec::new();
            for item in list.split(',') {
                let k: u64 = item.trim().parse().map_err(|_| {
                    CliError::Config(format!("schedule: cannot parse step count '{item}'"))
                })?;
                if k > steps {
                    return Err(CliError::Config(format!(
                        "schedule: step {k} exceeds --steps {steps}"
                    )));
                }
                v.push(k);
            }
            v.sort_unstable();
            v.dedup();
            v
        }
    };
    if out.first() != Some(&0) {
        out.insert(0, 0);
    }
    Ok(out)
}

pub fn propagate(args: &PropagateArgs) -> Result<Report, CliError> {
    let config = args.solver.run_config(args.tau, args.steps)?;
    let schedule = parse_schedule(&args.schedule, args.steps)?;
    let series = record_series(&config, &schedule)?;
    let mut report = series_report(&series);
    report.meta("steps", args.steps);
    report.title = config.method.to_string();
    Ok(report)
}

pub fn avg_error(args: &AvgErrorArgs) -> Result<Report, CliError> {
    let (width, scheme) = match args.degree {
        1 => (3, AvgScheme::Lagrange1),
        2 => (5, AvgScheme::Lagrange2),
        d => {
            return Err(CliError::Config(format!("degree: must be 1 or 2, got {d}")));
        }
    };
    let mut rng = SplitMix64::new(args.seed);
    let mut report = Report::new("avg-error", &["trial", "closed_form", "brute_force", "abs_diff"]);
    report
        .meta("degree", args.degree)
        .meta("trials", args.trials)
        .meta("seed", args.seed)
        .meta("quad_points", args.quad_points);
    let mut worst = 0.0f64;
    let mut u = vec![0.0; width];
    for trial in 0..args.trials {
        for x in u.iter_mut() {
            *x = 2.0 * rng.next_f64() - 1.0;
        }
        let closed = davg_error(&u, args.degree)?;
        let brute = brute_force_avg(scheme, LocalData::Nodal(&u), args.quad_points)?
            - brute_force_avg(AvgScheme::Exact, LocalData::Nodal(&u), args.quad_points)?;
        let diff = (closed - brute).abs();
        worst = worst.max(diff);
        report.row(vec![trial.to_string(), real(closed), real(brute), real(diff)]);
    }
    report.footer("max_abs_diff", real(worst));
    Ok(report)
}

struct SplitSweep<'a> {
    scheme: CompositionScheme,
    ic: &'a InitialCondition<f64>,
    grid: Grid1D<f64>,
    v: f64,
    taus: &'a [f64],
    final_time: f64,
}

impl MethodVisitor<f64> for SplitSweep<'_> {
    type Output = advlab::Result<Vec<(u64, f64, f64)>>;

    fn visit<A: Advector<f64>>(self, advector: A) -> Self::Output {
        self.taus
            .iter()
            .map(|&tau| {
                let (run, _) =
                    run_split(&advector, self.scheme, self.ic, self.grid, self.v, tau, self.final_time)?;
                Ok((run.steps, tau, run.error_linf))
            })
            .collect()
    }
}

pub fn split(args: &SplitArgs) -> Result<Report, CliError> {
    let method = args.solver.method();
    method.validate(args.solver.n)?;
    let ic = args.solver.initial_condition()?;
    let grid = Grid1D::new(args.solver.n)?;
    let scheme: CompositionScheme = args.scheme.into();
    let rows = method.visit(SplitSweep {
        scheme,
        ic: &ic,
        grid,
        v: args.solver.v,
        taus: &args.tau,
        final_time: args.final_time,
    })?;

    let mut report = Report::new("split", &["steps", "tau", "error_linf"]);
    report
        .meta("scheme", scheme)
        .meta("method", method.name())
        .meta("n", args.solver.n);
    if let Some(d) = method.degree() {
        report.meta("degree", d);
    }
    report.meta("v", real(args.solver.v)).meta("ic", ic.kind.name());
    if let Some(mode) = method.fft_mode() {
        report.meta("fft_mode", mode);
    }
    report.meta("final_time", real(args.final_time));
    for (steps, tau, err) in rows {
        report.row(vec![steps.to_string(), real(tau), real(err)]);
    }
    Ok(report)
}

pub fn pointwise(args: &PointwiseArgs) -> Result<Report, CliError> {
    let config = args.solver.run_config(args.tau, args.steps)?;
    let samples = analysis::pointwise(&config)?;
    let shape = error_shape(&samples)?;
    let mut report = Report::new("pointwise", &["x", "numeric", "exact", "error"]);
    for (k, v) in config.meta().entries() {
        report.meta(k, v);
    }
    report.meta("steps", args.steps);
    for s in &samples {
        report.row(vec![real(s.x), real(s.numeric), real(s.exact), real(s.error())]);
    }
    report
        .footer("curvature_correlation", real(shape.curvature_correlation))
        .footer("sign_change_fraction", real(shape.sign_change_fraction));
    Ok(report)
}

pub fn slope(args: &SlopeArgs) -> Result<f64, CliError> {
    let text = fs::read_to_string(&args.input)
        .map_err(|e| CliError::Io(format!("{}: {e}", args.input.display())))?;
    let records = parse_series(&text)?;
    let meta = analysis::SeriesMeta {
        method: String::new(),
        n: 0,
        degree: None,
        v: 0.0,
        tau: 0.0,
        ic: String::new(),
        phase_seed: None,
        fft_mode: None,
    };
    let mut series = ErrorSeries::new(meta);
    for (step, err) in records {
        series.push(step, err)?;
    }
    Ok(fit_slope(&series, args.window_min, args.window_max)?)
}

pub fn one_step(args: &OneStepArgs) -> Result<Report, CliError> {
    if args.taus == 0 {
        return Err(CliError::Config("taus: need at least one step size".into()));
    }
    let grid = Grid1D::<f64>::new(args.n)?;
    let ic = InitialCondition::new(args.ic.into());
    let h = grid.h();
    let mut report = Report::new("one-step", &["tau", "cell", "x", "lagrange1", "dg"]);
    report
        .meta("n", args.n)
        .meta("ic", ic.kind.name())
        .meta("dg_degree", args.degree);
    for k in 1..=args.taus {
        let tau = h * k as f64 / (args.taus + 1) as f64;
        let lin = one_step_cell_errors(OneStepScheme::Lagrange1, &ic, grid, tau)?;
        let dg = one_step_cell_errors(OneStepScheme::Dg(args.degree), &ic, grid, tau)?;
        for i in 0..args.n {
            let x = grid.point(i) + 0.5 * h;
            report.row(vec![real(tau), i.to_string(), real(x), real(lin[i]), real(dg[i])]);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedules() {
        assert_eq!(parse_schedule("all", 3).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(parse_schedule("5,2,2", 10).unwrap(), vec![0, 2, 5]);
        assert!(parse_schedule("11", 10).is_err());
        assert!(parse_schedule("x", 10).is_err());
        let g = parse_schedule("geometric", 100).unwrap();
        assert_eq!(g[..3], [0, 1, 2]);
        assert_eq!(*g.last().unwrap(), 100);
    }
}
