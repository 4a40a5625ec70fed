use std::fmt::Write;
use std::path::Path;

use advlab::analysis::ErrorSeries;

use crate::CliError;

/// A CSV table with `# key=value` metadata.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub title: String,
    pub meta: Vec<(String, String)>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Comment lines written after the rows.
    pub footer: Vec<(String, String)>,
}

impl Report {
    pub fn new(title: &str, header: &[&str]) -> Self {
        Self {
            title: title.to_string(),
            header: header.iter().map(|s| s.to_string()).collect(),
            ..Default::default()
        }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.meta.push((key.to_string(), value.to_string()));
        self
    }

    pub fn footer(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.footer.push((key.to_string(), value.to_string()));
        self
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.header.len());
        self.rows.push(cells);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            let _ = writeln!(out, "# {k}={v}");
        }
        let _ = writeln!(out, "{}", self.header.join(","));
        for row in &self.rows {
            let _ = writeln!(out, "{}", row.join(","));
        }
        for (k, v) in &self.footer {
            let _ = writeln!(out, "# {k}={v}");
        }
        out
    }
}

/// 17 significant digits in scientific notation.
pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn series_report(series: &ErrorSeries<f64>) -> Report {
    let mut r = Report::new("propagate", &["step", "error_linf"]);
    for (k, v) in series.meta.entries() {
        r.meta(k, v);
    }
    for &(step, err) in &series.records {
        r.row(vec![step.to_string(), real(err)]);
    }
    r
}

/// Reads `(step, error)` pairs from a `step,error_linf` CSV, skipping
/// comments and the header.
pub fn parse_series(text: &str) -> Result<Vec<(u64, f64)>, CliError> {
    let mut out = Vec::new();
    let mut header_seen = false;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !header_seen {
            header_seen = true;
            if line.starts_with("step") {
                continue;
            }
        }
        let mut cells = line.split(',');
        let parse_err = || CliError::Config(format!("input: malformed row at line {}", lineno + 1));
        let step = cells.next().and_then(|s| s.trim().parse().ok()).ok_or_else(parse_err)?;
        let err = cells.next().and_then(|s| s.trim().parse().ok()).ok_or_else(parse_err)?;
        out.push((step, err));
    }
    Ok(out)
}

/// A gnuplot script drawing the series in `csv` on log-log axes.
pub fn gnuplot_script(csv: &Path, title: &str) -> String {
    format!(
        "set datafile separator ','\n\
         set datafile commentschars '#'\n\
         set logscale xy\n\
         set xlabel 'steps'\n\
         set ylabel 'L-infinity error'\n\
         set key off\n\
         set title '{title}'\n\
         plot '{}' using 1:2 every ::1 with linespoints\n",
        csv.display()
    )
}
