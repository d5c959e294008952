use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::Result;
use crate::spectrum::PowerSpectrum;

use super::runner::{CellOutcome, RunReport};

pub const SPECTRUM_HEADER: &str = "frequency,power,power_db";
pub const SUMMARY_HEADER: &str =
    "scenario,estimator,order,peak1_f,peak1_db,peak2_f,peak2_db,err1,err2,seed,grid,ms";

#[derive(Debug, Clone, Copy, Default)]
pub struct ExportOptions {
    /// Fill the `ms` column with wall-clock times. Off by default, which
    /// keeps summary.csv byte-identical across runs.
    pub timing: bool,
}

/// Formats `v` with `digits` significant digits, `%g` style.
pub fn format_sig(v: f64, digits: usize) -> String {
    if !v.is_finite() {
        return if v.is_nan() { "nan".into() } else if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..digits as i32).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn num(v: f64) -> String {
    format_sig(v, 12)
}

fn spectrum_csv(s: &PowerSpectrum) -> String {
    let mut out = String::with_capacity(48 * s.values.len());
    out.push_str(SPECTRUM_HEADER);
    out.push('\n');
    for (f, p) in s.frequencies().iter().zip(&s.values) {
        let _ = writeln!(out, "{},{},{}", num(*f), num(*p), num(PowerSpectrum::db(*p)));
    }
    out
}

fn cell_text(msg: &str) -> String {
    msg.replace([',', '\n', '"'], ";")
}

fn summary_csv(reports: &[RunReport], opts: ExportOptions) -> String {
    let mut rows: Vec<(String, &'static str, String)> = Vec::new();
    for report in reports {
        let sc = &report.scenario;
        for cell in &report.cells {
            let tail = format!("{},{}", report.seed(), report.grid_size);
            let body = match &cell.outcome {
                CellOutcome::Done {
                    peaks,
                    errors,
                    elapsed,
                    ..
                } => {
                    let mut cols = Vec::with_capacity(6);
                    for i in 0..2 {
                        match peaks.get(i) {
                            Some(p) => {
                                cols.push(num(p.frequency));
                                cols.push(num(PowerSpectrum::db(p.value)));
                            }
                            None => cols.extend([String::new(), String::new()]),
                        }
                    }
                    for i in 0..2 {
                        cols.push(errors.get(i).map(|e| num(*e)).unwrap_or_default());
                    }
                    let ms = if opts.timing {
                        num(elapsed.as_secs_f64() * 1e3)
                    } else {
                        String::new()
                    };
                    format!("{},{tail},{ms}", cols.join(","))
                }
                CellOutcome::NotApplicable(msg) => format!("{},,,,,,{tail},", cell_text(msg)),
                CellOutcome::Failed(e) => {
                    format!("{},,,,,,{tail},", cell_text(&format!("failed: {e}")))
                }
            };
            let line = format!(
                "{},{},{},{body}",
                sc.name,
                cell.estimator.name(),
                cell.estimator.order()
            );
            rows.push((sc.name.clone(), cell.estimator.name(), line));
        }
    }
    rows.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)));
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for (_, _, line) in rows {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Writes one spectrum CSV per completed cell and a combined `summary.csv`.
/// Returns the written paths, summary last.
pub fn export_csv(reports: &[RunReport], dir: &Path, opts: ExportOptions) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for report in reports {
        for cell in &report.cells {
            if let Some(s) = cell.spectrum() {
                let path = dir.join(report.spectrum_file_name(cell));
                fs::write(&path, spectrum_csv(s))?;
                written.push(path);
            }
        }
    }
    let summary = dir.join("summary.csv");
    fs::write(&summary, summary_csv(reports, opts))?;
    written.push(summary);
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_sig(0.0, 12), "0");
        assert_eq!(format_sig(0.25, 12), "0.25");
        assert_eq!(format_sig(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(format_sig(-123456.789, 12), "-123456.789");
        assert_eq!(format_sig(1e-300, 12), "1e-300");
        assert_eq!(format_sig(-3000.0, 12), "-3000");
        assert_eq!(format_sig(2.0f64.powi(60), 12), "1.15292150461e18");
        assert_eq!(format_sig(0.5 / 1023.0, 12), "0.000488758553275");
    }

    #[test]
    fn formatted_values_parse_back() {
        for v in [1.0 / 7.0, 12345.678901234, 9.87654321e-7, 6.02214076e23, -0.1] {
            let back: f64 = format_sig(v, 12).parse().unwrap();
            assert!(((back - v) / v).abs() < 5e-12, "{v} -> {back}");
        }
    }
}
