//! Periodogram and Blackman-Tukey estimators with their lag windows.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::numerics::even_cosine_sum;
use crate::signal::{sample_autocorrelation, AutocorrSeq, RealSignal};
use crate::spectrum::{clamp_small_negatives, FrequencyGrid, PowerSpectrum};

const NEGATIVE_TOL: f64 = 1e-9;

/// Triangular lag window, 1 - |k|/M inside the support.
pub fn bartlett_window(k: i64, m: usize) -> f64 {
    let k = k.unsigned_abs() as f64;
    let m = m as f64;
    if k <= m {
        1.0 - k / m
    } else {
        0.0
    }
}

/// Parzen (cubic B-spline) lag window.
pub fn parzen_window(k: i64, m: usize) -> f64 {
    let u = k.unsigned_abs() as f64 / m as f64;
    if u <= 0.5 {
        1.0 - 6.0 * u * u + 6.0 * u * u * u
    } else if u <= 1.0 {
        2.0 * (1.0 - u).powi(3)
    } else {
        0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowKind {
    Rectangular,
    Bartlett,
    Parzen,
}

impl WindowKind {
    pub fn name(self) -> &'static str {
        match self {
            WindowKind::Rectangular => "rectangular",
            WindowKind::Bartlett => "bartlett",
            WindowKind::Parzen => "parzen",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rectangular" | "rect" => Some(WindowKind::Rectangular),
            "bartlett" | "triangular" => Some(WindowKind::Bartlett),
            "parzen" => Some(WindowKind::Parzen),
            _ => None,
        }
    }
}

/// Even lag window with half-width `M` (w(k) = 0 for |k| > M).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LagWindow {
    kind: WindowKind,
    half_width: usize,
}

impl LagWindow {
    pub fn new(kind: WindowKind, half_width: usize) -> Result<Self> {
        if half_width == 0 {
            return Err(invalid("window half-width must be at least 1"));
        }
        Ok(Self { kind, half_width })
    }

    pub fn kind(&self) -> WindowKind {
        self.kind
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    pub fn weight(&self, k: i64) -> f64 {
        match self.kind {
            WindowKind::Rectangular => {
                if k.unsigned_abs() as usize <= self.half_width {
                    1.0
                } else {
                    0.0
                }
            }
            WindowKind::Bartlett => bartlett_window(k, self.half_width),
            WindowKind::Parzen => parzen_window(k, self.half_width),
        }
    }
}

/// Periodogram via the biased ACF: r(0) + 2 Σ_{k=1}^{N-1} r(k) cos(2πfk).
pub fn periodogram(x: &RealSignal, grid: &FrequencyGrid) -> Result<PowerSpectrum> {
    if x.len() < 2 {
        return Err(invalid("periodogram needs at least 2 samples"));
    }
    let r = sample_autocorrelation(x, x.len() - 1)?;
    let mut values: Vec<f64> = grid
        .points()
        .iter()
        .map(|&f| even_cosine_sum(r.values(), f))
        .collect();
    clamp_small_negatives(&mut values, NEGATIVE_TOL);
    Ok(PowerSpectrum::new(grid, values, "periodogram", format!("N={}", x.len())))
}

/// Blackman-Tukey: Σ_{|k|≤M} w(k) r(k) e^{-j2πfk}, folded to cosine form.
pub fn blackman_tukey(
    r: &AutocorrSeq,
    window: &LagWindow,
    grid: &FrequencyGrid,
) -> Result<PowerSpectrum> {
    let m = window.half_width();
    r.require_lags(m)?;
    let weighted: Vec<f64> = r.values()[..=m]
        .iter()
        .enumerate()
        .map(|(k, rk)| window.weight(k as i64) * rk)
        .collect();
    let mut values: Vec<f64> = grid
        .points()
        .iter()
        .map(|&f| even_cosine_sum(&weighted, f))
        .collect();
    if window.kind() != WindowKind::Rectangular {
        clamp_small_negatives(&mut values, NEGATIVE_TOL);
    }
    Ok(PowerSpectrum::new(
        grid,
        values,
        "blackman_tukey",
        format!("{},M={m}", window.kind().name()),
    ))
}
