//! Frequency grids and the spectrum container shared by every estimator.

use crate::error::{invalid, Result};

pub const DEFAULT_GRID_SIZE: usize = 1024;

/// Strictly increasing frequencies in cycles/sample, all within [0, 0.5].
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    points: Vec<f64>,
}

impl FrequencyGrid {
    /// `count` uniform points on [0, 0.5], both endpoints included.
    pub fn uniform(count: usize) -> Result<Self> {
        if count < 2 {
            return Err(invalid("a uniform grid needs at least 2 points"));
        }
        let step = 0.5 / (count - 1) as f64;
        let mut points: Vec<f64> = (0..count).map(|i| i as f64 * step).collect();
        points[count - 1] = 0.5;
        Ok(Self { points })
    }

    pub fn from_points(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(invalid("grid must not be empty"));
        }
        if points.iter().any(|f| !(0.0..=0.5).contains(f)) {
            return Err(invalid("grid points must lie in [0, 0.5]"));
        }
        if points.windows(2).any(|w| w[1] <= w[0]) {
            return Err(invalid("grid points must be strictly increasing"));
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Largest spacing between neighbouring points.
    pub fn max_step(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(0.0, f64::max)
    }
}

impl Default for FrequencyGrid {
    fn default() -> Self {
        Self::uniform(DEFAULT_GRID_SIZE).expect("default grid size is valid")
    }
}

/// Power values (linear units) over a frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSpectrum {
    pub grid: FrequencyGrid,
    pub values: Vec<f64>,
    /// Estimator name, e.g. `"capon"`.
    pub estimator: String,
    /// Order or window description, e.g. `"M=5"` or `"bartlett,M=5"`.
    pub setting: String,
    /// Grid indices where an AR denominator vanished and the value was capped.
    pub capped: Vec<usize>,
    /// Conditions met while computing, e.g. [`FLAG_LOADED`].
    pub flags: Vec<&'static str>,
}

/// Capon matrix needed diagonal loading.
pub const FLAG_LOADED: &str = "diagonal_loading";
/// AR driving variance was zero; values carry the 1/|A(f)|² shape scaled by 1e-300.
pub const FLAG_ZERO_RHO: &str = "zero_rho";

impl PowerSpectrum {
    pub(crate) fn new(
        grid: &FrequencyGrid,
        values: Vec<f64>,
        estimator: &str,
        setting: String,
    ) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        Self {
            grid: grid.clone(),
            values,
            estimator: estimator.to_string(),
            setting,
            capped: Vec::new(),
            flags: Vec::new(),
        }
    }

    pub fn has_flag(&self, flag: &str) -> bool {
        self.flags.contains(&flag)
    }

    pub fn frequencies(&self) -> &[f64] {
        self.grid.points()
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Value at the grid point nearest `f`.
    pub fn value_near(&self, f: f64) -> f64 {
        self.values[self.nearest_index(f)]
    }

    pub fn nearest_index(&self, f: f64) -> usize {
        let pts = self.grid.points();
        let mut best = 0;
        for (i, p) in pts.iter().enumerate() {
            if (p - f).abs() < (pts[best] - f).abs() {
                best = i;
            }
        }
        best
    }

    /// 10·log10 with a 1e-300 floor.
    pub fn db(power: f64) -> f64 {
        10.0 * power.max(1e-300).log10()
    }
}

/// Sets values within `-tol·max` of zero to exactly zero.
pub(crate) fn clamp_small_negatives(values: &mut [f64], rel_tol: f64) {
    let max = values.iter().copied().fold(0.0, f64::max);
    let floor = -rel_tol * max;
    for v in values.iter_mut() {
        if *v < 0.0 && *v >= floor {
            *v = 0.0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_shape() {
        let g = FrequencyGrid::default();
        assert_eq!(g.len(), 1024);
        assert_eq!(g.points()[0], 0.0);
        assert_eq!(g.points()[1023], 0.5);
        assert!((g.max_step() - 1.0 / 2046.0).abs() < 1e-15);
        assert!(g.points().windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn explicit_grid_validation() {
        assert!(FrequencyGrid::from_points(vec![0.1, 0.1]).is_err());
        assert!(FrequencyGrid::from_points(vec![0.6]).is_err());
        assert!(FrequencyGrid::from_points(vec![]).is_err());
        assert!(FrequencyGrid::uniform(1).is_err());
    }

    #[test]
    fn db_floor() {
        assert_eq!(PowerSpectrum::db(0.0), -3000.0);
        assert!((PowerSpectrum::db(100.0) - 20.0).abs() < 1e-12);
    }
}
