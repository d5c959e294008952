//! A single dispatch point over the five estimators.

use std::fmt;

use crate::error::{invalid, Result};
use crate::nonparametric::{blackman_tukey, periodogram, LagWindow, WindowKind};
use crate::parametric::{capon_spectrum, modcov_spectrum, yule_walker_spectrum, ArModel};
use crate::signal::{sample_autocorrelation, AutocorrSeq, RealSignal};
use crate::spectrum::{FrequencyGrid, PowerSpectrum};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Estimator {
    Periodogram,
    BlackmanTukey { half_width: usize, window: WindowKind },
    Capon { dim: usize },
    YuleWalker { order: usize },
    ModCov { order: usize },
}

impl Estimator {
    /// The name used in file names and CSV rows.
    pub fn name(&self) -> &'static str {
        match self {
            Estimator::Periodogram => "periodogram",
            Estimator::BlackmanTukey { .. } => "blackman_tukey",
            Estimator::Capon { .. } => "capon",
            Estimator::YuleWalker { .. } => "yule_walker",
            Estimator::ModCov { .. } => "modcov",
        }
    }

    /// Order/half-width, or 0 for the periodogram.
    pub fn order(&self) -> usize {
        match *self {
            Estimator::Periodogram => 0,
            Estimator::BlackmanTukey { half_width, .. } => half_width,
            Estimator::Capon { dim } => dim,
            Estimator::YuleWalker { order } | Estimator::ModCov { order } => order,
        }
    }

    /// Parses `periodogram`, `bt`/`blackman_tukey`, `capon`, `yw`/`yule_walker`
    /// or `modcov`, applying `order` (and `window` for Blackman-Tukey).
    pub fn parse(name: &str, order: usize, window: WindowKind) -> Result<Self> {
        let norm = name.to_ascii_lowercase().replace('-', "_");
        let e = match norm.as_str() {
            "periodogram" | "per" => Estimator::Periodogram,
            "bt" | "blackman_tukey" | "blackmantukey" => Estimator::BlackmanTukey {
                half_width: order,
                window,
            },
            "capon" | "mvdr" => Estimator::Capon { dim: order },
            "yw" | "yule_walker" | "yulewalker" => Estimator::YuleWalker { order },
            "modcov" | "modified_covariance" | "cm" => Estimator::ModCov { order },
            _ => return Err(invalid(format!("unknown estimator '{name}'"))),
        };
        if e != Estimator::Periodogram && order == 0 {
            return Err(invalid(format!("estimator {} needs a positive order", e.name())));
        }
        Ok(e)
    }

    /// Whether the estimator works from an autocorrelation sequence alone.
    pub fn accepts_acf(&self) -> bool {
        !matches!(self, Estimator::Periodogram | Estimator::ModCov { .. })
    }

    /// Largest lag the estimator reads from an autocorrelation sequence.
    pub fn lags_needed(&self) -> usize {
        match *self {
            Estimator::Periodogram | Estimator::ModCov { .. } => 0,
            Estimator::BlackmanTukey { half_width, .. } => half_width,
            Estimator::Capon { dim } => dim.saturating_sub(1),
            Estimator::YuleWalker { order } => order,
        }
    }

    /// Runs the estimator on raw samples, estimating the ACF where needed.
    pub fn on_signal(
        &self,
        x: &RealSignal,
        grid: &FrequencyGrid,
    ) -> Result<(PowerSpectrum, Option<ArModel>)> {
        match *self {
            Estimator::Periodogram => Ok((periodogram(x, grid)?, None)),
            Estimator::ModCov { order } => {
                let (m, s) = modcov_spectrum(x, order, grid)?;
                Ok((s, Some(m)))
            }
            _ => {
                let r = sample_autocorrelation(x, self.lags_needed().min(x.len() - 1))?;
                self.on_acf(&r, grid)
            }
        }
    }

    /// Runs an ACF-domain estimator. Periodogram and ModCov need raw samples.
    pub fn on_acf(
        &self,
        r: &AutocorrSeq,
        grid: &FrequencyGrid,
    ) -> Result<(PowerSpectrum, Option<ArModel>)> {
        match *self {
            Estimator::BlackmanTukey { half_width, window } => {
                let w = LagWindow::new(window, half_width)?;
                Ok((blackman_tukey(r, &w, grid)?, None))
            }
            Estimator::Capon { dim } => Ok((capon_spectrum(r, dim, grid)?, None)),
            Estimator::YuleWalker { order } => {
                let (m, s) = yule_walker_spectrum(r, order, grid)?;
                Ok((s, Some(m)))
            }
            Estimator::Periodogram | Estimator::ModCov { .. } => Err(invalid(format!(
                "{} requires raw data, not an autocorrelation sequence",
                self.name()
            ))),
        }
    }
}

impl fmt::Display for Estimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Estimator::Periodogram => write!(f, "periodogram"),
            Estimator::BlackmanTukey { half_width, window } => {
                write!(f, "blackman_tukey({},M={half_width})", window.name())
            }
            Estimator::Capon { dim } => write!(f, "capon(M={dim})"),
            Estimator::YuleWalker { order } => write!(f, "yule_walker(p={order})"),
            Estimator::ModCov { order } => write!(f, "modcov(p={order})"),
        }
    }
}
