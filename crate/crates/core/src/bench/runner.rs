use std::time::{Duration, Instant};

use crate::error::{invalid, Result, SpecError};
use crate::estimator::Estimator;
use crate::nonparametric::WindowKind;
use crate::parametric::ArModel;
use crate::signal::{exact_two_tone_acf, synth_two_tone, RealSignal, Scenario, ScenarioKind};
use crate::spectrum::{FrequencyGrid, PowerSpectrum, DEFAULT_GRID_SIZE};
use crate::stego::{embed, load_wav, synth_carrier, DC_EXCLUSION_CYCLES};

use super::peaks::{peak_pick, Peak};
use super::scenarios::ScenarioSuite;

pub const NOT_APPLICABLE_RAW: &str = "not applicable: requires raw data";

#[derive(Debug, Clone, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum CellOutcome {
    Done {
        spectrum: PowerSpectrum,
        model: Option<ArModel>,
        /// Top-2 peaks by value.
        peaks: Vec<Peak>,
        /// Distance of each peak to the nearest true frequency.
        errors: Vec<f64>,
        elapsed: Duration,
    },
    NotApplicable(&'static str),
    Failed(SpecError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunCell {
    pub estimator: Estimator,
    pub outcome: CellOutcome,
}

impl RunCell {
    pub fn spectrum(&self) -> Option<&PowerSpectrum> {
        match &self.outcome {
            CellOutcome::Done { spectrum, .. } => Some(spectrum),
            _ => None,
        }
    }

    pub fn peaks(&self) -> &[Peak] {
        match &self.outcome {
            CellOutcome::Done { peaks, .. } => peaks,
            _ => &[],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub scenario: Scenario,
    pub grid_size: usize,
    pub true_frequencies: Vec<f64>,
    /// Sorted by estimator name.
    pub cells: Vec<RunCell>,
}

impl RunReport {
    pub fn seed(&self) -> u64 {
        self.scenario.seed
    }

    pub fn cell(&self, estimator_name: &str) -> Option<&RunCell> {
        self.cells.iter().find(|c| c.estimator.name() == estimator_name)
    }

    /// `spectrum_<scenario>_<estimator>.csv`
    pub fn spectrum_file_name(&self, cell: &RunCell) -> String {
        format!("spectrum_{}_{}.csv", self.scenario.name, cell.estimator.name())
    }
}

enum Input {
    Samples(RealSignal),
    Exact,
}

fn estimators_for(order: usize) -> [Estimator; 5] {
    [
        Estimator::Periodogram,
        Estimator::BlackmanTukey {
            half_width: order,
            window: WindowKind::Bartlett,
        },
        Estimator::Capon { dim: order },
        Estimator::YuleWalker { order },
        Estimator::ModCov { order },
    ]
}

fn prepare(sc: &Scenario) -> Result<Input> {
    match sc.kind {
        ScenarioKind::TwoToneAwgn => Ok(Input::Samples(synth_two_tone(sc)?)),
        ScenarioKind::ExactAcf => Ok(Input::Exact),
        ScenarioKind::HiddenInSound => {
            let carrier = match &sc.carrier {
                Some(path) => load_wav(path)?,
                None => synth_carrier(sc.seed, sc.n)?,
            };
            Ok(Input::Samples(embed(&carrier, sc.f1, sc.a, sc.n)?.stego_signal))
        }
    }
}

fn run_cell(sc: &Scenario, input: &Input, est: Estimator, grid: &FrequencyGrid) -> RunCell {
    let start = Instant::now();
    let result = match input {
        Input::Samples(x) => est.on_signal(x, grid),
        Input::Exact if !est.accepts_acf() => {
            return RunCell {
                estimator: est,
                outcome: CellOutcome::NotApplicable(NOT_APPLICABLE_RAW),
            }
        }
        Input::Exact => exact_two_tone_acf(sc, est.lags_needed()).and_then(|r| est.on_acf(&r, grid)),
    };
    let elapsed = start.elapsed();
    let outcome = match result {
        Ok((spectrum, model)) => {
            let mut peaks = peak_pick(&spectrum, grid.len());
            if sc.kind == ScenarioKind::HiddenInSound {
                let lower = DC_EXCLUSION_CYCLES / sc.n as f64;
                peaks.retain(|p| p.frequency >= lower);
            }
            peaks.truncate(2);
            let truths = sc.true_frequencies();
            let errors = peaks
                .iter()
                .map(|p| truths.iter().map(|t| (p.frequency - t).abs()).fold(f64::INFINITY, f64::min))
                .collect();
            CellOutcome::Done {
                spectrum,
                model,
                peaks,
                errors,
                elapsed,
            }
        }
        Err(e) => CellOutcome::Failed(e),
    };
    RunCell {
        estimator: est,
        outcome,
    }
}

impl ScenarioSuite {
    /// Runs every estimator applicable to the named scenario.
    ///
    /// Estimator failures become [`CellOutcome::Failed`] cells; only an
    /// unknown name or unusable scenario input is an error.
    pub fn run(&self, name: &str, seed: Option<u64>, grid_size: Option<usize>) -> Result<RunReport> {
        let mut sc = self
            .get(name)
            .cloned()
            .ok_or_else(|| SpecError::UnknownScenario(name.to_string()))?;
        if let Some(seed) = seed {
            sc.seed = seed;
        }
        sc.validate()?;
        let grid_size = grid_size.unwrap_or(DEFAULT_GRID_SIZE);
        if grid_size < 3 {
            return Err(invalid("grid size must be at least 3"));
        }
        let grid = FrequencyGrid::uniform(grid_size)?;
        let input = prepare(&sc)?;
        let mut cells: Vec<RunCell> = estimators_for(sc.order)
            .into_iter()
            .map(|est| run_cell(&sc, &input, est, &grid))
            .collect();
        cells.sort_by(|a, b| a.estimator.name().cmp(b.estimator.name()));
        Ok(RunReport {
            true_frequencies: sc.true_frequencies(),
            scenario: sc,
            grid_size,
            cells,
        })
    }
}

/// Runs a built-in scenario.
pub fn run_scenario(name: &str, seed: Option<u64>, grid_size: Option<usize>) -> Result<RunReport> {
    ScenarioSuite::builtin().run(name, seed, grid_size)
}
