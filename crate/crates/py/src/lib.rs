//! Python bindings for `specest`.
//!
//! Signals go in and out as lists of floats. Spectra come back as
//! `Spectrum` objects and fitted AR models as `ArModel`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use ::specest as core;
use core::bench::{peak_pick as core_peak_pick, CellOutcome, BUILTIN_NAMES};
use core::{
    AcfSource, AudioCarrier, AutocorrSeq, Estimator, FrequencyGrid, LagWindow, PowerSpectrum,
    RealSignal, Scenario, ScenarioKind, SpecError, WindowKind,
};

fn py_err(e: SpecError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn grid_from(grid: Option<usize>, frequencies: Option<Vec<f64>>) -> PyResult<FrequencyGrid> {
    match (grid, frequencies) {
        (Some(_), Some(_)) => Err(PyValueError::new_err("pass either grid or frequencies, not both")),
        (_, Some(f)) => FrequencyGrid::from_points(f).map_err(py_err),
        (Some(n), None) => FrequencyGrid::uniform(n).map_err(py_err),
        (None, None) => Ok(FrequencyGrid::default()),
    }
}

fn signal(x: Vec<f64>) -> PyResult<RealSignal> {
    RealSignal::new(x).map_err(py_err)
}

fn acf(r: Vec<f64>) -> PyResult<AutocorrSeq> {
    AutocorrSeq::new(r, AcfSource::Estimated).map_err(py_err)
}

fn window_kind(name: &str) -> PyResult<WindowKind> {
    WindowKind::parse(name).ok_or_else(|| PyValueError::new_err(format!("unknown window '{name}'")))
}

#[allow(clippy::too_many_arguments)]
fn two_tone(a: f64, b: f64, f1: f64, f2: f64, n: usize, noise_variance: f64, seed: u64, kind: ScenarioKind) -> Scenario {
    Scenario {
        name: "python".into(),
        kind,
        a,
        b,
        f1,
        f2,
        order: 1,
        n,
        noise_variance,
        seed,
        carrier: None,
    }
}

#[pyclass(name = "Spectrum", frozen)]
struct PySpectrum {
    inner: PowerSpectrum,
}

#[pymethods]
impl PySpectrum {
    #[getter]
    fn frequencies(&self) -> Vec<f64> {
        self.inner.frequencies().to_vec()
    }

    #[getter]
    fn values(&self) -> Vec<f64> {
        self.inner.values.clone()
    }

    #[getter]
    fn estimator(&self) -> &str {
        &self.inner.estimator
    }

    #[getter]
    fn setting(&self) -> &str {
        &self.inner.setting
    }

    #[getter]
    fn flags(&self) -> Vec<&'static str> {
        self.inner.flags.clone()
    }

    /// Grid indices where the AR denominator hit the floor.
    #[getter]
    fn capped(&self) -> Vec<usize> {
        self.inner.capped.clone()
    }

    fn db(&self) -> Vec<f64> {
        self.inner.values.iter().map(|&p| PowerSpectrum::db(p)).collect()
    }

    /// Largest `count` strict local maxima as (frequency, value) pairs.
    #[pyo3(signature = (count = 2))]
    fn peaks(&self, count: usize) -> Vec<(f64, f64)> {
        core_peak_pick(&self.inner, count).iter().map(|p| (p.frequency, p.value)).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.values.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Spectrum(estimator={:?}, setting={:?}, points={})",
            self.inner.estimator,
            self.inner.setting,
            self.inner.values.len()
        )
    }
}

#[pyclass(name = "ArModel", frozen)]
struct PyArModel {
    inner: core::ArModel,
}

#[pymethods]
impl PyArModel {
    #[getter]
    fn coefficients(&self) -> Vec<f64> {
        self.inner.coefficients().to_vec()
    }

    #[getter]
    fn rho(&self) -> f64 {
        self.inner.rho()
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn method(&self) -> &'static str {
        self.inner.method().name()
    }

    #[pyo3(signature = (grid = None, frequencies = None))]
    fn spectrum(&self, grid: Option<usize>, frequencies: Option<Vec<f64>>) -> PyResult<PySpectrum> {
        let g = grid_from(grid, frequencies)?;
        Ok(PySpectrum { inner: core::ar_spectrum(&self.inner, &g) })
    }

    fn __repr__(&self) -> String {
        format!("ArModel(method={:?}, order={}, rho={})", self.method(), self.order(), self.rho())
    }
}

#[pyfunction]
#[pyo3(signature = (a, b, f1, f2, n, noise_variance, seed))]
fn synth_two_tone(a: f64, b: f64, f1: f64, f2: f64, n: usize, noise_variance: f64, seed: u64) -> PyResult<Vec<f64>> {
    let sc = two_tone(a, b, f1, f2, n, noise_variance, seed, ScenarioKind::TwoToneAwgn);
    Ok(core::synth_two_tone(&sc).map_err(py_err)?.into_samples())
}

#[pyfunction]
fn sample_autocorrelation(x: Vec<f64>, max_lag: usize) -> PyResult<Vec<f64>> {
    let r = core::sample_autocorrelation(&signal(x)?, max_lag).map_err(py_err)?;
    Ok(r.values().to_vec())
}

#[pyfunction]
#[pyo3(signature = (a, b, f1, f2, max_lag, noise_variance = 1.0))]
fn exact_two_tone_acf(a: f64, b: f64, f1: f64, f2: f64, max_lag: usize, noise_variance: f64) -> PyResult<Vec<f64>> {
    let sc = two_tone(a, b, f1, f2, 0, noise_variance, 0, ScenarioKind::ExactAcf);
    Ok(core::exact_two_tone_acf(&sc, max_lag).map_err(py_err)?.values().to_vec())
}

#[pyfunction]
fn bartlett_window(k: i64, m: usize) -> f64 {
    core::bartlett_window(k, m)
}

#[pyfunction]
fn parzen_window(k: i64, m: usize) -> f64 {
    core::parzen_window(k, m)
}

#[pyfunction]
#[pyo3(signature = (x, grid = None, frequencies = None))]
fn periodogram(x: Vec<f64>, grid: Option<usize>, frequencies: Option<Vec<f64>>) -> PyResult<PySpectrum> {
    let g = grid_from(grid, frequencies)?;
    Ok(PySpectrum { inner: core::periodogram(&signal(x)?, &g).map_err(py_err)? })
}

/// `r` holds r(0..=K) with K at least the half-width.
#[pyfunction]
#[pyo3(signature = (r, half_width, window = "bartlett", grid = None, frequencies = None))]
fn blackman_tukey(
    r: Vec<f64>,
    half_width: usize,
    window: &str,
    grid: Option<usize>,
    frequencies: Option<Vec<f64>>,
) -> PyResult<PySpectrum> {
    let g = grid_from(grid, frequencies)?;
    let w = LagWindow::new(window_kind(window)?, half_width).map_err(py_err)?;
    Ok(PySpectrum { inner: core::blackman_tukey(&acf(r)?, &w, &g).map_err(py_err)? })
}

#[pyfunction]
#[pyo3(signature = (r, dim, grid = None, frequencies = None))]
fn capon(r: Vec<f64>, dim: usize, grid: Option<usize>, frequencies: Option<Vec<f64>>) -> PyResult<PySpectrum> {
    let g = grid_from(grid, frequencies)?;
    Ok(PySpectrum { inner: core::capon_spectrum(&acf(r)?, dim, &g).map_err(py_err)? })
}

#[pyfunction]
#[pyo3(signature = (r, order, grid = None, frequencies = None))]
fn yule_walker(
    r: Vec<f64>,
    order: usize,
    grid: Option<usize>,
    frequencies: Option<Vec<f64>>,
) -> PyResult<(PyArModel, PySpectrum)> {
    let g = grid_from(grid, frequencies)?;
    let (m, s) = core::yule_walker_spectrum(&acf(r)?, order, &g).map_err(py_err)?;
    Ok((PyArModel { inner: m }, PySpectrum { inner: s }))
}

#[pyfunction]
#[pyo3(signature = (x, order, grid = None, frequencies = None))]
fn modcov(
    x: Vec<f64>,
    order: usize,
    grid: Option<usize>,
    frequencies: Option<Vec<f64>>,
) -> PyResult<(PyArModel, PySpectrum)> {
    let g = grid_from(grid, frequencies)?;
    let (m, s) = core::modcov_spectrum(&signal(x)?, order, &g).map_err(py_err)?;
    Ok((PyArModel { inner: m }, PySpectrum { inner: s }))
}

#[pyfunction]
fn levinson_durbin(r: Vec<f64>, order: usize) -> PyResult<PyArModel> {
    Ok(PyArModel { inner: core::levinson_durbin(&acf(r)?, order).map_err(py_err)? })
}

#[pyfunction]
#[pyo3(signature = (spectrum, count = 2))]
fn peak_pick(spectrum: &PySpectrum, count: usize) -> Vec<(f64, f64)> {
    spectrum.peaks(count)
}

#[pyfunction]
fn synth_carrier(seed: u64, length: usize) -> PyResult<Vec<f64>> {
    Ok(core::synth_carrier(seed, length).map_err(py_err)?.samples().to_vec())
}

#[pyfunction]
fn load_wav(path: std::path::PathBuf) -> PyResult<(Vec<f64>, u32)> {
    let c = core::load_wav(path).map_err(py_err)?;
    Ok((c.samples().to_vec(), c.sample_rate()))
}

/// Writes 16-bit PCM and returns the number of clipped samples.
#[pyfunction]
#[pyo3(signature = (samples, path, sample_rate = 8000))]
fn save_wav(samples: Vec<f64>, path: std::path::PathBuf, sample_rate: u32) -> PyResult<usize> {
    core::stego::save_samples_wav(&samples, sample_rate, path).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (carrier, frequency, amplitude = 1.0, analysis_length = None))]
fn embed(carrier: Vec<f64>, frequency: f64, amplitude: f64, analysis_length: Option<usize>) -> PyResult<Vec<f64>> {
    let len = analysis_length.unwrap_or(carrier.len());
    let c = AudioCarrier::new(carrier, core::stego::DEFAULT_SAMPLE_RATE, core::stego::CarrierOrigin::Synthetic(0))
        .map_err(py_err)?;
    Ok(core::embed(&c, frequency, amplitude, len).map_err(py_err)?.stego_signal.into_samples())
}

/// Returns (estimated_frequency, absolute_error, peak_value, spectrum).
#[pyfunction]
#[pyo3(signature = (x, method, order = 0, true_frequency = None, window = "bartlett", grid = None))]
fn detect(
    x: Vec<f64>,
    method: &str,
    order: usize,
    true_frequency: Option<f64>,
    window: &str,
    grid: Option<usize>,
) -> PyResult<(f64, Option<f64>, f64, PySpectrum)> {
    let est = Estimator::parse(method, order, window_kind(window)?).map_err(py_err)?;
    let g = grid_from(grid, None)?;
    let x = signal(x)?;
    let pkg = core::StegoPackage {
        analysis_length: x.len(),
        stego_signal: x,
        true_frequency: true_frequency.unwrap_or(0.0),
        amplitude: 0.0,
        carrier_origin: core::stego::CarrierOrigin::Synthetic(0),
        sample_rate: core::stego::DEFAULT_SAMPLE_RATE,
    };
    let d = core::detect(&pkg, &est, &g).outcome.map_err(py_err)?;
    Ok((
        d.estimated_frequency,
        true_frequency.map(|_| d.absolute_error),
        d.peak_value,
        PySpectrum { inner: d.spectrum },
    ))
}

#[pyfunction]
fn scenario_names() -> Vec<&'static str> {
    BUILTIN_NAMES.to_vec()
}

/// Runs a built-in scenario. Each estimator maps to a dict with `status`
/// ("done", "not_applicable" or "failed") and, when done, `spectrum`,
/// `peaks` and `errors`.
#[pyfunction]
#[pyo3(signature = (name, seed = None, grid = None))]
fn run_scenario<'py>(py: Python<'py>, name: &str, seed: Option<u64>, grid: Option<usize>) -> PyResult<Bound<'py, PyDict>> {
    let report = core::bench::run_scenario(name, seed, grid).map_err(py_err)?;
    let out = PyDict::new(py);
    out.set_item("scenario", &report.scenario.name)?;
    out.set_item("seed", report.seed())?;
    out.set_item("true_frequencies", report.true_frequencies.clone())?;
    let cells = PyDict::new(py);
    for cell in report.cells {
        let d = PyDict::new(py);
        match cell.outcome {
            CellOutcome::Done { spectrum, peaks, errors, .. } => {
                d.set_item("status", "done")?;
                d.set_item("peaks", peaks.iter().map(|p| (p.frequency, p.value)).collect::<Vec<_>>())?;
                d.set_item("errors", errors)?;
                d.set_item("spectrum", PySpectrum { inner: spectrum })?;
            }
            CellOutcome::NotApplicable(msg) => {
                d.set_item("status", "not_applicable")?;
                d.set_item("message", msg)?;
            }
            CellOutcome::Failed(e) => {
                d.set_item("status", "failed")?;
                d.set_item("message", e.to_string())?;
            }
        }
        cells.set_item(cell.estimator.name(), d)?;
    }
    out.set_item("cells", cells)?;
    Ok(out)
}

#[pymodule]
fn specest(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySpectrum>()?;
    m.add_class::<PyArModel>()?;
    m.add_function(wrap_pyfunction!(synth_two_tone, m)?)?;
    m.add_function(wrap_pyfunction!(sample_autocorrelation, m)?)?;
    m.add_function(wrap_pyfunction!(exact_two_tone_acf, m)?)?;
    m.add_function(wrap_pyfunction!(bartlett_window, m)?)?;
    m.add_function(wrap_pyfunction!(parzen_window, m)?)?;
    m.add_function(wrap_pyfunction!(periodogram, m)?)?;
    m.add_function(wrap_pyfunction!(blackman_tukey, m)?)?;
    m.add_function(wrap_pyfunction!(capon, m)?)?;
    m.add_function(wrap_pyfunction!(yule_walker, m)?)?;
    m.add_function(wrap_pyfunction!(modcov, m)?)?;
    m.add_function(wrap_pyfunction!(levinson_durbin, m)?)?;
    m.add_function(wrap_pyfunction!(peak_pick, m)?)?;
    m.add_function(wrap_pyfunction!(synth_carrier, m)?)?;
    m.add_function(wrap_pyfunction!(load_wav, m)?)?;
    m.add_function(wrap_pyfunction!(save_wav, m)?)?;
    m.add_function(wrap_pyfunction!(embed, m)?)?;
    m.add_function(wrap_pyfunction!(detect, m)?)?;
    m.add_function(wrap_pyfunction!(scenario_names, m)?)?;
    m.add_function(wrap_pyfunction!(run_scenario, m)?)?;
    Ok(())
}
