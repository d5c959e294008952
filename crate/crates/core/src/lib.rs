//! Classical power-spectrum estimation: periodogram, Blackman-Tukey, Capon,
//! Yule-Walker and modified covariance, plus a two-tone resolution bench
//! and a tone-in-audio detection harness.
//!
//! All frequencies are normalized (cycles/sample) and spectra are evaluated
//! on [0, 0.5]. Spectrum values are linear power; dB only appears in CSV
//! output.

pub mod bench;
pub mod error;
pub mod estimator;
pub mod nonparametric;
pub mod numerics;
pub mod parametric;
pub mod signal;
pub mod spectrum;
pub mod stego;

pub use error::{Result, SpecError};
pub use estimator::Estimator;
pub use nonparametric::{bartlett_window, blackman_tukey, parzen_window, periodogram, LagWindow, WindowKind};
pub use numerics::{ar_spectrum, levinson_durbin, solve_spd, steering_vector, Matrix};
pub use parametric::{
    capon_spectrum, modcov_fit, modcov_spectrum, yule_walker_spectrum, ArMethod, ArModel,
    CovarianceTable,
};
pub use signal::{
    exact_two_tone_acf, sample_autocorrelation, synth_two_tone, AcfSource, AutocorrSeq,
    RealSignal, Scenario, ScenarioKind,
};
pub use spectrum::{FrequencyGrid, PowerSpectrum};
pub use stego::{
    detect, embed, load_wav, save_wav, synth_carrier, AudioCarrier, DetectionReport, StegoPackage,
};
