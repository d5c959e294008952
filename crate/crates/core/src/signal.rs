//! Sample sequences, autocorrelation sequences and the two-tone test signals.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result, SpecError};

/// A finite, non-empty sequence of real samples indexed from 0.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSignal {
    samples: Vec<f64>,
}

impl RealSignal {
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(invalid("signal must contain at least one sample"));
        }
        if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
            return Err(invalid(format!("sample {i} is not finite")));
        }
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Prefix of the first `len` samples.
    pub fn truncated(&self, len: usize) -> Result<Self> {
        if len == 0 || len > self.len() {
            return Err(invalid(format!(
                "truncation length {len} outside 1..={}",
                self.len()
            )));
        }
        Ok(Self {
            samples: self.samples[..len].to_vec(),
        })
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(self.samples.iter().map(|v| v * c).collect())
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }
}

/// Where an autocorrelation sequence came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AcfSource {
    Estimated,
    Exact,
}

/// Autocorrelation values r(0..=K) of a real process.
///
/// Negative lags follow from r(-k) = r(k) and are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct AutocorrSeq {
    values: Vec<f64>,
    source: AcfSource,
}

impl AutocorrSeq {
    pub fn new(values: Vec<f64>, source: AcfSource) -> Result<Self> {
        let Some(&r0) = values.first() else {
            return Err(invalid("autocorrelation needs at least lag 0"));
        };
        if values.iter().any(|v| !v.is_finite()) {
            return Err(invalid("autocorrelation values must be finite"));
        }
        if r0 < 0.0 {
            return Err(invalid(format!("r(0) = {r0} is negative")));
        }
        let bound = r0 * (1.0 + 1e-12) + f64::MIN_POSITIVE;
        if let Some(k) = values.iter().position(|v| v.abs() > bound) {
            return Err(invalid(format!(
                "|r({k})| = {} exceeds r(0) = {r0}",
                values[k].abs()
            )));
        }
        Ok(Self { values, source })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn max_lag(&self) -> usize {
        self.values.len() - 1
    }

    pub fn source(&self) -> AcfSource {
        self.source
    }

    /// r(k) for any signed lag within range.
    pub fn at(&self, lag: isize) -> Option<f64> {
        self.values.get(lag.unsigned_abs()).copied()
    }

    pub fn r0(&self) -> f64 {
        self.values[0]
    }

    pub(crate) fn require_lags(&self, needed: usize) -> Result<()> {
        if self.max_lag() < needed {
            Err(SpecError::InsufficientLags {
                needed,
                available: self.max_lag(),
            })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    /// Two cosines in additive white Gaussian noise, analysed from samples.
    TwoToneAwgn,
    /// Two cosines in unit white noise, given only by their exact autocorrelation.
    ExactAcf,
    /// One cosine added to an audio carrier.
    HiddenInSound,
}

/// Parameter bundle for one experiment case.
///
/// For [`ScenarioKind::HiddenInSound`], `a`/`f1` are the embedded tone's
/// amplitude and frequency, `n` is the analysis length and `seed` picks the
/// synthetic carrier; `b` and `f2` are unused.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub kind: ScenarioKind,
    pub a: f64,
    pub b: f64,
    pub f1: f64,
    pub f2: f64,
    pub order: usize,
    pub n: usize,
    pub noise_variance: f64,
    pub seed: u64,
    /// Optional WAV file replacing the synthetic carrier.
    pub carrier: Option<std::path::PathBuf>,
}

fn check_frequency(f: f64, what: &str) -> Result<()> {
    if !f.is_finite() || f <= 0.0 || f >= 0.5 {
        return Err(invalid(format!("{what} = {f} must lie in (0, 0.5)")));
    }
    Ok(())
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        for (v, what) in [(self.a, "A"), (self.b, "B"), (self.noise_variance, "noise variance")] {
            if !v.is_finite() {
                return Err(invalid(format!("{what} must be finite")));
            }
        }
        if self.noise_variance < 0.0 {
            return Err(invalid("noise variance must be non-negative"));
        }
        if self.order == 0 {
            return Err(invalid("order must be positive"));
        }
        check_frequency(self.f1, "f1")?;
        if self.kind != ScenarioKind::HiddenInSound {
            check_frequency(self.f2, "f2")?;
            if self.f1 == self.f2 {
                return Err(invalid("f1 and f2 must differ"));
            }
        }
        match self.kind {
            ScenarioKind::TwoToneAwgn if self.n < 2 => {
                Err(invalid("two-tone scenarios need N >= 2"))
            }
            ScenarioKind::HiddenInSound if self.n < 32 => {
                Err(invalid("hidden-tone scenarios need an analysis length >= 32"))
            }
            _ => Ok(()),
        }
    }

    /// True tone frequencies the estimators should recover.
    pub fn true_frequencies(&self) -> Vec<f64> {
        match self.kind {
            ScenarioKind::HiddenInSound => vec![self.f1],
            _ => vec![self.f1, self.f2],
        }
    }
}

/// x(n) = A cos(2π f1 n) + B cos(2π f2 n) + w(n), n = 0..N-1.
///
/// The noise w is drawn with `StandardNormal` (ziggurat) from a ChaCha20
/// stream seeded with `seed_from_u64(sc.seed)` and scaled by the standard
/// deviation, so a scenario always yields the same samples.
pub fn synth_two_tone(sc: &Scenario) -> Result<RealSignal> {
    if sc.kind != ScenarioKind::TwoToneAwgn {
        return Err(invalid(format!("scenario {} is not a two-tone scenario", sc.name)));
    }
    sc.validate()?;
    let sigma = sc.noise_variance.sqrt();
    let mut rng = ChaCha20Rng::seed_from_u64(sc.seed);
    let samples = (0..sc.n)
        .map(|n| {
            let t = n as f64;
            let w: f64 = StandardNormal.sample(&mut rng);
            sc.a * (2.0 * PI * sc.f1 * t).cos() + sc.b * (2.0 * PI * sc.f2 * t).cos() + sigma * w
        })
        .collect();
    RealSignal::new(samples)
}

/// Biased sample autocorrelation, r(k) = (1/N) Σ x(n) x(n+k), k = 0..=max_lag.
pub fn sample_autocorrelation(x: &RealSignal, max_lag: usize) -> Result<AutocorrSeq> {
    let n = x.len();
    if max_lag >= n {
        return Err(SpecError::Domain(format!(
            "max_lag {max_lag} must be below the signal length {n}"
        )));
    }
    let s = x.samples();
    let values = (0..=max_lag)
        .map(|k| s[..n - k].iter().zip(&s[k..]).map(|(a, b)| a * b).sum::<f64>() / n as f64)
        .collect();
    AutocorrSeq::new(values, AcfSource::Estimated)
}

/// R(k) = A cos(2π f1 k) + B cos(2π f2 k) + δ(k) for k = 0..=max_lag.
pub fn exact_two_tone_acf(sc: &Scenario, max_lag: usize) -> Result<AutocorrSeq> {
    if sc.kind != ScenarioKind::ExactAcf {
        return Err(invalid(format!("scenario {} is not an exact-ACF scenario", sc.name)));
    }
    for (v, what) in [(sc.a, "A"), (sc.b, "B"), (sc.f1, "f1"), (sc.f2, "f2")] {
        if !v.is_finite() {
            return Err(invalid(format!("{what} must be finite")));
        }
    }
    let values = (0..=max_lag)
        .map(|k| {
            let t = k as f64;
            let delta = if k == 0 { 1.0 } else { 0.0 };
            sc.a * (2.0 * PI * sc.f1 * t).cos() + sc.b * (2.0 * PI * sc.f2 * t).cos() + delta
        })
        .collect();
    AutocorrSeq::new(values, AcfSource::Exact)
}
