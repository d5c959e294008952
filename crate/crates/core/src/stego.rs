//! Hiding a tone in an audio carrier and recovering its frequency.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Uniform};

use crate::error::{invalid, Result, SpecError};
use crate::estimator::Estimator;
use crate::signal::RealSignal;
use crate::spectrum::{FrequencyGrid, PowerSpectrum};

/// Analysis length used when none is given.
pub const DEFAULT_ANALYSIS_LENGTH: usize = 1000;
/// Sample rate written into synthetic carriers. Analysis ignores it.
pub const DEFAULT_SAMPLE_RATE: u32 = 8000;
/// Detection ignores f < DC_EXCLUSION_CYCLES / analysis_length.
pub const DC_EXCLUSION_CYCLES: f64 = 2.0;

const CARRIER_WARMUP: usize = 200;
const CARRIER_PEAK: f64 = 0.8;
// y(n) = 1.2 y(n-1) - 0.52 y(n-2) + u(n); poles at 0.6 ± 0.4j
const SHAPING: [f64; 2] = [1.2, -0.52];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CarrierOrigin {
    WavFile(PathBuf),
    Synthetic(u64),
}

/// Mono audio normalized to [-1, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct AudioCarrier {
    samples: Vec<f64>,
    sample_rate: u32,
    origin: CarrierOrigin,
}

impl AudioCarrier {
    pub fn new(samples: Vec<f64>, sample_rate: u32, origin: CarrierOrigin) -> Result<Self> {
        if samples.is_empty() {
            return Err(invalid("carrier must contain at least one sample"));
        }
        if samples.iter().any(|v| !v.is_finite() || v.abs() > 1.0) {
            return Err(invalid("carrier samples must be finite and within [-1, 1]"));
        }
        if sample_rate == 0 {
            return Err(invalid("sample rate must be positive"));
        }
        Ok(Self {
            samples,
            sample_rate,
            origin,
        })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    pub fn origin(&self) -> &CarrierOrigin {
        &self.origin
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

fn map_hound(e: hound::Error) -> SpecError {
    match e {
        hound::Error::Unsupported => SpecError::UnsupportedFormat("unsupported WAV encoding".into()),
        hound::Error::InvalidSampleFormat => {
            SpecError::UnsupportedFormat("sample format does not match bit depth".into())
        }
        hound::Error::FormatError(m) => SpecError::MalformedFile(m.to_string()),
        hound::Error::IoError(e) if e.kind() == std::io::ErrorKind::UnexpectedEof => {
            SpecError::MalformedFile("truncated data".into())
        }
        hound::Error::IoError(e) => SpecError::Io(e.to_string()),
        other => SpecError::MalformedFile(other.to_string()),
    }
}

/// Reads PCM u8/i16 or float32 WAV, mixing channels down to mono by their mean.
pub fn load_wav(path: impl AsRef<Path>) -> Result<AudioCarrier> {
    let path = path.as_ref();
    let mut reader = hound::WavReader::open(path).map_err(map_hound)?;
    let spec = reader.spec();
    let interleaved: Vec<f64> = match (spec.sample_format, spec.bits_per_sample) {
        (hound::SampleFormat::Int, 8) => reader
            .samples::<i8>()
            .map(|s| s.map(|v| v as f64 / 128.0))
            .collect::<std::result::Result<_, _>>(),
        (hound::SampleFormat::Int, 16) => reader
            .samples::<i16>()
            .map(|s| s.map(|v| v as f64 / 32768.0))
            .collect::<std::result::Result<_, _>>(),
        (hound::SampleFormat::Float, 32) => reader
            .samples::<f32>()
            .map(|s| s.map(|v| v as f64))
            .collect::<std::result::Result<_, _>>(),
        (fmt, bits) => {
            return Err(SpecError::UnsupportedFormat(format!(
                "{bits}-bit {fmt:?} samples"
            )))
        }
    }
    // the header parsed, so a failing read means the payload is short or corrupt
    .map_err(|e| match e {
        hound::Error::IoError(e) => SpecError::MalformedFile(format!("data chunk: {e}")),
        other => map_hound(other),
    })?;
    let channels = spec.channels as usize;
    if channels == 0 {
        return Err(SpecError::MalformedFile("zero channels".into()));
    }
    if !interleaved.len().is_multiple_of(channels) {
        return Err(SpecError::MalformedFile("partial final frame".into()));
    }
    let mono: Vec<f64> = interleaved
        .chunks_exact(channels)
        .map(|frame| (frame.iter().sum::<f64>() / channels as f64).clamp(-1.0, 1.0))
        .collect();
    if mono.is_empty() {
        return Err(SpecError::MalformedFile("no audio frames".into()));
    }
    if mono.iter().any(|v| !v.is_finite()) {
        return Err(SpecError::MalformedFile("non-finite float sample".into()));
    }
    AudioCarrier::new(mono, spec.sample_rate, CarrierOrigin::WavFile(path.to_path_buf()))
}

/// Writes 16-bit PCM mono. Returns how many samples had to be clipped.
///
/// Samples are scaled by 32768, rounded and saturated to the i16 range,
/// which keeps `load_wav` round-trips within 1/32768.
pub fn save_samples_wav(samples: &[f64], sample_rate: u32, path: impl AsRef<Path>) -> Result<usize> {
    let spec = hound::WavSpec {
        channels: 1,
        sample_rate,
        bits_per_sample: 16,
        sample_format: hound::SampleFormat::Int,
    };
    let mut writer = hound::WavWriter::create(path.as_ref(), spec).map_err(map_hound)?;
    let mut clipped = 0;
    for &s in samples {
        if !s.is_finite() {
            return Err(invalid("cannot write non-finite samples"));
        }
        if s.abs() > 1.0 {
            clipped += 1;
        }
        let q = (s * 32768.0).round().clamp(i16::MIN as f64, i16::MAX as f64) as i16;
        writer.write_sample(q).map_err(map_hound)?;
    }
    writer.finalize().map_err(map_hound)?;
    if clipped > 0 {
        log::warn!("clipped {clipped} samples outside [-1, 1] while writing WAV");
    }
    Ok(clipped)
}

pub fn save_wav(carrier: &AudioCarrier, path: impl AsRef<Path>) -> Result<()> {
    save_samples_wav(carrier.samples(), carrier.sample_rate(), path).map(|_| ())
}

/// Seeded stand-in for recorded sound: uniform noise shaped by a two-pole
/// low-pass recursion, warm-up discarded, peak scaled to 0.8.
pub fn synth_carrier(seed: u64, length: usize) -> Result<AudioCarrier> {
    if length < 32 {
        return Err(invalid("synthetic carrier length must be at least 32"));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let uniform = Uniform::new(-1.0, 1.0).expect("valid uniform range");
    let (mut y1, mut y2) = (0.0, 0.0);
    let mut out = Vec::with_capacity(length);
    for i in 0..CARRIER_WARMUP + length {
        let u: f64 = uniform.sample(&mut rng);
        let y = SHAPING[0] * y1 + SHAPING[1] * y2 + u;
        y2 = y1;
        y1 = y;
        if i >= CARRIER_WARMUP {
            out.push(y);
        }
    }
    let peak = out.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let scale = if peak > 0.0 { CARRIER_PEAK / peak } else { 0.0 };
    out.iter_mut().for_each(|v| *v *= scale);
    AudioCarrier::new(out, DEFAULT_SAMPLE_RATE, CarrierOrigin::Synthetic(seed))
}

/// Carrier with a cosine added over its first `analysis_length` samples.
#[derive(Debug, Clone, PartialEq)]
pub struct StegoPackage {
    pub stego_signal: RealSignal,
    pub true_frequency: f64,
    pub amplitude: f64,
    pub carrier_origin: CarrierOrigin,
    pub sample_rate: u32,
    pub analysis_length: usize,
}

/// stego(n) = amplitude·cos(2πfn) + carrier(n), n < analysis_length.
pub fn embed(
    carrier: &AudioCarrier,
    f: f64,
    amplitude: f64,
    analysis_length: usize,
) -> Result<StegoPackage> {
    if !(f > 0.0 && f < 0.5) {
        return Err(invalid(format!("tone frequency {f} must lie in (0, 0.5)")));
    }
    if !amplitude.is_finite() {
        return Err(invalid("amplitude must be finite"));
    }
    if analysis_length == 0 || analysis_length > carrier.len() {
        return Err(invalid(format!(
            "analysis length {analysis_length} outside 1..={}",
            carrier.len()
        )));
    }
    let samples = carrier.samples()[..analysis_length]
        .iter()
        .enumerate()
        .map(|(n, c)| amplitude * (2.0 * PI * f * n as f64).cos() + c)
        .collect();
    Ok(StegoPackage {
        stego_signal: RealSignal::new(samples)?,
        true_frequency: f,
        amplitude,
        carrier_origin: carrier.origin().clone(),
        sample_rate: carrier.sample_rate(),
        analysis_length,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Detection {
    pub estimated_frequency: f64,
    pub absolute_error: f64,
    pub peak_value: f64,
    pub spectrum: PowerSpectrum,
}

/// Outcome of one detection; estimator failures are kept, not raised.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectionReport {
    pub estimator: Estimator,
    pub true_frequency: f64,
    pub outcome: Result<Detection>,
}

impl DetectionReport {
    pub fn estimator_name(&self) -> &'static str {
        self.estimator.name()
    }

    pub fn order(&self) -> usize {
        self.estimator.order()
    }
}

/// Grid argmax over [lower, 0.5); exact ties go to the lowest frequency.
pub fn band_argmax(spectrum: &PowerSpectrum, lower: f64) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, (&f, &v)) in spectrum.frequencies().iter().zip(&spectrum.values).enumerate() {
        if f < lower || f >= 0.5 {
            continue;
        }
        if best.is_none_or(|b| v > spectrum.values[b]) {
            best = Some(i);
        }
    }
    best
}

/// Runs `estimator` on the package's analysis window and locates its peak
/// outside the DC band [0, 2/analysis_length).
pub fn detect(pkg: &StegoPackage, estimator: &Estimator, grid: &FrequencyGrid) -> DetectionReport {
    let outcome = (|| {
        let x = pkg.stego_signal.truncated(pkg.analysis_length)?;
        let (spectrum, _) = estimator.on_signal(&x, grid)?;
        let lower = DC_EXCLUSION_CYCLES / pkg.analysis_length as f64;
        let idx = band_argmax(&spectrum, lower)
            .ok_or_else(|| invalid("no grid points outside the DC exclusion band"))?;
        let estimated_frequency = spectrum.frequencies()[idx];
        Ok(Detection {
            estimated_frequency,
            absolute_error: (estimated_frequency - pkg.true_frequency).abs(),
            peak_value: spectrum.values[idx],
            spectrum,
        })
    })();
    DetectionReport {
        estimator: *estimator,
        true_frequency: pkg.true_frequency,
        outcome,
    }
}
