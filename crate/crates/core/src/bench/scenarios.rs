use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Result, SpecError};
use crate::signal::{Scenario, ScenarioKind};
use crate::stego::DEFAULT_ANALYSIS_LENGTH;

pub const BUILTIN_NAMES: [&str; 7] = ["SC-A1", "SC-A2", "SC-A3", "SC-B1", "SC-B2", "SC-C1", "SC-C2"];

const TWO_TONE_SEED: u64 = 42;
const CARRIER_SEED: u64 = 7;

fn two_tone(name: &str, b: f64, f2: f64, order: usize) -> Scenario {
    Scenario {
        name: name.into(),
        kind: ScenarioKind::TwoToneAwgn,
        a: 1.0,
        b,
        f1: 0.2,
        f2,
        order,
        n: 128,
        noise_variance: 1e-3,
        seed: TWO_TONE_SEED,
        carrier: None,
    }
}

fn exact(name: &str, order: usize) -> Scenario {
    Scenario {
        name: name.into(),
        kind: ScenarioKind::ExactAcf,
        a: 5.0,
        b: 5.0,
        f1: 0.2,
        f2: 0.3,
        order,
        n: 0,
        noise_variance: 1.0,
        seed: 0,
        carrier: None,
    }
}

fn hidden(name: &str, order: usize) -> Scenario {
    Scenario {
        name: name.into(),
        kind: ScenarioKind::HiddenInSound,
        a: 1.0,
        b: 0.0,
        f1: 0.2,
        f2: 0.2,
        order,
        n: DEFAULT_ANALYSIS_LENGTH,
        noise_variance: 0.0,
        seed: CARRIER_SEED,
        carrier: None,
    }
}

/// The seven experiment cases with their fixed parameters.
pub fn builtin_scenarios() -> Vec<Scenario> {
    vec![
        two_tone("SC-A1", 1.0, 0.25, 5),
        two_tone("SC-A2", 1.0, 0.22, 10),
        two_tone("SC-A3", 0.1, 0.25, 10),
        exact("SC-B1", 5),
        exact("SC-B2", 10),
        hidden("SC-C1", 10),
        hidden("SC-C2", 20),
    ]
}

/// Built-in scenarios plus any loaded from a config file.
#[derive(Debug, Clone)]
pub struct ScenarioSuite {
    scenarios: Vec<Scenario>,
}

impl Default for ScenarioSuite {
    fn default() -> Self {
        Self {
            scenarios: builtin_scenarios(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioEntry {
    kind: ScenarioKind,
    #[serde(default = "one")]
    a: f64,
    #[serde(default)]
    b: f64,
    f1: f64,
    f2: Option<f64>,
    order: usize,
    n: Option<usize>,
    #[serde(default)]
    noise_variance: f64,
    #[serde(default)]
    seed: u64,
    carrier: Option<PathBuf>,
}

fn one() -> f64 {
    1.0
}

impl ScenarioSuite {
    pub fn builtin() -> Self {
        Self::default()
    }

    /// Parses scenario sections from TOML text.
    ///
    /// ```toml
    /// [close-pair]
    /// kind = "two_tone_awgn"   # or "exact_acf", "hidden_in_sound"
    /// a = 1.0
    /// b = 1.0
    /// f1 = 0.2
    /// f2 = 0.21
    /// order = 12
    /// n = 256
    /// noise_variance = 0.001
    /// seed = 3
    /// ```
    ///
    /// `carrier = "file.wav"` replaces the synthetic carrier of a
    /// `hidden_in_sound` scenario. Relative carrier paths resolve against
    /// `base_dir`.
    pub fn parse_config(text: &str, base_dir: &Path) -> Result<Vec<Scenario>> {
        let table: BTreeMap<String, ScenarioEntry> =
            toml::from_str(text).map_err(|e| SpecError::Config(e.to_string()))?;
        table
            .into_iter()
            .map(|(name, e)| {
                let n = e.n.unwrap_or(match e.kind {
                    ScenarioKind::TwoToneAwgn => 128,
                    ScenarioKind::ExactAcf => 0,
                    ScenarioKind::HiddenInSound => DEFAULT_ANALYSIS_LENGTH,
                });
                let f2 = match (e.kind, e.f2) {
                    (ScenarioKind::HiddenInSound, f2) => f2.unwrap_or(e.f1),
                    (_, Some(f2)) => f2,
                    (_, None) => {
                        return Err(SpecError::Config(format!("scenario {name}: missing f2")))
                    }
                };
                let sc = Scenario {
                    carrier: e.carrier.map(|p| if p.is_relative() { base_dir.join(p) } else { p }),
                    name,
                    kind: e.kind,
                    a: e.a,
                    b: e.b,
                    f1: e.f1,
                    f2,
                    order: e.order,
                    n,
                    noise_variance: e.noise_variance,
                    seed: e.seed,
                };
                sc.validate()
                    .map_err(|err| SpecError::Config(format!("scenario {}: {err}", sc.name)))?;
                Ok(sc)
            })
            .collect()
    }

    pub fn with_config_file(mut self, path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let base = path.parent().unwrap_or(Path::new("."));
        for sc in Self::parse_config(&text, base)? {
            if self.get(&sc.name).is_some() {
                return Err(SpecError::Config(format!("duplicate scenario name {}", sc.name)));
            }
            self.scenarios.push(sc);
        }
        Ok(self)
    }

    pub fn get(&self, name: &str) -> Option<&Scenario> {
        self.scenarios.iter().find(|s| s.name == name)
    }

    pub fn scenarios(&self) -> &[Scenario] {
        &self.scenarios
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.scenarios.iter().map(|s| s.name.as_str())
    }
}
