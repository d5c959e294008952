//! Scenario bench: built-in experiment cases, peak extraction, batch runs
//! and CSV export.

mod export;
mod peaks;
mod runner;
mod scenarios;

pub use export::{export_csv, format_sig, ExportOptions, SPECTRUM_HEADER, SUMMARY_HEADER};
pub use peaks::{peak_pick, Peak};
pub use runner::{run_scenario, CellOutcome, RunCell, RunReport, NOT_APPLICABLE_RAW};
pub use scenarios::{builtin_scenarios, ScenarioSuite, BUILTIN_NAMES};
