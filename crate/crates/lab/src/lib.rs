//! Batch experiment runner for the cone index laboratory.
//!
//! A JSON config names a battery of symbols, a set of suites and the
//! truncations to use. [`validate`] builds every symbol before anything runs,
//! [`run`] executes the suites cell by cell and returns an
//! [`ExperimentReport`], which writes one CSV per suite and a JSON verdict
//! summary under `output_dir/run_id/`.

pub mod battery;
pub mod config;
pub mod descriptor;
mod error;
pub mod report;
mod runner;
pub mod suites;

pub use battery::{describe, describe_symbol, list, UnknownName};
pub use config::{
    validate, BatteryEntry, ConfigError, ExperimentConfig, NamedMap, NamedSymbol, Suite,
    ValidatedConfig, DEFAULT_CONFIG,
};
pub use descriptor::{
    parse_symbol, Coef, DescriptorError, DiagonalMap, MapDescriptor, SymbolDescriptor,
    SyntheticDims,
};
pub use error::LabError;
pub use report::{
    ExperimentReport, Row, Summary, Truncation, Verdict, CSV_COLUMNS, EXIT_CONFIG, EXIT_FAIL,
    EXIT_INCONCLUSIVE, EXIT_PASS,
};
pub use runner::{run, run_cells};

/// Version string that enters every run id.
pub const BUILD_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

/// Parses and validates a config text.
pub fn load_str(text: &str) -> Result<ValidatedConfig, ConfigError> {
    validate(ExperimentConfig::from_json(text)?)
}

/// Reads, parses and validates a config file.
pub fn load(path: &std::path::Path) -> Result<ValidatedConfig, ConfigError> {
    validate(ExperimentConfig::load(path)?)
}

/// The shipped config, validated.
pub fn shipped() -> ValidatedConfig {
    load_str(DEFAULT_CONFIG).expect("shipped config validates")
}
