//! Configuration-driven runner for `krylovlab`: JSON configs, bundled presets,
//! and artifact output.

pub mod config;
pub mod error;
pub mod presets;
pub mod runner;

pub use config::{parse_config, Probe, RunConfig, Threads};
pub use error::RunError;
pub use presets::{list_presets, preset_text};
pub use runner::{run, Summary};
