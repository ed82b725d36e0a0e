pub mod config;
pub mod format;

pub use config::{ConfigError, Mode, RunConfig, Strategy};
