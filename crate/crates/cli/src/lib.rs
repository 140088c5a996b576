//! Command-line harness around `qimem`: JSON-configured sweeps, optimizer
//! cross-checks, Monte-Carlo runs and fiber-range tables, written as CSV or
//! JSON.

pub mod config;
pub mod error;
pub mod modes;
pub mod table;

pub use config::{Format, Mode, SweepConfig};
pub use error::CliError;
pub use table::Dataset;
