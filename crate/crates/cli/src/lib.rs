//! Scenario runner and verification suite for the ZBW laboratory.

pub mod config;
pub mod error;
pub mod output;
pub mod scenario;
pub mod verify;

pub use config::{parse_config, Scenario, ScenarioConfig};
pub use error::{CliError, Result};
pub use scenario::{run_scenario, write_scenario, Frame};
pub use verify::{run_verify, VerifyReport};
