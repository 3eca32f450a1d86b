//! Library side of the `orthoscheme` command: exact tables, Monte Carlo
//! experiment rows and the verification suite.

pub mod checks;
pub mod error;
pub mod experiments;
pub mod output;
pub mod tables;
pub mod verify;

pub use error::{CliError, Result};
