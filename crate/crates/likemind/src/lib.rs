//! File formats, similarity caching, output rendering, synthetic fixtures and
//! the parallel sweep harness behind the `likemind` command-line tool.

pub mod error;
pub mod fixture;
pub mod harness;
pub mod io;
pub mod output;
pub mod similarity;

pub use error::{CliError, Result};
