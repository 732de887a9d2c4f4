//! File formats, parallel search, the experiment harness and the `bnctl`
//! command line on top of `bnctl-core`.

pub mod cli;
pub mod error;
pub mod experiment;
pub mod format;
pub mod parallel;
pub mod report;

pub use error::{CliError, CliResult};
pub use format::{network_to_json, parse_network, read_network, FormatError, NetworkFile};
