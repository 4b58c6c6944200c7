//! Bundle files, JSON exports and the command line for `tannaka-core`.

pub mod cli;
pub mod export;
pub mod format;

pub use format::{parse_bundle, serialize_bundle, FormatError};
