//! File formats and the `fomember` command line over `fomember-core`.

pub mod cli;
pub mod formats;
pub mod json;

pub use cli::run;
pub use formats::{parse_table, serialize_table, FormatError, TableFormat};
