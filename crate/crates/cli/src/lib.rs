//! Library side of the `qtele` command-line tool: run configuration,
//! table-producing commands and CSV/JSON serialisation.

pub mod commands;
pub mod config;
pub mod table;

pub use commands::run;
pub use config::{BasisSpec, Command, OutputFormat, PsiSpec, RunConfig};
pub use table::{Cell, Table};
