//! CSV-in, CSV/JSON/SVG-out front end for the moving mini-max.
//!
//! Exit codes: 0 on success, 1 for data errors, 2 for usage or
//! configuration errors.

pub mod app;
pub mod error;
pub mod input;
pub mod output;
pub mod svg;

pub use app::{run, run_with_io};
pub use error::CliError;
pub use input::{ingest_csv, ingest_reader, ColumnRef, Ingested, InputSpec, Source};
pub use output::{Format, OutputSpec};
pub use svg::{emit_svg, SvgCanvas};
