//! Library side of the `hbip` command-line tool: file formats and the run
//! orchestration, kept here so integration tests can drive them directly.

pub mod app;
pub mod formats;

pub use app::{run, Args, Failure, Mode, RunConfig};
pub use formats::{emit_gr, emit_td, parse_gr, parse_pat, parse_td, ParseError, PatternSpec, TdError};
