//! File formats, expression syntax and command dispatch for the `bds` tool.

pub mod doc;
pub mod expr;
pub mod run;

pub use doc::{digest, parse_system, parse_system_unchecked, serialize_system, DocError, SystemDocument};
pub use expr::{parse_elem, parse_expr, ParseError};
pub use run::{run, Command, Options, Outcome, Report, RunError, Status};
