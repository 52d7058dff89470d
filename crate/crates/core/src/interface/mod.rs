//! Text front end: group descriptions, reports and the command line.

pub mod cli;
pub mod paper_check;
mod parse;
mod report;

pub use parse::{parse_spec, Family, GroupSpec, ParseError, ParseErrorKind};
pub use report::{analyze, AnalysisReport, AnalyzeOptions, ParsedReport, SCHEMA_VERSION};
