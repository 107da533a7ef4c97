//! Reading and writing problems, proof traces and the command line.

pub mod cli;
mod parse;
mod print;
mod render;
mod syntax;

pub use parse::{parse, parse_term_in, parse_with_warnings, InputSpec, Parsed, Strategy};
pub use print::{forbidden_line, forbidden_section, pairs_section, print_spec};
pub use render::{render_result, render_trace};
pub use syntax::{parse_term, ParseError};
