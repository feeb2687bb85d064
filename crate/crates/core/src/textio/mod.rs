//! Text formats: expression syntax in both directions, and Graphviz output
//! for canonical forms.

mod dot;
mod parser;
mod printer;

pub use dot::to_dot;
pub use parser::{parse, ParseError, SourceSpan};
pub use printer::print;
