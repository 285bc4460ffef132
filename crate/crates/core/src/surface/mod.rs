//! Concrete syntax: lexing, parsing, elaboration to core terms and printing.

pub mod elab;
pub mod lexer;
pub mod parser;
pub mod print;

pub use elab::{
    elaborate, elaborate_closed, elaborate_decl, ElabError, ElabErrorKind, Elaborator, Scope,
};
pub use lexer::Span;
pub use parser::{parse_expr, parse_file, parse_ty, ParseError};
