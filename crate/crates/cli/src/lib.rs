//! Command-line front end for `spinplan`.

pub mod commands;
pub mod expr;

pub use commands::run;
pub use expr::{eval_expr, parse_expr, ExprAst, ParseError};
