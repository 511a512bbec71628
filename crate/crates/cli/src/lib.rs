//! Command-line front end for `extcalc`: expression evaluation, equation
//! derivation and the verification battery.

pub mod commands;
pub mod doc;
pub mod expr;

pub use commands::{run, Cli, Command, Outcome};
pub use doc::EquationDoc;
pub use expr::{eval_text, parse_expr, Expr};
