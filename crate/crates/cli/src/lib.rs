//! Expression language, verification suites and helpers behind the
//! `tortkara` binary.

pub mod expr;
pub mod suites;

pub use expr::{Atom, Expr, Func};
pub use suites::{run_suite, Check, Suite};
