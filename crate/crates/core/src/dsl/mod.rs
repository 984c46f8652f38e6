//! A small text language for building operator expressions.
//!
//! ```
//! use gl2c::dsl;
//! use gl2c::opalg::{Generator, OperatorExpr, i_op};
//!
//! let e = dsl::compile("comm(L_z, N_x)").unwrap();
//! assert_eq!(e, &i_op() * &OperatorExpr::gen(Generator::NY));
//! ```
//!
//! A script is a sequence of `let name = expr;` bindings and one final
//! expression. Expressions are either scalar (operators) or vector valued;
//! `N` and `L` are the two vector symbols, `a`, `b`, `c`, `d` the
//! parameters and `i` the imaginary unit. The prelude names `J1`, `J2`,
//! `Kplus`, `Kminus` and `Kz` are always in scope. The grammar is in the
//! book's DSL chapter.
//!
//! Diagnostics carry a stable code:
//!
//! | code | meaning |
//! |------|---------|
//! | E001 | syntax error |
//! | E002 | unknown identifier or function |
//! | E003 | wrong number of arguments |
//! | E004 | scalar/vector mismatch |
//! | E005 | name bound twice or shadowing a reserved name |
//! | E006 | divisor is not a nonzero numeric constant |

mod ast;
mod error;
mod lexer;
mod lower;
mod parser;
pub mod prelude;
mod print;

pub use ast::{Binding, Component, Func, Kind, Node, Script, Span, Type, VectorSym};
pub use error::{DslError, ErrorCode};
pub use lower::{gauss_literal, Value};
pub use parser::parse;
pub use print::{format_literal, pretty_print};

use crate::opalg::OperatorExpr;

/// Parses `src` and lowers its final expression.
pub fn compile(src: &str) -> Result<OperatorExpr, DslError> {
    parse(src)?.lower()
}

impl Script {
    /// Sort of the final expression.
    pub fn body_type(&self) -> Type {
        parser::check_script(self, true).expect("parsed scripts are well typed")
    }
}
