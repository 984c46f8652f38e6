//! Exact symbolic algebra of noncommutative polynomials in the sphere
//! generators `NX, NY, NZ` (unit direction) and `LX, LY, LZ` (angular
//! momentum in units of ħ).
//!
//! Normal form: all N-letters to the left of all L-letters, letters sorted,
//! `NZ^2` eliminated through `NX^2 + NY^2 + NZ^2 = 1`. The relation
//! `N·L = 0` holds on the sphere but is *not* used by the rewriter, so
//! expressions equal as sphere operators can still have different normal
//! forms; the matrix layer in [`crate::sphere`] decides those cases.

mod expr;
mod monomial;
mod rewrite;
mod vector;

pub use expr::{i_op, Convention, ExprTextError, OperatorExpr, PreEliminated, RawExps};
pub use monomial::{Generator, Monomial};
pub use vector::VectorOp;

/// `N·L`, central in the algebra and zero on the sphere.
pub fn n_dot_l() -> OperatorExpr {
    VectorOp::n().dot(&VectorOp::l())
}

#[cfg(test)]
mod tests;
