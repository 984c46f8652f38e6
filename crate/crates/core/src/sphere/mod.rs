//! Numeric realization of operator expressions as sparse matrices on the
//! truncated basis `{|l, m> : l <= lmax}`.
//!
//! Truncation makes a product of matrices differ from the matrix of the
//! product near the cutoff. An expression of N-degree `k` is represented
//! exactly on columns with `l <= lmax - k`, so every comparison here takes
//! `k` explicitly and looks only at that interior block.
//!
//! Phases follow the Condon–Shortley convention, shared by the recursion
//! coefficients in [`generators`] and the oracle in [`quadrature`].

mod basis;
mod evaluate;
pub mod generators;
mod ladder;
pub mod quadrature;
mod sparse;

pub use basis::{Basis, BasisState};
pub use evaluate::{evaluate, Evaluator};
pub use generators::gen_matrix;
pub use ladder::{ladder_structure, LadderReport};
pub use quadrature::{quadrature_element, spherical_harmonic, AngularFactor, QuadratureGrid};
pub use sparse::{fmt_sig17, SparseOperator, DROP_TOLERANCE};

use crate::param::Param;
use num_complex::Complex64;

/// Default truncation for identity checks.
pub const DEFAULT_LMAX: u32 = 16;
/// Default residual tolerance for identity checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RepError {
    #[error("parameter `{0}` has no numeric value")]
    UnboundParam(Param),
    #[error("lmax {lmax} is below the expression's N-degree {needed}")]
    LmaxTooSmall { lmax: u32, needed: u32 },
    #[error("interior depth {k} is outside 0..={lmax}")]
    Range { k: usize, lmax: u32 },
    #[error("basis mismatch: lmax {left} vs {right}")]
    BasisMismatch { left: u32, right: u32 },
    #[error(
        "quadrature grid (order {legendre_order}, {phi_count} φ nodes) too coarse for l = {l_row}, {l_col}"
    )]
    InsufficientGrid {
        l_row: u32,
        l_col: u32,
        legendre_order: usize,
        phi_count: usize,
    },
}

/// Orthogonal projector onto `span{|l, m> : l <= lmax - k}`.
pub fn interior_projector(basis: Basis, k: usize) -> Result<SparseOperator, RepError> {
    if k > basis.lmax() as usize {
        return Err(RepError::Range { k, lmax: basis.lmax() });
    }
    let cut = basis.interior_dim(k);
    Ok(SparseOperator::from_triplets(
        basis,
        (0..cut).map(|i| (i, i, Complex64::new(1.0, 0.0))),
    ))
}

/// Frobenius norm of `P (A - B) P` with `P = interior_projector(basis, k)`.
pub fn residual_norm(a: &SparseOperator, b: &SparseOperator, k: usize) -> Result<f64, RepError> {
    if a.basis() != b.basis() {
        return Err(RepError::BasisMismatch {
            left: a.basis().lmax(),
            right: b.basis().lmax(),
        });
    }
    if k > a.basis().lmax() as usize {
        return Err(RepError::Range { k, lmax: a.basis().lmax() });
    }
    Ok(a.sub(b).interior_frobenius(k))
}

#[cfg(test)]
mod tests;
