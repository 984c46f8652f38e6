//! Matrix elements of the sphere generators between spherical harmonics
//! with Condon–Shortley phases.
//!
//! ```text
//! cosθ Y_lm        =  A(l,m) Y_{l+1,m} + A(l-1,m) Y_{l-1,m}
//! sinθ e^{+iφ} Y_lm = -B(l,m) Y_{l+1,m+1} + B(l-1,-m-1) Y_{l-1,m+1}
//! sinθ e^{-iφ} Y_lm =  B(l,-m) Y_{l+1,m-1} - B(l-1,m-1) Y_{l-1,m-1}
//!
//! A(l,m) = sqrt(((l+1)² - m²) / ((2l+1)(2l+3)))
//! B(l,m) = sqrt((l+m+1)(l+m+2) / ((2l+1)(2l+3)))
//! ```
//!
//! These recursions are checked entry by entry against
//! [`super::quadrature`] in the tests.

use super::basis::{Basis, BasisState};
use super::sparse::SparseOperator;
use crate::opalg::Generator;
use num_complex::Complex64;

fn a_coef(l: i64, m: i64) -> f64 {
    (((l + 1) * (l + 1) - m * m) as f64 / ((2 * l + 1) * (2 * l + 3)) as f64).sqrt()
}

fn b_coef(l: i64, m: i64) -> f64 {
    (((l + m + 1) * (l + m + 2)) as f64 / ((2 * l + 1) * (2 * l + 3)) as f64).sqrt()
}

fn build(basis: Basis, f: impl Fn(i64, i64) -> Vec<(i64, i64, Complex64)>) -> SparseOperator {
    let mut triplets = Vec::new();
    for col in basis.states() {
        let (l, m) = (col.l as i64, col.m as i64);
        for (l2, m2, v) in f(l, m) {
            if basis.contains(l2, m2) {
                let row = basis.index(BasisState::new(l2 as u32, m2 as i32));
                triplets.push((row, basis.index(col), v));
            }
        }
    }
    SparseOperator::from_triplets(basis, triplets)
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `cosθ`
pub fn nz_matrix(basis: Basis) -> SparseOperator {
    build(basis, |l, m| {
        let mut out = vec![(l + 1, m, re(a_coef(l, m)))];
        if l >= 1 {
            out.push((l - 1, m, re(a_coef(l - 1, m))));
        }
        out
    })
}

/// `N₊ = sinθ e^{iφ}`
pub fn n_plus_matrix(basis: Basis) -> SparseOperator {
    build(basis, |l, m| {
        let mut out = vec![(l + 1, m + 1, re(-b_coef(l, m)))];
        if l >= 1 {
            out.push((l - 1, m + 1, re(b_coef(l - 1, -m - 1))));
        }
        out
    })
}

/// `N₋ = sinθ e^{-iφ}`
pub fn n_minus_matrix(basis: Basis) -> SparseOperator {
    build(basis, |l, m| {
        let mut out = vec![(l + 1, m - 1, re(b_coef(l, -m)))];
        if l >= 1 {
            out.push((l - 1, m - 1, re(-b_coef(l - 1, m - 1))));
        }
        out
    })
}

pub fn l_plus_matrix(basis: Basis) -> SparseOperator {
    build(basis, |l, m| {
        vec![(l, m + 1, re(((l * (l + 1) - m * (m + 1)) as f64).sqrt()))]
    })
}

pub fn l_minus_matrix(basis: Basis) -> SparseOperator {
    build(basis, |l, m| {
        vec![(l, m - 1, re(((l * (l + 1) - m * (m - 1)) as f64).sqrt()))]
    })
}

pub fn lz_matrix(basis: Basis) -> SparseOperator {
    build(basis, |l, m| vec![(l, m, re(m as f64))])
}

/// Matrix of a single generator on the truncated basis.
pub fn gen_matrix(g: Generator, basis: Basis) -> SparseOperator {
    let half = Complex64::new(0.5, 0.0);
    let minus_half_i = Complex64::new(0.0, -0.5);
    match g {
        Generator::NZ => nz_matrix(basis),
        Generator::LZ => lz_matrix(basis),
        Generator::NX => n_plus_matrix(basis).add(&n_minus_matrix(basis)).scale(half),
        Generator::NY => n_plus_matrix(basis).sub(&n_minus_matrix(basis)).scale(minus_half_i),
        Generator::LX => l_plus_matrix(basis).add(&l_minus_matrix(basis)).scale(half),
        Generator::LY => l_plus_matrix(basis).sub(&l_minus_matrix(basis)).scale(minus_half_i),
    }
}
