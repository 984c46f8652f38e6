use super::basis::{Basis, BasisState};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Entries below this magnitude are never stored.
pub const DROP_TOLERANCE: f64 = 1e-15;

/// A complex sparse matrix over a truncated spherical-harmonics basis,
/// stored row by row with sorted column indices.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseOperator {
    basis: Basis,
    rows: Vec<Vec<(u32, Complex64)>>,
}

impl SparseOperator {
    pub fn zero(basis: Basis) -> Self {
        Self {
            basis,
            rows: vec![Vec::new(); basis.dim()],
        }
    }

    pub fn identity(basis: Basis) -> Self {
        Self::from_triplets(
            basis,
            (0..basis.dim()).map(|k| (k, k, Complex64::new(1.0, 0.0))),
        )
    }

    /// Builds from `(row, col, value)`; duplicates are summed.
    pub fn from_triplets(basis: Basis, triplets: impl IntoIterator<Item = (usize, usize, Complex64)>) -> Self {
        let mut acc: Vec<BTreeMap<u32, Complex64>> = vec![BTreeMap::new(); basis.dim()];
        for (r, c, v) in triplets {
            *acc[r].entry(c as u32).or_default() += v;
        }
        Self::from_row_maps(basis, acc)
    }

    fn from_row_maps(basis: Basis, acc: Vec<BTreeMap<u32, Complex64>>) -> Self {
        let rows = acc
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .filter(|(_, v)| v.norm() >= DROP_TOLERANCE)
                    .collect()
            })
            .collect();
        Self { basis, rows }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.rows[row]
            .binary_search_by_key(&(col as u32), |e| e.0)
            .map(|k| self.rows[row][k].1)
            .unwrap_or_default()
    }

    pub fn element(&self, row: BasisState, col: BasisState) -> Complex64 {
        self.get(self.basis.index(row), self.basis.index(col))
    }

    /// `(row, col, value)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c as usize, *v)))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_triplets(self.basis, self.entries().map(|(r, c, v)| (r, c, v * s)))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.axpy(Complex64::new(1.0, 0.0), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.axpy(Complex64::new(-1.0, 0.0), other)
    }

    /// `self + s·other`
    pub fn axpy(&self, s: Complex64, other: &Self) -> Self {
        assert_eq!(self.basis, other.basis, "basis mismatch");
        Self::from_triplets(
            self.basis,
            self.entries()
                .chain(other.entries().map(|(r, c, v)| (r, c, v * s))),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.basis, other.basis, "basis mismatch");
        let mut acc: Vec<BTreeMap<u32, Complex64>> = vec![BTreeMap::new(); self.basis.dim()];
        for (r, row) in self.rows.iter().enumerate() {
            for (k, a) in row {
                for (c, b) in &other.rows[*k as usize] {
                    *acc[r].entry(*c).or_default() += a * b;
                }
            }
        }
        Self::from_row_maps(self.basis, acc)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_triplets(self.basis, self.entries().map(|(r, c, v)| (c, r, v.conj())))
    }

    pub fn frobenius(&self) -> f64 {
        self.entries().map(|(_, _, v)| v.norm_sqr()).fold(0.0, |s, x| s + x).sqrt()
    }

    /// Frobenius norm of the block with row and column states in
    /// `l <= lmax - k`.
    pub fn interior_frobenius(&self, k: usize) -> f64 {
        let cut = self.basis.interior_dim(k);
        self.entries()
            .filter(|(r, c, _)| *r < cut && *c < cut)
            .map(|(_, _, v)| v.norm_sqr())
            .fold(0.0, |s, x| s + x)
            .sqrt()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.entries().map(|(_, _, v)| v.norm()).fold(0.0, f64::max)
    }

    /// One line per stored entry, `l' m' l m re im`, in index order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (r, c, v) in self.entries() {
            let (row, col) = (self.basis.state(r), self.basis.state(c));
            let _ = writeln!(
                out,
                "{} {} {} {} {} {}",
                row.l,
                row.m,
                col.l,
                col.m,
                fmt_sig17(v.re),
                fmt_sig17(v.im)
            );
        }
        out
    }

    /// The dump restricted to `l, l' <= l_cut`, with every diagonal entry
    /// listed even when it is zero.
    pub fn dump_block(&self, l_cut: u32) -> String {
        let cut = ((l_cut.min(self.basis.lmax()) + 1) * (l_cut.min(self.basis.lmax()) + 1)) as usize;
        let mut out = String::new();
        for (r, row) in self.rows.iter().enumerate().take(cut) {
            let mut cells: Vec<(u32, Complex64)> = row.iter().copied().filter(|(c, _)| (*c as usize) < cut).collect();
            if !cells.iter().any(|(c, _)| *c as usize == r) {
                cells.push((r as u32, Complex64::new(0.0, 0.0)));
                cells.sort_by_key(|(c, _)| *c);
            }
            let row_state = self.basis.state(r);
            for (c, v) in cells {
                let col = self.basis.state(c as usize);
                let _ = writeln!(
                    out,
                    "{} {} {} {} {} {}",
                    row_state.l,
                    row_state.m,
                    col.l,
                    col.m,
                    fmt_sig17(v.re),
                    fmt_sig17(v.im)
                );
            }
        }
        out
    }
}

/// Scientific notation with 17 significant digits; `0` for zero.
pub fn fmt_sig17(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    format!("{:.16e}", x)
}
