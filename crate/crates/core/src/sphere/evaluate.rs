use super::basis::Basis;
use super::generators::gen_matrix;
use super::sparse::SparseOperator;
use super::RepError;
use crate::opalg::{Generator, Monomial, OperatorExpr};
use crate::param::NumericParams;
use num_complex::Complex64;
use std::collections::HashMap;

/// Turns operator expressions into matrices on one truncated basis.
///
/// Monomial matrices are cached once [`Evaluator::prepare`] has seen them;
/// afterwards the evaluator is only read, so it can be shared across
/// threads.
#[derive(Clone, Debug)]
pub struct Evaluator {
    basis: Basis,
    generators: [SparseOperator; 6],
    cache: HashMap<Monomial, SparseOperator>,
}

impl Evaluator {
    pub fn new(lmax: u32) -> Self {
        let basis = Basis::new(lmax);
        Self {
            basis,
            generators: Generator::ALL.map(|g| gen_matrix(g, basis)),
            cache: HashMap::new(),
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn generator(&self, g: Generator) -> &SparseOperator {
        &self.generators[g.index()]
    }

    /// Product of generator matrices in the written order.
    pub fn word_matrix(&self, word: &[Generator]) -> SparseOperator {
        word.iter().fold(SparseOperator::identity(self.basis), |acc, g| {
            acc.mul(self.generator(*g))
        })
    }

    pub fn monomial_matrix(&self, m: &Monomial) -> SparseOperator {
        match self.cache.get(m) {
            Some(hit) => hit.clone(),
            None => self.word_matrix(&m.word()),
        }
    }

    /// Caches the matrices of every monomial in `expr`.
    pub fn prepare(&mut self, expr: &OperatorExpr) {
        for m in expr.monomials() {
            if !self.cache.contains_key(m) {
                let mat = self.word_matrix(&m.word());
                self.cache.insert(*m, mat);
            }
        }
    }

    /// `Σ coefficient(params) · matrix(monomial)`. Exact only on the interior
    /// subspace `l <= lmax - degree_n(expr)`.
    pub fn evaluate(&self, expr: &OperatorExpr, params: &NumericParams) -> Result<SparseOperator, RepError> {
        let needed = expr.degree_n();
        if self.basis.lmax() < needed {
            return Err(RepError::LmaxTooSmall {
                lmax: self.basis.lmax(),
                needed,
            });
        }
        let mut triplets: Vec<(usize, usize, Complex64)> = Vec::new();
        for (m, c) in expr.terms() {
            let w = c.eval(params).map_err(|e| RepError::UnboundParam(e.0))?;
            if w == Complex64::new(0.0, 0.0) {
                continue;
            }
            let mat;
            let mat_ref = match self.cache.get(m) {
                Some(hit) => hit,
                None => {
                    mat = self.word_matrix(&m.word());
                    &mat
                }
            };
            triplets.extend(mat_ref.entries().map(|(r, col, v)| (r, col, v * w)));
        }
        Ok(SparseOperator::from_triplets(self.basis, triplets))
    }
}

/// One-shot evaluation.
pub fn evaluate(expr: &OperatorExpr, basis: Basis, params: &NumericParams) -> Result<SparseOperator, RepError> {
    Evaluator::new(basis.lmax()).evaluate(expr, params)
}
