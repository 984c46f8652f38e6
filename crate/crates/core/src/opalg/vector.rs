use super::expr::{i_op, OperatorExpr};
use super::monomial::Generator;
use crate::param::ParamPoly;

/// A Cartesian triple of operators. Products keep the written operand
/// order, which matters because components do not commute.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorOp(pub [OperatorExpr; 3]);

impl VectorOp {
    pub fn n() -> Self {
        Self([0, 1, 2].map(|k| OperatorExpr::gen(Generator::n(k))))
    }

    pub fn l() -> Self {
        Self([0, 1, 2].map(|k| OperatorExpr::gen(Generator::l(k))))
    }

    pub fn x(&self) -> &OperatorExpr {
        &self.0[0]
    }
    pub fn y(&self) -> &OperatorExpr {
        &self.0[1]
    }
    pub fn z(&self) -> &OperatorExpr {
        &self.0[2]
    }

    /// `V_x + i V_y`
    pub fn plus(&self) -> OperatorExpr {
        self.x() + &(&i_op() * self.y())
    }

    /// `V_x - i V_y`
    pub fn minus(&self) -> OperatorExpr {
        self.x() - &(&i_op() * self.y())
    }

    /// `(A × B)_i = A_j B_k - A_k B_j`, operand order as written.
    pub fn cross(&self, other: &Self) -> Self {
        let c = |j: usize, k: usize| &(&self.0[j] * &other.0[k]) - &(&self.0[k] * &other.0[j]);
        Self([c(1, 2), c(2, 0), c(0, 1)])
    }

    pub fn dot(&self, other: &Self) -> OperatorExpr {
        (0..3).fold(OperatorExpr::zero(), |acc, k| &acc + &(&self.0[k] * &other.0[k]))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self([0, 1, 2].map(|k| &self.0[k] + &other.0[k]))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self([0, 1, 2].map(|k| &self.0[k] - &other.0[k]))
    }

    pub fn neg(&self) -> Self {
        Self([0, 1, 2].map(|k| -&self.0[k]))
    }

    /// `s · V`, componentwise with `s` on the left.
    pub fn left_mul(&self, s: &OperatorExpr) -> Self {
        Self([0, 1, 2].map(|k| s * &self.0[k]))
    }

    /// `V · s`, componentwise with `s` on the right.
    pub fn right_mul(&self, s: &OperatorExpr) -> Self {
        Self([0, 1, 2].map(|k| &self.0[k] * s))
    }

    pub fn scale(&self, c: &ParamPoly) -> Self {
        Self([0, 1, 2].map(|k| self.0[k].scale(c)))
    }

    pub fn adjoint(&self) -> Self {
        Self([0, 1, 2].map(|k| self.0[k].adjoint()))
    }

    pub fn map(&self, f: impl Fn(&OperatorExpr) -> OperatorExpr) -> Self {
        Self([0, 1, 2].map(|k| f(&self.0[k])))
    }
}
