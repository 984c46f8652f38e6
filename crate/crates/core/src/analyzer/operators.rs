use crate::opalg::{i_op, Generator, OperatorExpr, VectorOp};
use crate::param::{ExactParams, NumericParams, Param, ParamPoly};
use crate::scalar::from_rational;
use crate::sphere::{Evaluator, RepError, SparseOperator};
use num_rational::BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    /// `J₁ = i N×L + a N + b N L_z`
    One,
    /// `J₂ = -i N×L + c N + d N L_z`
    Two,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

pub(crate) fn lz() -> OperatorExpr {
    OperatorExpr::gen(Generator::LZ)
}

/// `J₁` or `J₂` with symbolic parameters.
pub fn build_j(which: Which) -> VectorOp {
    let n = VectorOp::n();
    let (unit, p, q) = match which {
        Which::One => (i_op(), ParamPoly::a(), ParamPoly::b()),
        Which::Two => (-i_op(), ParamPoly::c(), ParamPoly::d()),
    };
    n.cross(&VectorOp::l())
        .left_mul(&unit)
        .add(&n.scale(&p))
        .add(&n.right_mul(&lz()).scale(&q))
}

/// `K₊ = J₁ₓ + iJ₁ᵧ` or `K₋ = J₂ₓ - iJ₂ᵧ`, symbolic in all four parameters.
pub fn build_k(sign: Sign) -> OperatorExpr {
    match sign {
        Sign::Plus => build_j(Which::One).plus(),
        Sign::Minus => build_j(Which::Two).minus(),
    }
}

/// The substitution `c ↦ a - b - 2`, `d ↦ b`.
pub fn conjugacy_map() -> [Option<ParamPoly>; 4] {
    [
        None,
        None,
        Some(ParamPoly::a() - ParamPoly::b() - ParamPoly::int(2)),
        Some(ParamPoly::b()),
    ]
}

/// `e` with `c`, `d` eliminated through the conjugacy constraints.
pub fn constrained(e: &OperatorExpr) -> OperatorExpr {
    e.compose_params(&conjugacy_map())
}

/// All four parameters at `(a, b)` with `c = a - b - 2`, `d = b`.
pub fn constrained_point(a: &BigRational, b: &BigRational) -> ExactParams {
    let c = a - b - BigRational::from_integer(2.into());
    [(Param::A, a.clone()), (Param::B, b.clone()), (Param::C, c), (Param::D, b.clone())]
        .into_iter()
        .map(|(p, v)| (p, from_rational(v)))
        .collect()
}

/// Text form `a=1, b=0, c=-1, d=0` of a parameter assignment.
pub fn describe_params(values: &ExactParams) -> String {
    values
        .iter()
        .map(|(p, v)| format!("{p}={}", crate::scalar::format_gauss(v)))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Matrices of `K₊`, `K₋` and `K_z = L_z` at one numeric parameter point.
#[derive(Clone, Debug)]
pub struct KMatrices {
    pub plus: SparseOperator,
    pub minus: SparseOperator,
    pub z: SparseOperator,
}

impl KMatrices {
    pub fn new(ev: &Evaluator, params: &NumericParams) -> Result<Self, RepError> {
        Ok(Self {
            plus: ev.evaluate(&build_k(Sign::Plus), params)?,
            minus: ev.evaluate(&build_k(Sign::Minus), params)?,
            z: ev.generator(Generator::LZ).clone(),
        })
    }
}
