use super::operators::{build_j, build_k, constrained, lz, Sign, Which};
use crate::opalg::{i_op, OperatorExpr, VectorOp};
use crate::param::{ExactParams, Param, ParamPoly};
use crate::scalar::GaussRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Polynomial relations `p = 0`, nonzero and pairwise non-proportional.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ConstraintSet {
    relations: Vec<ParamPoly>,
}

impl ConstraintSet {
    pub fn new(relations: impl IntoIterator<Item = ParamPoly>) -> Self {
        let mut out = Self::default();
        for r in relations {
            out.push(r);
        }
        out
    }

    /// Adds `r = 0` unless `r` is zero or a multiple of a relation already
    /// present.
    pub fn push(&mut self, r: ParamPoly) {
        if r.is_zero() || self.contains(&r) {
            return;
        }
        self.relations.push(r);
    }

    pub fn relations(&self) -> &[ParamPoly] {
        &self.relations
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    /// Whether `r` is, up to a constant factor, one of the relations.
    pub fn contains(&self, r: &ParamPoly) -> bool {
        let m = r.monic();
        self.relations.iter().any(|x| x.monic() == m)
    }

    /// Value of every relation; `None` for relations with unbound
    /// parameters.
    pub fn values(&self, at: &ExactParams) -> Vec<Option<GaussRational>> {
        self.relations.iter().map(|r| r.substitute_all(at).ok()).collect()
    }

    pub fn is_satisfied(&self, at: &ExactParams) -> bool {
        self.values(at).iter().all(|v| v.as_ref().is_some_and(Zero::is_zero))
    }

    pub fn substitute(&self, map: &[Option<ParamPoly>; 4]) -> Self {
        Self::new(self.relations.iter().map(|r| r.compose(map)))
    }
}

impl std::fmt::Display for ConstraintSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.relations.iter().map(|r| format!("{} = 0", r.readable())).collect();
        f.write_str(&parts.join("; "))
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TemplateMismatch {
    #[error("adjoint has a term {0} outside the template")]
    Outside(String),
    #[error("coefficient of `{0}` is not determined by the template")]
    Undetermined(String),
}

/// Solves `expr = base + Σ p_k · shape_k` for the polynomials `p_k`, where
/// each shape has its own monomial support.
fn match_template(
    expr: &OperatorExpr,
    base: &OperatorExpr,
    shapes: &[(&str, OperatorExpr)],
) -> Result<Vec<ParamPoly>, TemplateMismatch> {
    let rest = expr - base;
    let mut solved = Vec::new();
    let mut remainder = rest.clone();
    for (name, shape) in shapes {
        let (m, c) = shape
            .terms()
            .next()
            .ok_or_else(|| TemplateMismatch::Undetermined(name.to_string()))?;
        let inv = GaussRational::one() / c.as_constant().ok_or_else(|| TemplateMismatch::Undetermined(name.to_string()))?;
        let p = rest.coefficient_of(m, crate::opalg::Convention::Normal).scale(&inv);
        remainder = &remainder - &(&OperatorExpr::constant(p.clone()) * shape);
        solved.push(p);
    }
    if let Some((m, c)) = remainder.terms().next() {
        return Err(TemplateMismatch::Outside(OperatorExpr::term(*m, c.clone()).to_string()));
    }
    Ok(solved)
}

/// Outcome of imposing `K₊† = K₋`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjugacyDerivation {
    /// `c - (a - 2 - b) = 0`, `d - b = 0`.
    pub constraints: ConstraintSet,
    /// Values of `c` and `d` read off the adjoint.
    pub solved: Vec<(Param, ParamPoly)>,
    pub k_plus_adjoint: OperatorExpr,
    /// `(K₊†)† = K₊` in normal form.
    pub double_adjoint_returns: bool,
    /// The relations obtained from `K₋† = K₊` instead; they express `a`,
    /// `b` through `c`, `d`.
    pub reverse_constraints: ConstraintSet,
    /// Both relation sets describe the same parameters.
    pub reverse_agrees: bool,
    /// Under the constraints, `K₋† - K₊` normalizes to zero.
    pub closes_under_constraints: bool,
}

/// Reads the conjugacy constraints off `K₊†` by matching it against the
/// `K₋` template `-i(N×L)₋ + c N₋ + d N₋L_z`.
pub fn derive_conjugacy_constraints() -> Result<ConjugacyDerivation, TemplateMismatch> {
    let n = VectorOp::n();
    let nl = n.cross(&VectorOp::l());
    let kp = build_k(Sign::Plus);
    let km = build_k(Sign::Minus);
    let kp_adj = kp.adjoint();

    let minus_base = &(-i_op()) * &nl.minus();
    let minus_shapes = [("c", n.minus()), ("d", &n.minus() * &lz())];
    let cd = match_template(&kp_adj, &minus_base, &minus_shapes)?;
    let solved = vec![(Param::C, cd[0].clone()), (Param::D, cd[1].clone())];
    let constraints = ConstraintSet::new(solved.iter().map(|(p, v)| ParamPoly::param(*p) - v));

    let plus_base = &i_op() * &nl.plus();
    let plus_shapes = [("a", n.plus()), ("b", &n.plus() * &lz())];
    let ab = match_template(&km.adjoint(), &plus_base, &plus_shapes)?;
    let reverse_constraints =
        ConstraintSet::new([ParamPoly::a() - &ab[0], ParamPoly::b() - &ab[1]]);
    let reverse_agrees = reverse_constraints
        .substitute(&super::operators::conjugacy_map())
        .is_empty();

    Ok(ConjugacyDerivation {
        constraints,
        solved,
        double_adjoint_returns: kp_adj.adjoint() == kp,
        closes_under_constraints: constrained(&(km.adjoint() - kp.clone())).is_zero(),
        k_plus_adjoint: kp_adj,
        reverse_constraints,
        reverse_agrees,
    })
}

/// One termwise adjoint identity.
#[derive(Clone, Debug, PartialEq)]
pub struct AdjointIdentity {
    pub name: &'static str,
    pub computed: Vec<OperatorExpr>,
    pub expected: Vec<OperatorExpr>,
}

impl AdjointIdentity {
    pub fn holds(&self) -> bool {
        self.computed == self.expected
    }

    /// Componentwise `computed - expected`.
    pub fn differences(&self) -> Vec<OperatorExpr> {
        self.computed.iter().zip(&self.expected).map(|(x, y)| x - y).collect()
    }
}

/// Adjoints of `J₁`, `J₂`, `K₊`, `K₋` against their closed forms, with
/// real parameters:
///
/// ```text
/// J₁† =  -i N×L + a N + b N L_z - 2N + b [L_z, N]
/// J₂† =   i N×L + c N + d N L_z + 2N + d [L_z, N]
/// K₊† =  -i (N×L)₋ + (a - 2 - b) N₋ + b N₋ L_z
/// K₋† =   i (N×L)₊ + (c + 2 + d) N₊ + d N₊ L_z
/// ```
pub fn adjoint_identities() -> Vec<AdjointIdentity> {
    let n = VectorOp::n();
    let nl = n.cross(&VectorOp::l());
    let lz_n = n.map(|c| lz().commutator(c));
    let two = ParamPoly::int(2);
    let j_rhs = |sign: i64, p: ParamPoly, q: ParamPoly| {
        let unit = if sign > 0 { i_op() } else { -i_op() };
        nl.left_mul(&unit)
            .add(&n.scale(&p))
            .add(&n.right_mul(&lz()).scale(&q))
            .add(&n.scale(&ParamPoly::int(2 * sign)))
            .add(&lz_n.scale(&q))
    };
    let j1 = j_rhs(-1, ParamPoly::a(), ParamPoly::b());
    let j2 = j_rhs(1, ParamPoly::c(), ParamPoly::d());
    let kp = &(-i_op()) * &nl.minus()
        + n.minus().scale(&(ParamPoly::a() - &two - ParamPoly::b()))
        + (&n.minus() * &lz()).scale(&ParamPoly::b());
    let km = &i_op() * &nl.plus()
        + n.plus().scale(&(ParamPoly::c() + &two + ParamPoly::d()))
        + (&n.plus() * &lz()).scale(&ParamPoly::d());
    vec![
        AdjointIdentity {
            name: "J1",
            computed: build_j(Which::One).adjoint().0.to_vec(),
            expected: j1.0.to_vec(),
        },
        AdjointIdentity {
            name: "J2",
            computed: build_j(Which::Two).adjoint().0.to_vec(),
            expected: j2.0.to_vec(),
        },
        AdjointIdentity {
            name: "K+",
            computed: vec![build_k(Sign::Plus).adjoint()],
            expected: vec![kp],
        },
        AdjointIdentity {
            name: "K-",
            computed: vec![build_k(Sign::Minus).adjoint()],
            expected: vec![km],
        },
    ]
}
