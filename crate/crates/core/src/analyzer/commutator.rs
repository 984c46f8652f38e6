use super::conjugacy::ConstraintSet;
use super::operators::{build_k, lz, KMatrices, Sign};
use super::random_rational;
use crate::opalg::{n_dot_l, Generator, OperatorExpr};
use crate::param::{ExactParams, NumericParams, Param, ParamPoly};
use crate::scalar::{from_rational, GaussRational};
use crate::sphere::{residual_norm, Evaluator, RepError};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// `[K₊, K₋]` in the closed form printed for it, written with explicit
/// `NZ²`:
///
/// ```text
/// -(a+c)(b+1) - (a+c)(1-b) NZ² - 2(1 + 2b + b² + b(1-b) NZ²) L_z
/// ```
pub fn printed_commutator() -> OperatorExpr {
    let (a, b, c) = (ParamPoly::a(), ParamPoly::b(), ParamPoly::c());
    let one = ParamPoly::one();
    let apc = &a + &c;
    let nz2 = OperatorExpr::word(&[Generator::NZ, Generator::NZ]);
    let k = |p: ParamPoly| OperatorExpr::constant(p);
    let constant = k(-(&apc * &(&b + &one)));
    let nz2_term = &k(-(&apc * &(&one - &b))) * &nz2;
    let lz_inner = k(&(&one + &b.scale(&crate::scalar::real(2, 1))) + &(&b * &b))
        + &k(&b * &(&one - &b)) * &nz2;
    constant + nz2_term - (&lz_inner * &lz()).scale(&ParamPoly::int(2))
}

/// One monomial of the pre-elimination comparison.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonomialDifference {
    pub monomial: String,
    pub computed: ParamPoly,
    pub printed: ParamPoly,
    pub difference: ParamPoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchBranch {
    /// Equal in normal form.
    Exact,
    /// Different normal forms, equal as sphere operators: the difference
    /// lies in the ideal generated by `N·L`.
    ModuloNDotL,
    /// Different as sphere operators.
    Mismatch,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointResidual {
    pub lmax: u32,
    pub params: String,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommutatorMatch {
    /// `[K₊, K₋]` for unconstrained parameters.
    pub commutator: OperatorExpr,
    pub printed: OperatorExpr,
    /// Pre-elimination comparison for unconstrained parameters; only
    /// monomials whose coefficients differ are listed.
    pub differences: Vec<MonomialDifference>,
    /// `[K₊, K₋] - printed` with `d = b`.
    pub difference_at_d_eq_b: OperatorExpr,
    /// `w` with `difference_at_d_eq_b = w · NZ · (N·L)`, when such a
    /// polynomial exists.
    pub n_dot_l_factor: Option<ParamPoly>,
    pub branch: MatchBranch,
    pub tolerance: f64,
    /// Residuals at random points with `d = b`.
    pub residuals: Vec<PointResidual>,
    /// Residual at one point with `d ≠ b`; large values show the printed
    /// form needs `d = b`.
    pub d_ne_b_residual: PointResidual,
}

impl CommutatorMatch {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.residual).fold(0.0, f64::max)
    }

    pub fn holds(&self) -> bool {
        self.branch != MatchBranch::Mismatch
    }

    pub fn branch_description(&self) -> String {
        match self.branch {
            MatchBranch::Exact => "exact normal-form equality".into(),
            MatchBranch::ModuloNDotL => format!(
                "equal modulo N·L = 0 (difference = ({}) NZ·(N·L)); requires d = b",
                self.n_dot_l_factor.as_ref().map(ToString::to_string).unwrap_or_default()
            ),
            MatchBranch::Mismatch => "mismatch".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatchOptions {
    pub lmaxes: Vec<u32>,
    pub points: usize,
    pub seed: u64,
    pub tolerance: f64,
}

impl Default for MatchOptions {
    fn default() -> Self {
        Self {
            lmaxes: vec![12, 16],
            points: 5,
            seed: 17,
            tolerance: 1e-10,
        }
    }
}

fn d_eq_b() -> [Option<ParamPoly>; 4] {
    [None, None, None, Some(ParamPoly::b())]
}

fn factor_through(diff: &OperatorExpr, target: &OperatorExpr) -> Option<ParamPoly> {
    if diff.is_zero() {
        return Some(ParamPoly::zero());
    }
    let (m, c) = target.terms().next()?;
    let inv = crate::scalar::real(1, 1) / c.as_constant()?;
    let w = diff.coefficient_of(m, crate::opalg::Convention::Normal).scale(&inv);
    (&OperatorExpr::constant(w.clone()) * target == *diff).then_some(w)
}

fn residual_at(ev: &Evaluator, diff: &OperatorExpr, at: &ExactParams) -> Result<f64, RepError> {
    let m = ev.evaluate(diff, &NumericParams::from_exact(at))?;
    let zero = crate::sphere::SparseOperator::zero(ev.basis());
    residual_norm(&m, &zero, diff.degree_n() as usize)
}

/// Compares the computed `[K₊, K₋]` with [`printed_commutator`], first
/// symbolically and then on the sphere at random rational points.
pub fn commutator_match(opts: &MatchOptions) -> Result<CommutatorMatch, RepError> {
    let commutator = build_k(Sign::Plus).commutator(&build_k(Sign::Minus));
    let printed = printed_commutator();
    let (pc, pp) = (commutator.pre_elimination(), printed.pre_elimination());
    let mut keys: Vec<_> = pc.terms().map(|t| *t.0).chain(pp.terms().map(|t| *t.0)).collect();
    keys.sort();
    keys.dedup();
    let differences = keys
        .iter()
        .rev()
        .filter_map(|k| {
            let (x, y) = (pc.coefficient(&k.0), pp.coefficient(&k.0));
            let d = &x - &y;
            (!d.is_zero()).then(|| MonomialDifference {
                monomial: k.to_string(),
                computed: x,
                printed: y,
                difference: d,
            })
        })
        .collect();

    let diff_general = &commutator - &printed;
    let diff = diff_general.compose_params(&d_eq_b());
    let nz_ndl = &OperatorExpr::gen(Generator::NZ) * &n_dot_l();
    let n_dot_l_factor = factor_through(&diff, &nz_ndl);

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let points: Vec<ExactParams> = (0..opts.points)
        .map(|_| {
            let (a, b, c) = (random_rational(&mut rng), random_rational(&mut rng), random_rational(&mut rng));
            [(Param::A, a), (Param::B, b.clone()), (Param::C, c), (Param::D, b)]
                .into_iter()
                .map(|(p, v)| (p, from_rational(v)))
                .collect()
        })
        .collect();
    let mut residuals = Vec::new();
    for &lmax in &opts.lmaxes {
        let mut ev = Evaluator::new(lmax);
        ev.prepare(&diff_general);
        for at in &points {
            residuals.push(PointResidual {
                lmax,
                params: super::operators::describe_params(at),
                residual: residual_at(&ev, &diff_general, at)?,
            });
        }
    }
    let off_point: ExactParams = [(Param::A, 2), (Param::B, 1), (Param::C, -1), (Param::D, 0)]
        .into_iter()
        .map(|(p, v)| (p, crate::scalar::real(v, 1)))
        .collect();
    let lmax = opts.lmaxes.iter().copied().max().unwrap_or(16);
    let d_ne_b_residual = PointResidual {
        lmax,
        params: super::operators::describe_params(&off_point),
        residual: residual_at(&Evaluator::new(lmax), &diff_general, &off_point)?,
    };

    let numerically_equal = residuals.iter().all(|r| r.residual <= opts.tolerance);
    let branch = if diff.is_zero() {
        MatchBranch::Exact
    } else if numerically_equal {
        MatchBranch::ModuloNDotL
    } else {
        MatchBranch::Mismatch
    };
    Ok(CommutatorMatch {
        commutator,
        printed,
        differences,
        difference_at_d_eq_b: diff,
        n_dot_l_factor,
        branch,
        tolerance: opts.tolerance,
        residuals,
        d_ne_b_residual,
    })
}

/// Scales `p` so that its lowest graded-lex term has coefficient 1.
fn normalize_low(p: &ParamPoly) -> ParamPoly {
    match p.terms().next() {
        Some((_, c)) => p.scale(&(crate::scalar::real(1, 1) / c.clone())),
        None => p.clone(),
    }
}

/// The vanishing of the `NZ²` coefficients of the printed commutator:
/// `(a+c)(1-b) = 0` and `b(1-b) = 0`.
pub fn closure_conditions() -> ConstraintSet {
    let pre = printed_commutator().pre_elimination();
    let nz2 = [0, 0, 2, 0, 0, 0];
    let nz2_lz = [0, 0, 2, 0, 0, 1];
    ConstraintSet::new([pre.coefficient(&nz2), pre.coefficient(&nz2_lz)].iter().map(normalize_low))
}

/// Exact values of the closure relations at a point, with their text.
pub fn closure_values(closure: &ConstraintSet, at: &ExactParams) -> Vec<(String, GaussRational)> {
    closure
        .relations()
        .iter()
        .map(|r| (r.to_string(), r.substitute_all(at).unwrap_or_else(|_| GaussRational::zero())))
        .collect()
}

/// `[L_z, K±] ∓ K±` for unconstrained parameters, symbolically, and the
/// same relation on matrices at random points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LadderIdentity {
    pub plus_exact: bool,
    pub minus_exact: bool,
    pub residuals: Vec<PointResidual>,
}

pub fn ladder_identity(lmax: u32, points: usize, seed: u64) -> Result<LadderIdentity, RepError> {
    let kp = build_k(Sign::Plus);
    let km = build_k(Sign::Minus);
    let plus_exact = (lz().commutator(&kp) - kp.clone()).is_zero();
    let minus_exact = (lz().commutator(&km) + km.clone()).is_zero();
    let ev = Evaluator::new(lmax);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut residuals = Vec::new();
    for _ in 0..points {
        let at: ExactParams = Param::ALL
            .iter()
            .map(|p| (*p, from_rational(random_rational(&mut rng))))
            .collect();
        let k = KMatrices::new(&ev, &NumericParams::from_exact(&at))?;
        let rp = residual_norm(&k.z.commutator(&k.plus), &k.plus, 1)?;
        let rm = residual_norm(&k.z.commutator(&k.minus), &k.minus.scale((-1.0).into()), 1)?;
        residuals.push(PointResidual {
            lmax,
            params: super::operators::describe_params(&at),
            residual: rp.max(rm),
        });
    }
    Ok(LadderIdentity {
        plus_exact,
        minus_exact,
        residuals,
    })
}
