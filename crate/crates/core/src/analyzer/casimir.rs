use super::classify::{raw_pair, RawPair};
use super::commutator::closure_conditions;
use super::operators::{build_k, constrained_point, lz, Sign};
use crate::opalg::{Generator, OperatorExpr};
use crate::param::{NumericParams, ParamPoly};
use crate::scalar::{from_rational, serde_rational};
use crate::sphere::{residual_norm, Evaluator, RepError, SparseOperator};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

fn k_at(sign: Sign, a: &BigRational, b: &BigRational) -> OperatorExpr {
    build_k(sign)
        .substitute_params(&constrained_point(a, b))
        .expect("all parameters bound")
}

fn casimir_with(raw: &RawPair, a: &BigRational, b: &BigRational, linear: BigRational) -> OperatorExpr {
    let k = |x: BigRational| OperatorExpr::constant(ParamPoly::constant(from_rational(x)));
    let z = lz();
    &k_at(Sign::Plus, a, b) * &k_at(Sign::Minus, a, b) + &k(raw.a0.clone()) * &(&z * &z) + &k(linear) * &z
}

/// `C = K₊K₋ + a₀K_z² - (a₀+b₀)K_z` at `(a, b)` with the raw pair.
pub fn casimir_printed(a: &BigRational, b: &BigRational) -> OperatorExpr {
    let raw = raw_pair(a, b);
    let linear = -(&raw.a0 + &raw.b0);
    casimir_with(&raw, a, b, linear)
}

/// `C' = K₊K₋ + a₀K_z² + (b₀-a₀)K_z`, which commutes with `K±` for any
/// `b₀`; it agrees with [`casimir_printed`] when `b₀ = 0`.
pub fn casimir_corrected(a: &BigRational, b: &BigRational) -> OperatorExpr {
    let raw = raw_pair(a, b);
    let linear = &raw.b0 - &raw.a0;
    casimir_with(&raw, a, b, linear)
}

/// `H = L·L / 2`.
pub fn hamiltonian() -> OperatorExpr {
    let l2 = [Generator::LX, Generator::LY, Generator::LZ]
        .iter()
        .map(|&g| OperatorExpr::word(&[g, g]))
        .fold(OperatorExpr::zero(), |acc, t| acc + t);
    l2.scale_gauss(&crate::scalar::real(1, 2))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CasimirOptions {
    pub lmax: u32,
    /// Truncation for the `[C, H]` check.
    pub hamiltonian_lmax: u32,
    pub tolerance: f64,
    /// `[C, H]` must exceed this to count as non-commuting.
    pub floor: f64,
}

impl Default for CasimirOptions {
    fn default() -> Self {
        Self {
            lmax: 16,
            hamiltonian_lmax: 12,
            tolerance: 1e-10,
            floor: 1e-6,
        }
    }
}

/// Residuals of one candidate Casimir operator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CasimirForm {
    pub name: String,
    /// `‖[C, K₊]‖`, `‖[C, K₋]‖` on the interior `k = 3`.
    pub plus: f64,
    pub minus: f64,
    /// `‖[C, K_z]‖` on the interior `k = 2`.
    pub z: f64,
    /// `‖[C, H]‖` on the interior `k = 2`, at the Hamiltonian truncation.
    pub hamiltonian: f64,
    /// Whether `[C, K₊]` and `[C, K_z]` vanish in normal form; nonzero
    /// normal forms may still vanish modulo `N·L`.
    pub symbolic_plus_zero: bool,
    pub symbolic_z_zero: bool,
}

impl CasimirForm {
    pub fn max_algebra_residual(&self) -> f64 {
        self.plus.max(self.minus).max(self.z)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CasimirReport {
    #[serde(with = "serde_rational")]
    pub a: BigRational,
    #[serde(with = "serde_rational")]
    pub b: BigRational,
    pub closed: bool,
    pub raw: RawPair,
    pub lmax: u32,
    pub hamiltonian_lmax: u32,
    pub tolerance: f64,
    pub floor: f64,
    pub printed: CasimirForm,
    pub corrected: CasimirForm,
    pub notes: Vec<String>,
}

impl CasimirReport {
    /// The printed operator commutes with `K±`, `K_z` within tolerance.
    pub fn printed_invariant(&self) -> bool {
        self.printed.max_algebra_residual() <= self.tolerance
    }

    pub fn corrected_invariant(&self) -> bool {
        self.corrected.max_algebra_residual() <= self.tolerance
    }

    /// `[C, H]` exceeds the floor. Both forms differ by a multiple of
    /// `K_z`, which commutes with `H`.
    pub fn not_conserved(&self) -> bool {
        self.corrected.hamiltonian > self.floor
    }

    /// The corrected operator is central and does not commute with `H`.
    pub fn passes(&self) -> bool {
        self.corrected_invariant() && self.not_conserved()
    }
}

struct Mats {
    plus: SparseOperator,
    minus: SparseOperator,
    z: SparseOperator,
}

fn mats(ev: &Evaluator, a: &BigRational, b: &BigRational) -> Result<Mats, RepError> {
    let none = NumericParams::new();
    Ok(Mats {
        plus: ev.evaluate(&k_at(Sign::Plus, a, b), &none)?,
        minus: ev.evaluate(&k_at(Sign::Minus, a, b), &none)?,
        z: ev.generator(Generator::LZ).clone(),
    })
}

fn casimir_matrix(m: &Mats, a0: f64, linear: f64) -> SparseOperator {
    let z2 = m.z.mul(&m.z);
    m.plus
        .mul(&m.minus)
        .axpy(a0.into(), &z2)
        .axpy(linear.into(), &m.z)
}

fn check_form(
    name: &str,
    symbolic: &OperatorExpr,
    coeffs: (f64, f64),
    big: &Mats,
    small: &Mats,
    h: &SparseOperator,
    a: &BigRational,
    b: &BigRational,
) -> Result<CasimirForm, RepError> {
    let c = casimir_matrix(big, coeffs.0, coeffs.1);
    let zero = SparseOperator::zero(c.basis());
    let cs = casimir_matrix(small, coeffs.0, coeffs.1);
    let zs = SparseOperator::zero(cs.basis());
    Ok(CasimirForm {
        name: name.into(),
        plus: residual_norm(&c.commutator(&big.plus), &zero, 3)?,
        minus: residual_norm(&c.commutator(&big.minus), &zero, 3)?,
        z: residual_norm(&c.commutator(&big.z), &zero, 2)?,
        hamiltonian: residual_norm(&cs.commutator(h), &zs, 2)?,
        symbolic_plus_zero: symbolic.commutator(&k_at(Sign::Plus, a, b)).is_zero(),
        symbolic_z_zero: symbolic.commutator(&lz()).is_zero(),
    })
}

/// Checks that the Casimir operator commutes with `K±`, `K_z` and not with
/// `H = L²/2`, for both the printed and the corrected linear term.
pub fn casimir_check(a: &BigRational, b: &BigRational, opts: &CasimirOptions) -> Result<CasimirReport, RepError> {
    let raw = raw_pair(a, b);
    let closed = closure_conditions().is_satisfied(&constrained_point(a, b));
    let big_ev = Evaluator::new(opts.lmax);
    let small_ev = Evaluator::new(opts.hamiltonian_lmax);
    let big = mats(&big_ev, a, b)?;
    let small = mats(&small_ev, a, b)?;
    let h = small_ev.evaluate(&hamiltonian(), &NumericParams::new())?;
    let a0 = crate::scalar::rational_to_f64(&raw.a0);
    let b0 = crate::scalar::rational_to_f64(&raw.b0);
    let printed = check_form("printed", &casimir_printed(a, b), (a0, -(a0 + b0)), &big, &small, &h, a, b)?;
    let corrected = check_form("corrected", &casimir_corrected(a, b), (a0, b0 - a0), &big, &small, &h, a, b)?;
    let mut notes = Vec::new();
    if !closed {
        notes.push("parameters are not closed; K± and K_z do not span a Lie algebra".into());
    }
    if printed.max_algebra_residual() > opts.tolerance && corrected.max_algebra_residual() <= opts.tolerance {
        notes.push(format!(
            "the printed linear term -(a0+b0)K_z leaves [C, K+] = {}K+; (b0-a0)K_z removes it",
            crate::scalar::fmt_rational(&(-(&raw.b0) * BigRational::from_integer(2.into())))
        ));
    }
    Ok(CasimirReport {
        a: a.clone(),
        b: b.clone(),
        closed,
        raw,
        lmax: opts.lmax,
        hamiltonian_lmax: opts.hamiltonian_lmax,
        tolerance: opts.tolerance,
        floor: opts.floor,
        printed,
        corrected,
        notes,
    })
}
