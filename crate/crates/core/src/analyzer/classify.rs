use super::cases::{case_of, CaseId};
use super::commutator::closure_conditions;
use super::operators::{constrained_point, KMatrices};
use crate::param::NumericParams;
use crate::scalar::{fmt_rational, rat, rational_to_f64, serde_rational};
use crate::sphere::{residual_norm, Evaluator, RepError, SparseOperator};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Family of `G(a₀, b₀)` by the sign of `a₀`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "su(1,1)-type")]
    Su11Type,
    #[serde(rename = "su(2)-type")]
    Su2Type,
    #[serde(rename = "oscillator/degenerate")]
    Degenerate,
}

impl Family {
    pub fn of(a0: &BigRational) -> Self {
        if a0.is_negative() {
            Family::Su11Type
        } else if a0.is_positive() {
            Family::Su2Type
        } else {
            Family::Degenerate
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Su11Type => "su(1,1)-type",
            Family::Su2Type => "su(2)-type",
            Family::Degenerate => "oscillator/degenerate",
        })
    }
}

/// Coefficients in `[K₊, K₋] = 2a₀ K_z + b₀`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawPair {
    #[serde(with = "serde_rational")]
    pub a0: BigRational,
    #[serde(with = "serde_rational")]
    pub b0: BigRational,
}

impl fmt::Display for RawPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", fmt_rational(&self.a0), fmt_rational(&self.b0))
    }
}

/// The table entry and algebra for a pair in `{0, ±1}²`.
pub fn table_entry(pair: &RawPair) -> Option<(String, &'static str)> {
    let unit = |x: &BigRational| x.is_zero() || x.abs().is_one();
    if !unit(&pair.a0) || !unit(&pair.b0) || pair.a0.is_zero() {
        return None;
    }
    let algebra = match (pair.a0.is_positive(), pair.b0.is_zero()) {
        (true, false) => "o(3)⊕u(1) ≈ u(2)⊕u(1)",
        (false, false) => "o(2,1)⊕u(1) ≈ u(1,1)⊕u(1)",
        (true, true) => "so(3)⊕u(1) ≈ su(2)⊕u(1)",
        (false, true) => "so(2,1)⊕u(1) ≈ su(1,1)⊕u(1)",
    };
    Some((format!("G({},{})", fmt_rational(&pair.a0), fmt_rational(&pair.b0)), algebra))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosureValue {
    pub relation: String,
    #[serde(with = "serde_rational")]
    pub value: BigRational,
}

/// Least-squares fit of a matrix onto `{1, K_z}` over the interior.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormFit {
    pub a0: f64,
    pub b0: f64,
    /// Interior Frobenius norm of the part the fit leaves unexplained.
    pub residual: f64,
}

/// Fits `M ≈ 2a₀ L_z + b₀` on the interior `l ≤ lmax - k`. Only the
/// diagonal enters the fit; off-diagonal entries count towards the
/// residual.
pub fn fit_closed_form(m: &SparseOperator, k: usize) -> Result<ClosedFormFit, RepError> {
    let basis = m.basis();
    if k as u32 > basis.lmax() {
        return Err(RepError::Range { k, lmax: basis.lmax() });
    }
    let cut = basis.interior_dim(k);
    let mut off = 0.0;
    let mut diag = vec![Complex64::new(0.0, 0.0); cut];
    for (r, c, v) in m.entries().filter(|(r, c, _)| *r < cut && *c < cut) {
        if r == c {
            diag[r] = v;
        } else {
            off += v.norm_sqr();
        }
    }
    let ms: Vec<f64> = (0..cut).map(|i| f64::from(basis.state(i).m)).collect();
    Ok(fit_parts(&ms, &diag, off))
}

/// The fit from the interior diagonal, the `L_z` eigenvalues of the same
/// rows, and the squared norm of the interior off-diagonal part.
pub(crate) fn fit_parts(ms: &[f64], diag: &[Complex64], off_sq: f64) -> ClosedFormFit {
    let b0 = diag.iter().map(|d| d.re).sum::<f64>() / diag.len() as f64;
    let mm: f64 = ms.iter().map(|x| x * x).sum();
    let slope = if mm > 0.0 { ms.iter().zip(diag).map(|(x, d)| x * d.re).sum::<f64>() / mm } else { 0.0 };
    let misfit: f64 = ms.iter().zip(diag).map(|(x, d)| (d - b0 - slope * x).norm_sqr()).sum();
    ClosedFormFit {
        a0: slope / 2.0,
        b0,
        residual: (off_sq + misfit).sqrt(),
    }
}

/// Matrix checks of the closed algebra at one point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraResiduals {
    /// `max ‖[K_z, K±] ∓ K±‖` on the interior `k = 1`.
    pub ladder: f64,
    /// `‖[K₊, K₋] - (2a₀K_z + b₀)‖` on the interior `k = 2`, with the exact
    /// raw pair; absent off the closed set.
    pub commutator: Option<f64>,
    pub fit: ClosedFormFit,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraReport {
    #[serde(with = "serde_rational")]
    pub a: BigRational,
    #[serde(with = "serde_rational")]
    pub b: BigRational,
    #[serde(with = "serde_rational")]
    pub c: BigRational,
    #[serde(with = "serde_rational")]
    pub d: BigRational,
    pub lmax: u32,
    pub closed: bool,
    pub closure: Vec<ClosureValue>,
    /// Closure relations that do not vanish, as `relation = value`.
    pub violations: Vec<String>,
    pub raw: Option<RawPair>,
    /// `(sgn a₀, b₀/|a₀|)`, after rescaling `K±` by `|a₀|^(-1/2)`.
    pub rescaled: Option<RawPair>,
    pub rescaled_table_entry: Option<String>,
    /// `s` in `K_z → K_z + s`, which removes `b₀`.
    #[serde(with = "opt_rational")]
    pub shift: Option<BigRational>,
    pub normalized: Option<RawPair>,
    pub family: Option<Family>,
    pub table_entry: Option<String>,
    pub table_algebra: Option<String>,
    pub residuals: AlgebraResiduals,
    pub case: Option<CaseId>,
    pub notes: Vec<String>,
}

mod opt_rational {
    use crate::scalar::{fmt_rational, parse_rational};
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&fmt_rational(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| parse_rational(&t).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{t}`"))))
            .transpose()
    }
}

/// `a₀ = -(b+1)²`, `b₀ = -(a+c)(b+1)` with `c = a - b - 2`.
pub fn raw_pair(a: &BigRational, b: &BigRational) -> RawPair {
    let b1 = b + BigRational::one();
    let apc = a + a - b - rat(2, 1);
    RawPair {
        a0: -(&b1 * &b1),
        b0: -(apc * b1),
    }
}

/// Classifies the algebra spanned by `K±`, `K_z` at `(a, b)` with
/// `c = a - b - 2`, `d = b`. Off the closed set the report lists the
/// violated closure relations and carries no raw pair.
pub fn classify(a: &BigRational, b: &BigRational, lmax: u32) -> Result<AlgebraReport, RepError> {
    let at = constrained_point(a, b);
    let c = a - b - rat(2, 1);
    let closure: Vec<ClosureValue> = closure_conditions()
        .relations()
        .iter()
        .map(|r| ClosureValue {
            relation: r.readable(),
            value: r.substitute_all(&at).map(|v| v.re).unwrap_or_default(),
        })
        .collect();
    let violations: Vec<String> = closure
        .iter()
        .filter(|v| !v.value.is_zero())
        .map(|v| format!("{} = {}", v.relation, fmt_rational(&v.value)))
        .collect();
    let closed = violations.is_empty();

    let ev = Evaluator::new(lmax);
    let k = KMatrices::new(&ev, &NumericParams::from_exact(&at))?;
    let ladder = residual_norm(&k.z.commutator(&k.plus), &k.plus, 1)?
        .max(residual_norm(&k.z.commutator(&k.minus), &k.minus.scale((-1.0).into()), 1)?);
    let comm = k.plus.commutator(&k.minus);
    let fit = fit_closed_form(&comm, 2)?;

    let mut report = AlgebraReport {
        a: a.clone(),
        b: b.clone(),
        c,
        d: b.clone(),
        lmax,
        closed,
        closure,
        violations,
        raw: None,
        rescaled: None,
        rescaled_table_entry: None,
        shift: None,
        normalized: None,
        family: None,
        table_entry: None,
        table_algebra: None,
        residuals: AlgebraResiduals {
            ladder,
            commutator: None,
            fit,
        },
        case: case_of(a, b),
        notes: Vec::new(),
    };
    if !closed {
        report.notes.push("not closed: [K+, K-] keeps NZ² terms".into());
        return Ok(report);
    }

    let raw = raw_pair(a, b);
    let target = k
        .z
        .scale(Complex64::new(2.0 * rational_to_f64(&raw.a0), 0.0))
        .add(&SparseOperator::identity(ev.basis()).scale(rational_to_f64(&raw.b0).into()));
    report.residuals.commutator = Some(residual_norm(&comm, &target, 2)?);
    report.family = Some(Family::of(&raw.a0));
    if !raw.a0.is_zero() {
        let scale = raw.a0.abs();
        let rescaled = RawPair {
            a0: &raw.a0 / &scale,
            b0: &raw.b0 / &scale,
        };
        report.rescaled_table_entry = table_entry(&rescaled).map(|t| t.0);
        let normalized = RawPair {
            a0: rescaled.a0.clone(),
            b0: BigRational::zero(),
        };
        if let Some((label, algebra)) = table_entry(&normalized) {
            report.table_entry = Some(label);
            report.table_algebra = Some(algebra.to_string());
        }
        report.shift = Some(&raw.b0 / (rat(2, 1) * &raw.a0));
        report.rescaled = Some(rescaled);
        report.normalized = Some(normalized);
    }
    if !raw.b0.is_zero() {
        report.notes.push(format!(
            "b0 = {} is absorbed by K_z -> K_z {}; the raw algebra is {} only up to that shift",
            fmt_rational(&raw.b0),
            report.shift.as_ref().map(crate::scalar::fmt_signed).unwrap_or_default(),
            report.family.map(|f| f.to_string()).unwrap_or_default(),
        ));
    }
    if a.is_one() && b.is_one() {
        report.notes.push(format!(
            "listed as the su(1,1) case with a=-c=1, but c=a-b-2={} and a+c={}; b0=0 needs a=3/2",
            fmt_rational(&report.c),
            fmt_rational(&(a + &report.c)),
        ));
    }
    report.raw = Some(raw);
    Ok(report)
}
