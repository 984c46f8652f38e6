use super::{timestamp, ConfigError, Range, RunConfig, SCHEMA_VERSION, TOOL_VERSION};
use crate::analyzer::classify::fit_parts;
use crate::analyzer::{build_k, case_of, closure_conditions, constrained, constrained_point, CaseId, ConstraintSet, Sign};
use crate::param::{NumericParams, Param, ParamPoly};
use crate::scalar::rational_to_f64;
use crate::sphere::{Evaluator, RepError};
use num_complex::Complex64;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

/// Column order of the CSV output.
pub const CSV_COLUMNS: [&str; 11] =
    ["a", "b", "c", "d", "closure_1", "closure_2", "residual", "closed", "closed_exact", "matrix_closed", "case"];

/// One grid point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    /// Values of the closure relations, in the order of
    /// [`ScanReport::relations`].
    pub closure: Vec<f64>,
    /// Interior distance of the `[K₊, K₋]` matrix from the span of
    /// `{1, K_z}`.
    pub residual: f64,
    /// Closure relations vanish to the tolerance, relative to the size of
    /// their terms.
    pub closed: bool,
    /// Closure relations vanish in exact arithmetic.
    pub closed_exact: bool,
    /// `residual` is within the tolerance.
    pub matrix_closed: bool,
    pub case: Option<CaseId>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub schema_version: String,
    pub tool_version: String,
    pub timestamp: Option<String>,
    pub config: RunConfig,
    pub relations: Vec<String>,
    pub rows: Vec<ScanRow>,
}

impl ScanReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scan serializes")
    }

    pub fn closed_points(&self) -> impl Iterator<Item = &ScanRow> {
        self.rows.iter().filter(|r| r.closed)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ScanError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("cannot start {0} workers: {1}")]
    Pool(usize, String),
}

/// `[K₊, K₋]` under the conjugacy constraints, split by powers of `a` and
/// `b` and restricted to the interior `k = 2` on a shared sparsity pattern.
/// A grid point then costs one weighted sum over the pattern.
pub struct ScanPlan {
    lmax: u32,
    /// `L_z` eigenvalue of each interior row.
    ms: Vec<f64>,
    pattern: Vec<(u32, u32)>,
    /// `(a-exponent, b-exponent, values on the pattern)`.
    terms: Vec<(u32, u32, Vec<Complex64>)>,
    relations: ConstraintSet,
}

impl ScanPlan {
    pub fn new(lmax: u32) -> Result<Self, RepError> {
        let comm = constrained(&build_k(Sign::Plus).commutator(&build_k(Sign::Minus)));
        let needed = comm.degree_n();
        if lmax < needed {
            return Err(RepError::LmaxTooSmall { lmax, needed });
        }
        let ev = Evaluator::new(lmax);
        let basis = ev.basis();
        let cut = basis.interior_dim(needed as usize);
        let mut by_power: BTreeMap<(u32, u32), HashMap<(u32, u32), Complex64>> = BTreeMap::new();
        for (m, coeff) in comm.terms() {
            let mat = ev.monomial_matrix(m);
            for (e, c) in coeff.terms() {
                let w = crate::scalar::to_complex64(c);
                let slot = by_power.entry((e.0[Param::A.index()], e.0[Param::B.index()])).or_default();
                for (r, col, v) in mat.entries().filter(|(r, col, _)| *r < cut && *col < cut) {
                    *slot.entry((r as u32, col as u32)).or_default() += v * w;
                }
            }
        }
        let mut pattern: Vec<(u32, u32)> = by_power.values().flat_map(|m| m.keys().copied()).collect();
        pattern.sort_unstable();
        pattern.dedup();
        let terms = by_power
            .into_iter()
            .map(|((i, j), m)| {
                let vals = pattern.iter().map(|p| m.get(p).copied().unwrap_or_default()).collect();
                (i, j, vals)
            })
            .collect();
        Ok(Self {
            lmax,
            ms: (0..cut).map(|i| f64::from(basis.state(i).m)).collect(),
            pattern,
            terms,
            relations: closure_conditions(),
        })
    }

    pub fn lmax(&self) -> u32 {
        self.lmax
    }

    pub fn relations(&self) -> &ConstraintSet {
        &self.relations
    }

    /// The fit residual of `[K₊, K₋]` at `(a, b)`.
    pub fn residual(&self, a: f64, b: f64) -> f64 {
        let weights: Vec<f64> = self.terms.iter().map(|(i, j, _)| a.powi(*i as i32) * b.powi(*j as i32)).collect();
        let mut diag = vec![Complex64::new(0.0, 0.0); self.ms.len()];
        let mut off = 0.0;
        for (k, &(r, c)) in self.pattern.iter().enumerate() {
            let v: Complex64 = self.terms.iter().zip(&weights).map(|(t, w)| t.2[k] * w).sum();
            if r == c {
                diag[r as usize] = v;
            } else {
                off += v.norm_sqr();
            }
        }
        fit_parts(&self.ms, &diag, off).residual
    }

    /// Evaluates one grid point.
    pub fn row(&self, a: &BigRational, b: &BigRational, tol: f64) -> ScanRow {
        let exact = constrained_point(a, b);
        let numeric = NumericParams::from_exact(&exact);
        let value = |p: Param| rational_to_f64(&exact[&p].re);
        let mut closure = Vec::new();
        let mut closed = true;
        for r in self.relations.relations() {
            let v = r.eval(&numeric).map(|z| z.re).unwrap_or(f64::NAN);
            closed &= v.abs() <= tol * term_scale(r, &numeric).max(1.0);
            closure.push(v);
        }
        let residual = self.residual(value(Param::A), value(Param::B));
        let closed_exact = self.relations.is_satisfied(&exact);
        ScanRow {
            a: value(Param::A),
            b: value(Param::B),
            c: value(Param::C),
            d: value(Param::D),
            closure,
            residual,
            closed,
            closed_exact,
            matrix_closed: residual <= tol,
            case: if closed_exact { case_of(a, b) } else { None },
        }
    }
}

/// `Σ |coefficient · monomial|` at the point.
fn term_scale(p: &ParamPoly, at: &NumericParams) -> f64 {
    p.terms()
        .map(|(e, c)| {
            let single = ParamPoly::from_terms([(*e, c.clone())]);
            single.eval(at).map(|z| z.norm()).unwrap_or(f64::INFINITY)
        })
        .sum()
}

fn default_axis() -> Range {
    "-5:5:0.1".parse().expect("default range")
}

/// Scans the `(a, b)` grid, `a` outer and `b` inner. Rows come back in grid
/// order whatever the number of workers.
pub fn run_scan(config: &RunConfig) -> Result<ScanReport, ScanError> {
    config.validate()?;
    let a_axis = config.a_range.clone().unwrap_or_else(default_axis);
    let b_axis = config.b_range.clone().unwrap_or_else(default_axis);
    let plan = ScanPlan::new(config.lmax)?;
    let grid: Vec<(BigRational, BigRational)> = a_axis
        .points()
        .into_iter()
        .flat_map(|a| b_axis.points().into_iter().map(move |b| (a.clone(), b)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| ScanError::Pool(config.jobs, e.to_string()))?;
    let rows: Vec<ScanRow> = pool.install(|| grid.par_iter().map(|(a, b)| plan.row(a, b, config.tolerance)).collect());
    let mut config = config.clone();
    config.a_range = Some(a_axis);
    config.b_range = Some(b_axis);
    Ok(ScanReport {
        schema_version: SCHEMA_VERSION.into(),
        tool_version: TOOL_VERSION.into(),
        timestamp: timestamp(&config),
        relations: plan.relations.relations().iter().map(|r| r.readable()).collect(),
        config,
        rows,
    })
}

