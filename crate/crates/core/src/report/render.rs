use super::{ScanReport, VerificationReport, CSV_COLUMNS, SCHEMA_VERSION, TOOL_VERSION};
use crate::analyzer::{
    closure_conditions, derive_conjugacy_constraints, enumerate_cases, AlgebraReport, Branch, CaseLabel,
    CasimirReport, TemplateMismatch,
};
use crate::scalar::fmt_rational;
use crate::sphere::fmt_sig17;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

fn sci(x: f64) -> String {
    format!("{x:.3e}")
}

pub fn render_verify(r: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "suite {} (gl2c {}, lmax {}, tol {})", r.suite, r.tool_version, r.config.lmax, r.config.tolerance);
    for c in &r.checks {
        let mut line = format!("{} {:<28}", c.status, c.id);
        if let Some(res) = c.residual {
            let _ = write!(line, " residual {}", sci(res));
        }
        if let Some(t) = c.tolerance {
            let _ = write!(line, " tol {}", sci(t));
        }
        let _ = writeln!(out, "{}  {}", line, c.detail);
        if let Some(p) = &c.params {
            let _ = writeln!(out, "     params: {p}");
        }
        for f in &c.flags {
            let _ = writeln!(out, "     ! {f}");
        }
    }
    let passed = r.checks.iter().filter(|c| c.status == super::Status::Pass).count();
    let _ = writeln!(out, "overall: {} ({passed}/{} checks)", r.overall, r.checks.len());
    out
}

/// One row per check: `id,status,residual,tolerance,lmax,params,detail`.
pub fn render_verify_csv(r: &VerificationReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["id", "status", "residual", "tolerance", "lmax", "params", "detail"]).expect("in-memory write");
    for c in &r.checks {
        let opt = |x: Option<f64>| x.map(fmt_sig17).unwrap_or_default();
        w.write_record([
            c.id.clone(),
            c.status.to_string(),
            opt(c.residual),
            opt(c.tolerance),
            c.lmax.map(|l| l.to_string()).unwrap_or_default(),
            c.params.clone().unwrap_or_default(),
            c.detail.clone(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

pub fn render_classify(r: &AlgebraReport) -> String {
    let mut out = String::new();
    let q = fmt_rational;
    let _ = writeln!(out, "parameters: a={}, b={}, c={}, d={}", q(&r.a), q(&r.b), q(&r.c), q(&r.d));
    let closure: Vec<String> = r.closure.iter().map(|v| format!("{} = {}", v.relation, q(&v.value))).collect();
    let _ = writeln!(out, "closure: {}", closure.join("; "));
    if !r.closed {
        let _ = writeln!(out, "NOT CLOSED: violated {}", r.violations.join("; "));
        let _ = writeln!(out, "fit residual of [K+, K-] onto {{1, Kz}}: {} (lmax {})", sci(r.residuals.fit.residual), r.lmax);
        for n in &r.notes {
            let _ = writeln!(out, "note: {n}");
        }
        return out;
    }
    let opt = |p: &Option<super::super::analyzer::RawPair>| p.as_ref().map(ToString::to_string).unwrap_or_else(|| "-".into());
    let _ = writeln!(out, "raw (a0, b0): {}", opt(&r.raw));
    let _ = writeln!(
        out,
        "rescaled (a0, b0): {}  table: {}",
        opt(&r.rescaled),
        r.rescaled_table_entry.as_deref().unwrap_or("none")
    );
    let _ = writeln!(
        out,
        "normalized (a0, b0): {}  shift Kz -> Kz {}",
        opt(&r.normalized),
        r.shift.as_ref().map(crate::scalar::fmt_signed).unwrap_or_else(|| "none".into())
    );
    let _ = writeln!(out, "family: {}", r.family.map(|f| f.to_string()).unwrap_or_else(|| "-".into()));
    let _ = writeln!(
        out,
        "table entry: {} {}",
        r.table_entry.as_deref().unwrap_or("none"),
        r.table_algebra.as_deref().unwrap_or("")
    );
    let _ = writeln!(out, "case: {}", r.case.map(|c| c.to_string()).unwrap_or_else(|| "none".into()));
    let _ = writeln!(
        out,
        "residuals (lmax {}): ladder {}, closed commutator {}, fit a0={:.12} b0={:.12} residual {}",
        r.lmax,
        sci(r.residuals.ladder),
        r.residuals.commutator.map(sci).unwrap_or_else(|| "-".into()),
        r.residuals.fit.a0,
        r.residuals.fit.b0,
        sci(r.residuals.fit.residual)
    );
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

pub fn render_casimir(r: &CasimirReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "a={}, b={}, raw (a0, b0) = {}, closed: {}", fmt_rational(&r.a), fmt_rational(&r.b), r.raw, r.closed);
    for f in [&r.printed, &r.corrected] {
        let _ = writeln!(
            out,
            "{:<9} [C,K+] {}  [C,K-] {}  [C,Kz] {}  (lmax {})  [C,H] {} (lmax {})",
            f.name,
            sci(f.plus),
            sci(f.minus),
            sci(f.z),
            r.lmax,
            sci(f.hamiltonian),
            r.hamiltonian_lmax
        );
    }
    let _ = writeln!(
        out,
        "printed central: {}  corrected central: {}  [C,H] above floor {}: {}",
        r.printed_invariant(),
        r.corrected_invariant(),
        sci(r.floor),
        r.not_conserved()
    );
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    let _ = writeln!(out, "verdict: {}", if r.passes() { "PASS" } else { "FAIL" });
    out
}

/// Output of `derive-constraints`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstraintReport {
    pub schema_version: String,
    pub tool_version: String,
    pub constraints: Vec<String>,
    pub solved: Vec<(String, String)>,
    pub k_plus_adjoint: String,
    pub double_adjoint_returns: bool,
    pub reverse_constraints: Vec<String>,
    pub reverse_agrees: bool,
    pub closes_under_constraints: bool,
    pub closure: Vec<String>,
    pub branches: Vec<Branch>,
    pub solver_cases: Vec<CaseLabel>,
    pub stated_cases: Vec<CaseLabel>,
}

impl ConstraintReport {
    pub fn build() -> Result<Self, TemplateMismatch> {
        let d = derive_conjugacy_constraints()?;
        let closure = closure_conditions();
        let cases = enumerate_cases(&closure);
        let texts = |s: &crate::analyzer::ConstraintSet| s.relations().iter().map(|r| format!("{} = 0", r.readable())).collect();
        Ok(Self {
            schema_version: SCHEMA_VERSION.into(),
            tool_version: TOOL_VERSION.into(),
            constraints: texts(&d.constraints),
            solved: d.solved.iter().map(|(p, v)| (p.to_string(), v.readable())).collect(),
            k_plus_adjoint: d.k_plus_adjoint.to_string(),
            double_adjoint_returns: d.double_adjoint_returns,
            reverse_constraints: texts(&d.reverse_constraints),
            reverse_agrees: d.reverse_agrees,
            closes_under_constraints: d.closes_under_constraints,
            closure: texts(&closure),
            branches: cases.branches,
            solver_cases: cases.solver_cases,
            stated_cases: cases.stated_cases,
        })
    }
}

pub fn render_constraints(r: &ConstraintReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "conjugacy constraints (K+† = K-):");
    for c in &r.constraints {
        let _ = writeln!(out, "  {c}");
    }
    for (p, v) in &r.solved {
        let _ = writeln!(out, "  {p} = {v}");
    }
    let _ = writeln!(out, "K+† = {}", r.k_plus_adjoint);
    let _ = writeln!(out, "(K+†)† = K+: {}", r.double_adjoint_returns);
    let _ = writeln!(out, "K-† = K+ gives: {} (agrees: {})", r.reverse_constraints.join(", "), r.reverse_agrees);
    let _ = writeln!(out, "K-† - K+ vanishes under the constraints: {}", r.closes_under_constraints);
    let _ = writeln!(out, "closure conditions:");
    for c in &r.closure {
        let _ = writeln!(out, "  {c}");
    }
    let _ = writeln!(out, "solution branches (c = a - b - 2, d = b):");
    for b in &r.branches {
        let _ = writeln!(out, "  {b}");
    }
    let _ = writeln!(out, "solver cases:");
    for c in &r.solver_cases {
        let _ = writeln!(out, "  {}: {}", c.id, c.description);
    }
    let _ = writeln!(out, "printed cases:");
    for c in &r.stated_cases {
        let _ = writeln!(out, "  {}: {}", c.id, c.description);
        for f in &c.flags {
            let _ = writeln!(out, "     ! {f}");
        }
    }
    out
}

/// CSV with the columns of [`CSV_COLUMNS`]; floats carry 17 significant
/// digits.
pub fn render_scan_csv(r: &ScanReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_COLUMNS).expect("in-memory write");
    for row in &r.rows {
        let closure = |k: usize| row.closure.get(k).map_or(String::new(), |v| fmt_sig17(*v));
        w.write_record([
            fmt_sig17(row.a),
            fmt_sig17(row.b),
            fmt_sig17(row.c),
            fmt_sig17(row.d),
            closure(0),
            closure(1),
            fmt_sig17(row.residual),
            row.closed.to_string(),
            row.closed_exact.to_string(),
            row.matrix_closed.to_string(),
            row.case.map(|c| c.to_string()).unwrap_or_else(|| "none".into()),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}
