use super::{CheckRecord, ConfigError, RunConfig, VerificationReport};
use crate::analyzer::{
    adjoint_identities, case_decomposition_check, casimir_check, classify, closure_conditions, commutator_match,
    constrained_point, derive_conjugacy_constraints, describe_params, enumerate_cases, ladder_identity, CaseId,
    CasimirOptions, KMatrices, MatchBranch, MatchOptions,
};
use crate::param::NumericParams;
use crate::scalar::rat;
use crate::sphere::{residual_norm, Evaluator, RepError};
use num_rational::BigRational;

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

fn closed_cases() -> [(CaseId, BigRational, BigRational); 3] {
    [
        (CaseId::Case1, rat(1, 1), rat(0, 1)),
        (CaseId::Case2, rat(1, 1), rat(1, 1)),
        (CaseId::Case3, rat(3, 2), rat(1, 1)),
    ]
}

fn conjugacy_checks(config: &RunConfig, out: &mut Vec<CheckRecord>) -> Result<(), RepError> {
    match derive_conjugacy_constraints() {
        Ok(d) => {
            out.push(CheckRecord::exact("conjugacy.constraints", d.constraints.len() == 2, d.constraints.to_string()));
            out.push(CheckRecord::exact("conjugacy.double_adjoint", d.double_adjoint_returns, "(K+†)† = K+"));
            out.push(CheckRecord::exact(
                "conjugacy.reverse",
                d.reverse_agrees && d.closes_under_constraints,
                format!("K-† = K+ gives {}", d.reverse_constraints),
            ));
        }
        Err(e) => out.push(CheckRecord::exact("conjugacy.constraints", false, e.to_string())),
    }
    let at = constrained_point(&rat(3, 1), &rat(1, 1));
    let k = KMatrices::new(&Evaluator::new(config.lmax), &NumericParams::from_exact(&at))?;
    out.push(
        CheckRecord::numeric(
            "conjugacy.matrix",
            residual_norm(&k.plus.adjoint(), &k.minus, 1)?,
            config.tolerance,
            config.lmax,
            "evaluate(K+)† vs evaluate(K-), interior k=1",
        )
        .with_params(describe_params(&at)),
    );
    for id in adjoint_identities() {
        let detail = if id.holds() {
            "termwise equal".to_string()
        } else {
            let diffs: Vec<String> = id.differences().iter().map(ToString::to_string).collect();
            format!("differences: {}", diffs.join("; "))
        };
        out.push(CheckRecord::exact(&format!("adjoint.{}", id.name), id.holds(), detail));
    }
    Ok(())
}

fn commutator_checks(config: &RunConfig, out: &mut Vec<CheckRecord>) -> Result<(), RepError> {
    let mut lmaxes = vec![config.lmax.min(12), config.lmax];
    lmaxes.dedup();
    let m = commutator_match(&MatchOptions {
        lmaxes,
        points: 5,
        seed: config.seed,
        tolerance: config.tolerance,
    })?;
    let mut rec = CheckRecord::numeric(
        "commutator.match",
        m.max_residual(),
        config.tolerance,
        config.lmax,
        m.branch_description(),
    );
    if m.branch == MatchBranch::Mismatch {
        rec.status = super::Status::Fail;
    }
    if m.branch == MatchBranch::ModuloNDotL {
        rec.flags.push("printed form holds only modulo N·L = 0 and only for d = b".into());
    }
    out.push(rec);

    let l = ladder_identity(config.lmax, 5, config.seed)?;
    out.push(CheckRecord::exact(
        "ladder.symbolic",
        l.plus_exact && l.minus_exact,
        "[Kz, K±] = ±K± for free a, b, c, d",
    ));
    let worst = l.residuals.iter().map(|r| r.residual).fold(0.0, f64::max);
    out.push(CheckRecord::numeric("ladder.matrix", worst, config.tolerance, config.lmax, "5 random points, interior k=1"));

    let closure = closure_conditions();
    out.push(CheckRecord::exact("closure.relations", closure.len() == 2, closure.to_string()));
    let half = constrained_point(&rat(1, 1), &rat(1, 2));
    let quarter = closure.values(&half).into_iter().flatten().any(|v| v.re == rat(1, 4));
    out.push(CheckRecord::exact("closure.violation", quarter, "b=1/2 gives b(1-b) = 1/4").with_params(describe_params(&half)));

    let e = enumerate_cases(&closure);
    let flags = e.stated_cases.iter().flat_map(|c| c.flags.iter().map(move |f| format!("case {}: {f}", c.id)));
    let branches: Vec<String> = e.branches.iter().map(ToString::to_string).collect();
    out.push(
        CheckRecord::exact("cases.enumeration", e.matches_expected_manifold(), format!("branches: {}", branches.join(" | ")))
            .with_flags(flags),
    );
    Ok(())
}

fn algebra_checks(config: &RunConfig, out: &mut Vec<CheckRecord>) -> Result<(), RepError> {
    for (case, a, b) in closed_cases() {
        let r = classify(&a, &b, config.lmax)?;
        let params = format!("a={a}, b={b}");
        let raw = r.raw.as_ref().map(ToString::to_string).unwrap_or_else(|| "none".into());
        let mut rec = CheckRecord::numeric(
            &format!("closed_algebra.{}", case.to_string().to_lowercase()),
            r.residuals.commutator.unwrap_or(f64::INFINITY).max(r.residuals.ladder),
            config.tolerance,
            config.lmax,
            format!("raw (a0, b0) = {raw}, table {}", r.table_entry.as_deref().unwrap_or("none")),
        )
        .with_params(params.clone())
        .with_flags(r.notes.clone());
        if case == CaseId::Case1 && r.table_entry.as_deref() != Some("G(-1,0)") {
            rec.status = super::Status::Fail;
        }
        out.push(rec);
    }

    for case in [CaseId::Case1, CaseId::Case2, CaseId::Case3] {
        let d = case_decomposition_check(case, config.lmax, config.tolerance)?;
        let printed = d.set("printed").expect("printed set");
        out.push(
            CheckRecord::numeric(
                &format!("decomposition.{}", case.to_string().to_lowercase()),
                printed.plus.residual.max(printed.minus.residual),
                config.tolerance,
                config.lmax,
                format!(
                    "Kx ± iKy vs K± with {}; exact: {}",
                    printed.params,
                    printed.plus.exact && printed.minus.exact
                ),
            )
            .with_flags(d.mismatches()),
        );
    }

    // [C, K±] needs the interior k = 3.
    let opts = CasimirOptions {
        lmax: config.lmax.max(3),
        hamiltonian_lmax: config.lmax.min(12),
        tolerance: config.tolerance,
        floor: config.casimir_floor,
    };
    for (case, a, b) in closed_cases() {
        let r = casimir_check(&a, &b, &opts)?;
        let name = case.to_string().to_lowercase();
        let params = format!("a={a}, b={b}");
        let mut flags = r.notes.clone();
        if !r.printed_invariant() {
            flags.push(format!("printed C fails: max residual {:.3e}", r.printed.max_algebra_residual()));
        }
        out.push(
            CheckRecord::numeric(
                &format!("casimir.{name}.central"),
                r.corrected.max_algebra_residual(),
                config.tolerance,
                opts.lmax,
                format!(
                    "[C, K±], [C, Kz]; printed C {}",
                    if r.printed_invariant() { "also central" } else { "not central" }
                ),
            )
            .with_params(params.clone())
            .with_flags(flags),
        );
        let mut h = CheckRecord::numeric(
            &format!("casimir.{name}.hamiltonian"),
            r.corrected.hamiltonian,
            config.casimir_floor,
            opts.hamiltonian_lmax,
            "[C, L²/2] must exceed the floor",
        )
        .with_params(params);
        h.status = super::Status::from_bool(r.not_conserved());
        out.push(h);
    }
    Ok(())
}

/// Runs the full identity suite.
pub fn run_verify(config: &RunConfig) -> Result<VerificationReport, VerifyError> {
    config.validate()?;
    let mut checks = Vec::new();
    conjugacy_checks(config, &mut checks)?;
    commutator_checks(config, &mut checks)?;
    algebra_checks(config, &mut checks)?;
    Ok(VerificationReport::new("verify", config, checks))
}
