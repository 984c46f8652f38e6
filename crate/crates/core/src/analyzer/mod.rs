//! The derivation chain for the raising and lowering operators built from
//! `N` and `L`.
//!
//! * [`build_j`] and [`build_k`] construct `J₁`, `J₂` and `K±` with symbolic
//!   parameters.
//! * [`derive_conjugacy_constraints`] reads `c = a - 2 - b`, `d = b` off
//!   `K₊†`.
//! * [`commutator_match`] compares `[K₊, K₋]` with its printed closed form
//!   and [`closure_conditions`] extracts the `NZ²` relations.
//! * [`enumerate_cases`], [`classify`], [`casimir_check`] and
//!   [`case_decomposition_check`] work on the closed parameter set.
//!
//! ```
//! use gl2c::analyzer::{classify, CaseId};
//! use gl2c::scalar::rat;
//!
//! let report = classify(&rat(1, 1), &rat(0, 1), 8).unwrap();
//! assert!(report.closed);
//! assert_eq!(report.case, Some(CaseId::Case1));
//! assert_eq!(report.table_entry.as_deref(), Some("G(-1,0)"));
//! ```

mod cases;
mod casimir;
pub(crate) mod classify;
mod commutator;
mod conjugacy;
mod decomposition;
mod operators;


pub use cases::{case_of, enumerate_cases, rational_roots, solve_triangular, Branch, CaseEnumeration, CaseId, CaseLabel};
pub use casimir::{casimir_check, casimir_corrected, casimir_printed, hamiltonian, CasimirForm, CasimirOptions, CasimirReport};
pub use classify::{
    classify, fit_closed_form, raw_pair, table_entry, AlgebraReport, AlgebraResiduals, ClosedFormFit, ClosureValue, Family, RawPair,
};
pub use commutator::{
    closure_conditions, closure_values, commutator_match, ladder_identity, printed_commutator, CommutatorMatch,
    LadderIdentity, MatchBranch, MatchOptions, MonomialDifference, PointResidual,
};
pub use conjugacy::{
    adjoint_identities, derive_conjugacy_constraints, AdjointIdentity, ConjugacyDerivation, ConstraintSet,
    TemplateMismatch,
};
pub use decomposition::{case_decomposition_check, case_script, DecompositionReport, ParamSetCheck, SideCheck};
pub use operators::{build_j, build_k, conjugacy_map, constrained, constrained_point, describe_params, KMatrices, Sign, Which};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A small random rational: numerator in `-9..=9`, denominator in `1..=6`.
pub(crate) fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let p: i64 = rng.gen_range(-9..=9);
    let q: i64 = rng.gen_range(1..=6);
    BigRational::new(BigInt::from(p), BigInt::from(q))
}
