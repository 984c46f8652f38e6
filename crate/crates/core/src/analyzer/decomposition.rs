use super::cases::CaseId;
use super::operators::{build_k, describe_params, Sign};
use crate::dsl::compile;
use crate::opalg::{i_op, OperatorExpr};
use crate::param::{ExactParams, NumericParams, Param, ParamPoly};
use crate::scalar::{from_rational, rat, real};
use crate::sphere::{residual_norm, Evaluator, RepError, SparseOperator};
use serde::{Deserialize, Serialize};

const CASE1: &str = "let A = i*cross(N, L) + N;\nlet Kx = i*A_y;\nlet Ky = -i*A_x;\n";
const CASE2: &str = "let A = (a + c)/2*N + N*L_z;\nlet B = i*cross(N, L) + (a - c)/2*N;\n\
                     let Kx = A_x + i*B_y;\nlet Ky = -i*(B_x + i*A_y);\n";
const CASE3: &str = "let A = N*L_z;\nlet B = i*cross(N, L) + N;\nlet Kx = A_x + i*B_y;\nlet Ky = -i*B_x + A_y;\n";

/// The `K_x`, `K_y` definitions listed for a case, as DSL bindings.
pub fn case_script(case: CaseId) -> &'static str {
    match case {
        CaseId::Case1 => CASE1,
        CaseId::Case2 => CASE2,
        CaseId::Case3 => CASE3,
    }
}

/// One of `K_x ± iK_y - K±`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SideCheck {
    pub sign: String,
    /// Normal form of the difference; `0` when it vanishes.
    pub difference: String,
    pub exact: bool,
    /// Interior residual at the sample point.
    pub residual: f64,
}

/// Both sides under one parameter assignment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamSetCheck {
    /// `printed`, `constrained` or `solver`.
    pub label: String,
    /// The assignment; parameters left out stay symbolic.
    pub params: String,
    /// Values used for the numeric residual.
    pub sample: String,
    pub plus: SideCheck,
    pub minus: SideCheck,
}

impl ParamSetCheck {
    pub fn holds(&self, tol: f64) -> bool {
        self.plus.residual <= tol && self.minus.residual <= tol
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub case: CaseId,
    pub script: String,
    pub lmax: u32,
    pub tolerance: f64,
    pub sets: Vec<ParamSetCheck>,
}

impl DecompositionReport {
    pub fn set(&self, label: &str) -> Option<&ParamSetCheck> {
        self.sets.iter().find(|s| s.label == label)
    }

    /// The listed operators recombine to `K±` under the printed parameters.
    pub fn holds_as_printed(&self) -> bool {
        self.set("printed").is_some_and(|s| s.holds(self.tolerance))
    }

    /// Sets where a side fails, as `label sign residual`.
    pub fn mismatches(&self) -> Vec<String> {
        self.sets
            .iter()
            .flat_map(|s| {
                [&s.plus, &s.minus]
                    .into_iter()
                    .filter(|side| side.residual > self.tolerance)
                    .map(move |side| format!("{} K{}: {} (residual {:.3e})", s.label, side.sign, side.difference, side.residual))
            })
            .collect()
    }
}

type Assignment = Vec<(Param, ParamPoly)>;

fn constant(n: i64, d: i64) -> ParamPoly {
    ParamPoly::constant(real(n, d))
}

/// `(label, assignment, numeric sample for what stays free)`.
fn parameter_sets(case: CaseId) -> Vec<(&'static str, Assignment, ExactParams)> {
    let none = ExactParams::new();
    match case {
        CaseId::Case1 => {
            let p = vec![(Param::A, constant(1, 1)), (Param::B, constant(0, 1)), (Param::C, constant(-1, 1)), (Param::D, constant(0, 1))];
            vec![("printed", p.clone(), none.clone()), ("constrained", p, none)]
        }
        CaseId::Case2 => {
            let sample: ExactParams = [(Param::A, from_rational(rat(5, 2))), (Param::C, from_rational(rat(-1, 2)))]
                .into_iter()
                .collect();
            let printed = vec![(Param::B, constant(1, 1)), (Param::D, constant(1, 1))];
            let mut cons = printed.clone();
            cons.push((Param::C, ParamPoly::a() - ParamPoly::int(3)));
            let a_only: ExactParams = [(Param::A, from_rational(rat(5, 2)))].into_iter().collect();
            vec![("printed", printed, sample), ("constrained", cons, a_only)]
        }
        CaseId::Case3 => {
            let with_c = |a: ParamPoly, c: ParamPoly| vec![(Param::A, a), (Param::B, constant(1, 1)), (Param::C, c), (Param::D, constant(1, 1))];
            vec![
                ("printed", with_c(constant(1, 1), constant(-1, 1)), none.clone()),
                ("constrained", with_c(constant(1, 1), constant(-2, 1)), none.clone()),
                ("solver", with_c(constant(3, 2), constant(-3, 2)), none),
            ]
        }
    }
}

fn as_map(assign: &Assignment) -> [Option<ParamPoly>; 4] {
    let mut map: [Option<ParamPoly>; 4] = Default::default();
    for (p, v) in assign {
        map[p.index()] = Some(v.clone());
    }
    map
}

fn describe(assign: &Assignment) -> String {
    assign.iter().map(|(p, v)| format!("{p}={v}")).collect::<Vec<_>>().join(", ")
}

fn side(
    ev: &Evaluator,
    sign: Sign,
    combined: &OperatorExpr,
    map: &[Option<ParamPoly>; 4],
    sample: &ExactParams,
) -> Result<SideCheck, RepError> {
    let diff = (combined - &build_k(sign)).compose_params(map);
    let residual = if diff.is_zero() {
        0.0
    } else {
        let m = ev.evaluate(&diff, &NumericParams::from_exact(sample))?;
        residual_norm(&m, &SparseOperator::zero(ev.basis()), diff.degree_n() as usize)?
    };
    Ok(SideCheck {
        sign: if sign == Sign::Plus { "+" } else { "-" }.into(),
        difference: diff.to_string(),
        exact: diff.is_zero(),
        residual,
    })
}

/// Recombines the listed `K_x`, `K_y` of a case into `K_x ± iK_y` and
/// compares with `K±` under the printed parameters, under `c = a - b - 2`,
/// and for case 3 also at the solver's `a = 3/2`.
pub fn case_decomposition_check(case: CaseId, lmax: u32, tol: f64) -> Result<DecompositionReport, RepError> {
    let script = case_script(case);
    let kx = compile(&format!("{script}Kx")).expect("case script compiles");
    let ky = compile(&format!("{script}Ky")).expect("case script compiles");
    let iky = &i_op() * &ky;
    let (plus, minus) = (&kx + &iky, &kx - &iky);
    let ev = Evaluator::new(lmax);
    let mut sets = Vec::new();
    for (label, assign, sample) in parameter_sets(case) {
        let map = as_map(&assign);
        sets.push(ParamSetCheck {
            label: label.into(),
            params: describe(&assign),
            sample: describe_params(&sample),
            plus: side(&ev, Sign::Plus, &plus, &map, &sample)?,
            minus: side(&ev, Sign::Minus, &minus, &map, &sample)?,
        });
    }
    Ok(DecompositionReport {
        case,
        script: script.into(),
        lmax,
        tolerance: tol,
        sets,
    })
}
