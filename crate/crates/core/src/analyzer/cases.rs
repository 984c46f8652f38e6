use super::conjugacy::ConstraintSet;
use super::operators::conjugacy_map;
use crate::param::{ExactParams, Param, ParamPoly};
use crate::scalar::{from_rational, rat};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseId {
    #[serde(rename = "CASE1")]
    Case1,
    #[serde(rename = "CASE2")]
    Case2,
    #[serde(rename = "CASE3")]
    Case3,
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseId::Case1 => "CASE1",
            CaseId::Case2 => "CASE2",
            CaseId::Case3 => "CASE3",
        })
    }
}

/// A case of the closed algebra, with discrepancies found while checking
/// its printed description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseLabel {
    pub id: CaseId,
    pub description: String,
    pub flags: Vec<String>,
}

/// One solution component: fixed coordinates plus free parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Branch {
    pub fixed: Vec<(Param, String)>,
    pub free: Vec<Param>,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.fixed.iter().map(|(p, v)| format!("{p}={v}")).collect();
        parts.extend(self.free.iter().map(|p| format!("{p} free")));
        f.write_str(&parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseEnumeration {
    /// Closure relations with `c = a - b - 2`, `d = b` substituted.
    pub closure: ConstraintSet,
    pub branches: Vec<Branch>,
    /// The solver's partition: `(b=0, a=1)`, `(b=1, a≠3/2)`, `(b=1, a=3/2)`.
    pub solver_cases: Vec<CaseLabel>,
    /// The cases as printed, with flags where they disagree with the solver.
    pub stated_cases: Vec<CaseLabel>,
}

/// Coefficients (lowest degree first) of `p` as a polynomial in `var`, or
/// `None` when other parameters occur or a coefficient is not real.
fn univariate(p: &ParamPoly, var: Param) -> Option<Vec<BigRational>> {
    let mut coeffs: Vec<BigRational> = Vec::new();
    for (e, c) in p.terms() {
        if !c.im.is_zero() || e.0.iter().enumerate().any(|(k, x)| k != var.index() && *x != 0) {
            return None;
        }
        let d = e.0[var.index()] as usize;
        if coeffs.len() <= d {
            coeffs.resize(d + 1, BigRational::zero());
        }
        coeffs[d] = c.re.clone();
    }
    Some(coeffs)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs().to_u64().expect("small coefficients");
    let mut out = Vec::new();
    let mut k = 1u64;
    while k * k <= n {
        if n % k == 0 {
            out.push(BigInt::from(k));
            if k * k != n {
                out.push(BigInt::from(n / k));
            }
        }
        k += 1;
    }
    out
}

fn horner(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Rational roots of a nonzero univariate polynomial, ascending.
pub fn rational_roots(coeffs: &[BigRational]) -> Vec<BigRational> {
    let mut c: Vec<BigRational> = coeffs.to_vec();
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    let mut roots = Vec::new();
    let low = c.iter().position(|x| !x.is_zero()).unwrap_or(0);
    if low > 0 {
        roots.push(BigRational::zero());
        c.drain(..low);
    }
    if c.len() > 1 {
        let lcm = c.iter().fold(BigInt::one(), |acc, x| lcm(&acc, x.denom()));
        let ints: Vec<BigInt> = c.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        for p in divisors(&ints[0]) {
            for q in divisors(ints.last().unwrap()) {
                for s in [1, -1] {
                    let cand = BigRational::new(p.clone() * s, q.clone());
                    if horner(&c, &cand).is_zero() && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    roots
}

fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    let g = gcd(a.clone(), b.clone());
    (a / &g) * b
}

fn gcd(mut a: BigInt, mut b: BigInt) -> BigInt {
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a.abs()
}

/// Solves a triangular system of polynomial equations over the rationals:
/// repeatedly picks a univariate relation, branches on its rational roots
/// and substitutes. Returns `None` if a step finds no univariate relation.
pub fn solve_triangular(relations: &[ParamPoly], vars: &[Param]) -> Option<Vec<Branch>> {
    fn go(rel: Vec<ParamPoly>, vars: &[Param], fixed: Vec<(Param, BigRational)>, out: &mut Vec<Branch>) -> Option<()> {
        let rel: Vec<ParamPoly> = rel.into_iter().filter(|r| !r.is_zero()).collect();
        if rel.iter().any(|r| r.as_constant().is_some()) {
            return Some(());
        }
        let unsolved: Vec<Param> = vars.iter().copied().filter(|v| !fixed.iter().any(|f| f.0 == *v)).collect();
        if rel.is_empty() {
            let mut fixed = fixed;
            fixed.sort_by_key(|f| f.0);
            out.push(Branch {
                fixed: fixed.into_iter().map(|(p, v)| (p, v.to_string())).collect(),
                free: unsolved,
            });
            return Some(());
        }
        let (var, coeffs) = rel
            .iter()
            .find_map(|r| unsolved.iter().find_map(|v| univariate(r, *v).map(|c| (*v, c))))?;
        for root in rational_roots(&coeffs) {
            let at: ExactParams = [(var, from_rational(root.clone()))].into_iter().collect();
            let next = rel.iter().map(|r| r.substitute(&at)).collect();
            let mut f = fixed.clone();
            f.push((var, root));
            go(next, vars, f, out)?;
        }
        Some(())
    }
    let mut out = Vec::new();
    go(relations.to_vec(), vars, Vec::new(), &mut out)?;
    Some(out)
}

/// Which case `(a, b)` falls into under the solver's partition.
pub fn case_of(a: &BigRational, b: &BigRational) -> Option<CaseId> {
    if b.is_zero() && a.is_one() {
        Some(CaseId::Case1)
    } else if b.is_one() {
        if *a == rat(3, 2) {
            Some(CaseId::Case3)
        } else {
            Some(CaseId::Case2)
        }
    } else {
        None
    }
}

/// `a + c` with `c = a - b - 2`.
fn a_plus_c(a: &BigRational, b: &BigRational) -> BigRational {
    a + a - b - BigRational::from_integer(2.into())
}

/// Enumerates the closed parameter set and compares it with the printed
/// case list.
pub fn enumerate_cases(closure: &ConstraintSet) -> CaseEnumeration {
    let reduced = closure.substitute(&conjugacy_map());
    let branches = solve_triangular(reduced.relations(), &[Param::A, Param::B]).unwrap_or_default();
    // a + c on the b = 1 branch.
    let split = ParamPoly::a().scale(&crate::scalar::real(2, 1)) - ParamPoly::int(3);
    let split_roots = univariate(&split, Param::A).map(|c| rational_roots(&c)).unwrap_or_default();
    let pure = split_roots.first().cloned().unwrap_or_else(|| rat(3, 2));

    let solver_cases = vec![
        CaseLabel {
            id: CaseId::Case1,
            description: "b=0, a=1 (a+c=0, su(1,1)-type)".into(),
            flags: vec![],
        },
        CaseLabel {
            id: CaseId::Case2,
            description: format!("b=1, a≠{pure} (a+c=2a-3≠0)"),
            flags: vec![],
        },
        CaseLabel {
            id: CaseId::Case3,
            description: format!("b=1, a={pure} (a+c=0, su(1,1)-type)"),
            flags: vec![],
        },
    ];

    let one = BigRational::one();
    let zero = BigRational::zero();
    let mut stated_cases = Vec::new();
    // Case 1: b=d=0, a=-c=1.
    let mut flags = Vec::new();
    let c1 = &one - &zero - BigRational::from_integer(2.into());
    if c1 != -one.clone() {
        flags.push(format!("a=1, b=0 gives c={c1}, not -1"));
    }
    stated_cases.push(CaseLabel {
        id: CaseId::Case1,
        description: "i) b=0, a=1; su(1,1) with a=-c=1, b=d=0".into(),
        flags,
    });
    // Case 2: b=d=1, a+c≠0; listed as b=1, a≠1.
    let mut flags = Vec::new();
    if pure != one {
        flags.push(format!(
            "the excluded point a=1 has a+c={}≠0; a+c vanishes at a={pure} instead",
            a_plus_c(&one, &one)
        ));
    }
    stated_cases.push(CaseLabel {
        id: CaseId::Case2,
        description: "ii) b=1, a≠1; u(1,1)⊕u(1) with b=d=1, a+c≠0".into(),
        flags,
    });
    // Case 3: b=d=1, a=-c=1.
    let mut flags = Vec::new();
    let c3 = &one - &one - BigRational::from_integer(2.into());
    if c3 != -one.clone() {
        flags.push(format!(
            "a=b=1 gives c=a-b-2={c3}, so a=-c=1 is impossible; a+c={}≠0 there",
            a_plus_c(&one, &one)
        ));
    }
    if pure != one {
        flags.push(format!("a+c=0 on the b=1 branch requires a={pure}"));
    }
    stated_cases.push(CaseLabel {
        id: CaseId::Case3,
        description: "iii) b=1, a=1; su(1,1) with b=d=1, a=-c=1".into(),
        flags,
    });

    CaseEnumeration {
        closure: reduced,
        branches,
        solver_cases,
        stated_cases,
    }
}

impl CaseEnumeration {
    /// Whether the branches are exactly `{b=0, a=1}` and `{b=1, a free}`.
    pub fn matches_expected_manifold(&self) -> bool {
        let has = |fixed: &[(Param, &str)], free: &[Param]| {
            self.branches.iter().any(|br| {
                br.free == free
                    && br.fixed.len() == fixed.len()
                    && fixed.iter().all(|(p, v)| br.fixed.iter().any(|(q, w)| q == p && w == v))
            })
        };
        self.branches.len() == 2
            && has(&[(Param::A, "1"), (Param::B, "0")], &[])
            && has(&[(Param::B, "1")], &[Param::A])
    }
}

