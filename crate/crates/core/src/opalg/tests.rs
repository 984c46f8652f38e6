use super::*;
use crate::param::{ExactParams, Param, ParamPoly};
use crate::scalar::{imag_unit, real};
use proptest::prelude::*;
use Generator::*;

fn g(x: Generator) -> OperatorExpr {
    OperatorExpr::gen(x)
}

fn i() -> OperatorExpr {
    i_op()
}

fn k_plus() -> OperatorExpr {
    let n = VectorOp::n();
    let cross = n.cross(&VectorOp::l());
    &(&(&i() * &cross.plus()) + &(&OperatorExpr::param(Param::A) * &n.plus()))
        + &(&OperatorExpr::param(Param::B) * &(&n.plus() * &g(LZ)))
}

#[test]
fn lx_ny_reorders_with_axiom() {
    let lhs = OperatorExpr::word(&[LX, NY]);
    let rhs = &(&g(NY) * &g(LX)) + &(&i() * &g(NZ));
    assert_eq!(lhs, rhs);
    assert_eq!(lhs.to_string(), "(1) NY*LX + (i) NZ");
}

#[test]
fn unit_norm_collapses_to_one() {
    let n = VectorOp::n();
    assert_eq!(n.dot(&n), OperatorExpr::one());
}

#[test]
fn angular_momentum_commutator() {
    assert_eq!(g(LX).commutator(&g(LY)), &i() * &g(LZ));
    assert_eq!(g(LY).commutator(&g(LZ)), &i() * &g(LX));
    assert_eq!(g(LZ).commutator(&g(LX)), &i() * &g(LY));
    assert!(g(LZ).commutator(&g(LZ)).is_zero());
}

#[test]
fn nz_squared_and_lz_nx() {
    let expected = &(&OperatorExpr::one() - &OperatorExpr::word(&[NX, NX])) - &OperatorExpr::word(&[NY, NY]);
    assert_eq!(&g(NZ) * &g(NZ), expected);
    assert_eq!(&g(LZ) * &g(NX), &OperatorExpr::word(&[NX, LZ]) + &(&i() * &g(NY)));
}

#[test]
fn addition_collects_like_terms() {
    let a = &OperatorExpr::param(Param::A) * &g(NX);
    let b = &OperatorExpr::param(Param::B) * &g(NX);
    assert_eq!(&a + &OperatorExpr::zero(), a);
    let sum = &a + &b;
    assert_eq!(
        sum.coefficient_of(&Monomial::generator(NX), Convention::Normal),
        &ParamPoly::a() + &ParamPoly::b()
    );
    assert_eq!(sum.len(), 1);
}

#[test]
fn adjoint_of_cross_component_shifts_by_n() {
    // (i (N×L)_x)† = -i (N×L)_x - 2 N_x
    let cross_x = VectorOp::n().cross(&VectorOp::l()).x().clone();
    let lhs = (&i() * &cross_x).adjoint();
    let rhs = &(&(-&i()) * &cross_x) - &g(NX).scale(&ParamPoly::int(2));
    assert_eq!(lhs, rhs);
    assert_eq!(g(NX).adjoint(), g(NX));
}

#[test]
fn substitution_examples() {
    let kp = k_plus();
    let mut v = ExactParams::new();
    v.insert(Param::A, real(1, 1));
    v.insert(Param::B, real(0, 1));
    let n = VectorOp::n();
    let expected = &(&i() * &n.cross(&VectorOp::l()).plus()) + &n.plus();
    assert_eq!(kp.substitute_params(&v).unwrap(), expected);
    assert!(OperatorExpr::zero().substitute_params(&v).unwrap().is_zero());

    let b = OperatorExpr::param(Param::B);
    let coeff = &b * &(&OperatorExpr::one() - &b);
    let mut half = ExactParams::new();
    half.insert(Param::B, real(1, 2));
    assert_eq!(coeff.substitute_params(&half).unwrap(), OperatorExpr::scalar(real(1, 4)));
}

#[test]
fn substitution_reports_missing_parameter() {
    let err = k_plus().substitute_params(&ExactParams::new()).unwrap_err();
    assert_eq!(err.0, Param::A);
}

#[test]
fn coefficient_queries() {
    assert!(OperatorExpr::zero()
        .coefficient_of(&Monomial::generator(LZ), Convention::Normal)
        .is_zero());
    // i(N×L)_+ contributes +NX·LZ through -i·i(N×L)_y; b N_+ LZ adds b.
    let nx_lz = Monomial::new([1, 0, 0], [0, 0, 1]);
    assert_eq!(
        k_plus().coefficient_of(&nx_lz, Convention::Normal),
        &ParamPoly::one() + &ParamPoly::b()
    );
}

#[test]
fn pre_elimination_restores_nz_squared() {
    let nz2 = &g(NZ) * &g(NZ);
    let e = &(&nz2 * &g(LZ)).scale(&ParamPoly::b()) + &OperatorExpr::param(Param::A);
    let pre = e.pre_elimination();
    assert_eq!(pre.coefficient(&[0, 0, 2, 0, 0, 1]), ParamPoly::b());
    assert_eq!(pre.coefficient(&[0, 0, 0, 0, 0, 0]), ParamPoly::a());
    assert!(pre.coefficient(&[2, 0, 0, 0, 0, 1]).is_zero());
    assert_eq!(pre.terms().count(), 2);
}

#[test]
fn degrees() {
    assert_eq!(g(LZ).degree_n(), 0);
    assert_eq!(k_plus().degree_n(), 1);
    assert_eq!(OperatorExpr::one().degree_n(), 0);
}

#[test]
fn n_dot_l_is_central() {
    let c = n_dot_l();
    for x in Generator::ALL {
        assert!(c.commutator(&g(x)).is_zero(), "N·L fails to commute with {x}");
    }
}

#[test]
fn text_and_json_round_trip() {
    let e = &k_plus() + &OperatorExpr::scalar(imag_unit() + real(1, 3));
    let text = e.to_string();
    assert_eq!(text.parse::<OperatorExpr>().unwrap(), e);
    let json = serde_json::to_string(&e).unwrap();
    assert_eq!(serde_json::from_str::<OperatorExpr>(&json).unwrap(), e);
    assert_eq!("0".parse::<OperatorExpr>().unwrap(), OperatorExpr::zero());
    assert!("(1) NZ^2".parse::<OperatorExpr>().is_err());
}

// ---- property suites -------------------------------------------------------

fn arb_gen() -> impl Strategy<Value = Generator> {
    (0usize..6).prop_map(|k| Generator::ALL[k])
}

fn arb_coeff() -> impl Strategy<Value = ParamPoly> {
    (-4i64..=4, 1i64..=3, -2i64..=2, 0usize..3).prop_map(|(n, d, im, p)| {
        let c = ParamPoly::constant(real(n, d) + imag_unit() * real(im, 1));
        match p {
            0 => c,
            1 => &c * &ParamPoly::a(),
            _ => &c * &ParamPoly::b(),
        }
    })
}

fn arb_raw(max_len: usize, max_terms: usize) -> impl Strategy<Value = Vec<(ParamPoly, Vec<Generator>)>> {
    prop::collection::vec((arb_coeff(), prop::collection::vec(arb_gen(), 0..=max_len)), 1..=max_terms)
}

fn build(raw: &[(ParamPoly, Vec<Generator>)]) -> OperatorExpr {
    OperatorExpr::normal_form(raw.iter().map(|(c, w)| (c, w.as_slice())))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normal_form_is_idempotent(raw in arb_raw(8, 3)) {
        let e = build(&raw);
        let words: Vec<(ParamPoly, Vec<Generator>)> =
            e.terms().map(|(m, c)| (c.clone(), m.word())).collect();
        prop_assert_eq!(build(&words), e);
    }

    #[test]
    fn adjoint_is_an_involution(raw in arb_raw(6, 3)) {
        let e = build(&raw);
        prop_assert_eq!(e.adjoint().adjoint(), e);
    }

    #[test]
    fn adjoint_reverses_products(x in arb_raw(3, 2), y in arb_raw(3, 2)) {
        let (a, b) = (build(&x), build(&y));
        prop_assert_eq!((&a * &b).adjoint(), &b.adjoint() * &a.adjoint());
    }

    #[test]
    fn jacobi_identity(x in arb_raw(3, 2), y in arb_raw(3, 2), z in arb_raw(2, 2)) {
        let (a, b, c) = (build(&x), build(&y), build(&z));
        let j = &(&a.commutator(&b).commutator(&c) + &b.commutator(&c).commutator(&a))
            + &c.commutator(&a).commutator(&b);
        prop_assert!(j.is_zero());
    }

    #[test]
    fn leibniz_rule(x in arb_raw(3, 2), y in arb_raw(3, 2), z in arb_raw(2, 2)) {
        let (a, b, c) = (build(&x), build(&y), build(&z));
        let lhs = a.commutator(&(&b * &c));
        let rhs = &(&a.commutator(&b) * &c) + &(&b * &a.commutator(&c));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiplication_is_associative(x in arb_raw(3, 2), y in arb_raw(3, 2), z in arb_raw(3, 2)) {
        let (a, b, c) = (build(&x), build(&y), build(&z));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn canonical_text_round_trips(raw in arb_raw(5, 3)) {
        let e = build(&raw);
        prop_assert_eq!(e.to_string().parse::<OperatorExpr>().unwrap(), e);
    }
}

#[test]
fn jacobi_on_every_generator_triple() {
    for x in Generator::ALL {
        for y in Generator::ALL {
            for z in Generator::ALL {
                let (a, b, c) = (g(x), g(y), g(z));
                let j = &(&a.commutator(&b).commutator(&c) + &b.commutator(&c).commutator(&a))
                    + &c.commutator(&a).commutator(&b);
                assert!(j.is_zero(), "Jacobi fails on {x},{y},{z}");
            }
        }
    }
}
