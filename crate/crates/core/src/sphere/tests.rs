use super::generators::{l_minus_matrix, l_plus_matrix, n_minus_matrix, n_plus_matrix, nz_matrix};
use super::*;
use crate::opalg::{Generator, OperatorExpr, VectorOp};
use crate::param::{NumericParams, ParamPoly};
use proptest::prelude::*;

fn s(l: u32, m: i32) -> BasisState {
    BasisState::new(l, m)
}

fn none() -> NumericParams {
    NumericParams::new()
}

#[test]
fn n_entries_agree_with_the_quadrature_oracle() {
    let lmax = 20;
    let basis = Basis::new(lmax);
    let grid = QuadratureGrid::for_lmax(lmax);
    let cases = [
        (AngularFactor::CosTheta, nz_matrix(basis)),
        (AngularFactor::SinThetaExpPlus, n_plus_matrix(basis)),
        (AngularFactor::SinThetaExpMinus, n_minus_matrix(basis)),
    ];
    for (f, mat) in &cases {
        let mut worst = 0.0f64;
        for col in basis.states() {
            // Only the couplings a recursion can produce plus their Δm
            // neighbours; the full O(dim²) sweep belongs to the acceptance run.
            for dl in [-1i64, 0, 1] {
                for dm in [-1i64, 0, 1] {
                    let (l, m) = (col.l as i64 + dl, col.m as i64 + dm);
                    if !basis.contains(l, m) {
                        continue;
                    }
                    let row = s(l as u32, m as i32);
                    let q = quadrature_element(*f, row, col, &grid).unwrap();
                    worst = worst.max((q - mat.element(row, col)).norm());
                }
            }
        }
        assert!(worst <= 1e-12, "{f:?}: worst deviation {worst:e}");
    }
}

#[test]
fn spot_values() {
    let b = Basis::new(3);
    let nz = gen_matrix(Generator::NZ, b);
    assert!((nz.element(s(1, 0), s(0, 0)).re - 1.0 / 3f64.sqrt()).abs() < 1e-15);
    let lp = l_plus_matrix(b);
    assert!((lp.element(s(1, 1), s(1, 0)).re - 2f64.sqrt()).abs() < 1e-15);
    let lz = gen_matrix(Generator::LZ, b);
    for st in b.states() {
        assert_eq!(lz.element(st, st).re, st.m as f64);
    }
}

#[test]
fn lz_dump_at_lmax_one() {
    let lz = gen_matrix(Generator::LZ, Basis::new(1));
    let dump = lz.dump();
    assert_eq!(
        dump,
        "1 -1 1 -1 -1.0000000000000000e0 0\n1 1 1 1 1.0000000000000000e0 0\n"
    );
}

#[test]
fn block_dump_lists_the_whole_diagonal() {
    let lz = gen_matrix(Generator::LZ, Basis::new(3));
    let lines: Vec<String> = lz.dump_block(1).lines().map(String::from).collect();
    assert_eq!(
        lines,
        [
            "0 0 0 0 0 0",
            "1 -1 1 -1 -1.0000000000000000e0 0",
            "1 0 1 0 0 0",
            "1 1 1 1 1.0000000000000000e0 0",
        ]
    );
    let nz = gen_matrix(Generator::NZ, Basis::new(3));
    assert!(nz.dump_block(3).lines().count() > nz.nnz());
    assert!(nz.dump_block(1).contains("1 0 0 0 5.7735026918962"));
}

#[test]
fn generators_are_hermitian_on_the_interior() {
    let b = Basis::new(10);
    for g in Generator::ALL {
        let m = gen_matrix(g, b);
        assert!(residual_norm(&m, &m.adjoint(), 1).unwrap() <= 1e-12, "{g:?}");
    }
    let lp = l_plus_matrix(b);
    assert!(residual_norm(&lp.adjoint(), &l_minus_matrix(b), 0).unwrap() <= 1e-14);
}

#[test]
fn defining_commutators_hold_on_the_interior() {
    let ev = Evaluator::new(10);
    for g in Generator::ALL {
        for h in Generator::ALL {
            let lhs = ev.generator(g).commutator(ev.generator(h));
            let expr = OperatorExpr::gen(g).commutator(&OperatorExpr::gen(h));
            let rhs = ev.evaluate(&expr, &none()).unwrap();
            let r = residual_norm(&lhs, &rhs, 2).unwrap();
            assert!(r <= 1e-12, "[{g:?}, {h:?}] residual {r:e}");
        }
    }
}

#[test]
fn unit_vector_and_orthogonality() {
    let ev = Evaluator::new(16);
    let b = ev.basis();
    let n = VectorOp::n();
    let nn = ev.evaluate(&n.dot(&n), &none()).unwrap();
    assert!(residual_norm(&nn, &SparseOperator::identity(b), 2).unwrap() <= 1e-12);
    let nn_raw = ev.word_matrix(&[Generator::NX, Generator::NX])
        .add(&ev.word_matrix(&[Generator::NY, Generator::NY]))
        .add(&ev.word_matrix(&[Generator::NZ, Generator::NZ]));
    assert!(residual_norm(&nn_raw, &SparseOperator::identity(b), 2).unwrap() <= 1e-12);
    let nl = ev.evaluate(&n.dot(&VectorOp::l()), &none()).unwrap();
    assert!(nl.interior_frobenius(2) <= 1e-12);
}

#[test]
fn l_squared_is_diagonal() {
    let ev = Evaluator::new(8);
    let l = VectorOp::l();
    let l2 = ev.evaluate(&l.dot(&l), &none()).unwrap();
    let b = ev.basis();
    let expected = SparseOperator::from_triplets(
        b,
        b.states()
            .map(|st| (b.index(st), b.index(st), num_complex::Complex64::new((st.l * (st.l + 1)) as f64, 0.0))),
    );
    assert!(residual_norm(&l2, &expected, 0).unwrap() <= 1e-12);
}

#[test]
fn projector_shapes() {
    let b = Basis::new(16);
    assert_eq!(interior_projector(b, 0).unwrap(), SparseOperator::identity(b));
    assert_eq!(interior_projector(b, 16).unwrap().nnz(), 1);
    let p = interior_projector(b, 2).unwrap();
    let trace: f64 = p.entries().filter(|(r, c, _)| r == c).map(|e| e.2.re).sum();
    assert_eq!(trace, 225.0);
    assert_eq!(interior_projector(b, 17), Err(RepError::Range { k: 17, lmax: 16 }));
}

#[test]
fn residual_errors_and_zero() {
    let a = gen_matrix(Generator::NX, Basis::new(4));
    assert_eq!(residual_norm(&a, &a, 1).unwrap(), 0.0);
    let other = gen_matrix(Generator::NX, Basis::new(5));
    assert!(matches!(residual_norm(&a, &other, 0), Err(RepError::BasisMismatch { .. })));
}

#[test]
fn evaluate_errors() {
    let ev = Evaluator::new(1);
    let deep = OperatorExpr::word(&[Generator::NX, Generator::NY]);
    assert_eq!(
        ev.evaluate(&deep, &none()),
        Err(RepError::LmaxTooSmall { lmax: 1, needed: 2 })
    );
    let scaled = OperatorExpr::gen(Generator::LZ).scale(&ParamPoly::a());
    assert!(matches!(ev.evaluate(&scaled, &none()), Err(RepError::UnboundParam(_))));
}

#[test]
fn ladder_of_shift_operators() {
    let b = Basis::new(6);
    let report = ladder_structure(&n_plus_matrix(b));
    assert_eq!(report.delta_ms(), vec![1]);
    assert_eq!(report.dominant, Some(1));
    assert_eq!(report.leakage, 0.0);
    let report = ladder_structure(&gen_matrix(Generator::NX, b));
    assert_eq!(report.delta_ms(), vec![-1, 1]);
    assert!(report.leakage > 0.1);
}

fn word_strategy() -> impl Strategy<Value = Vec<Generator>> {
    prop::collection::vec((0usize..6).prop_map(|k| Generator::ALL[k]), 0..=6)
}

fn coefficient_strategy() -> impl Strategy<Value = (i64, i64)> {
    (-5i64..=5, 1i64..=4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn normal_form_matches_raw_products(
        words in prop::collection::vec((word_strategy(), coefficient_strategy()), 1..=3),
    ) {
        let ev = Evaluator::new(8);
        let mut raw = SparseOperator::zero(ev.basis());
        let mut expr = OperatorExpr::zero();
        let mut depth = 0usize;
        for (w, (p, q)) in &words {
            let c = *p as f64 / *q as f64;
            raw = raw.axpy(num_complex::Complex64::new(c, 0.0), &ev.word_matrix(w));
            let coeff = crate::scalar::from_rational(num_rational::BigRational::new((*p).into(), (*q).into()));
            expr = expr + OperatorExpr::word(w).scale_gauss(&coeff);
            depth = depth.max(w.iter().filter(|g| g.is_n()).count());
        }
        let nf = ev.evaluate(&expr, &none()).unwrap();
        let r = residual_norm(&nf, &raw, depth).unwrap();
        prop_assert!(r <= 1e-10, "residual {r:e}");
    }

    #[test]
    fn adjoint_is_conjugate_transpose(w in word_strategy()) {
        let ev = Evaluator::new(8);
        let e = OperatorExpr::word(&w);
        let k = w.iter().filter(|g| g.is_n()).count();
        let lhs = ev.evaluate(&e.adjoint(), &none()).unwrap();
        let rhs = ev.evaluate(&e, &none()).unwrap().adjoint();
        prop_assert!(residual_norm(&lhs, &rhs, k).unwrap() <= 1e-10);
    }
}
