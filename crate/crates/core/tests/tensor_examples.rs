use osp12_core::linalg::{commutator, kron, q, spectrum, MatrixQ};
use osp12_core::osp::{build_irrep, casimir_q, IrrepLabel};
use osp12_core::tensor::{
    build_casimirs, build_context, build_equal_context, coproduct_pair, monomial_rank, phi_images, verify_centralizing,
    FIFTEEN_WORDS,
};

#[test]
fn pair_examples() {
    let triv = build_irrep(IrrepLabel::plus(0)).unwrap();
    let f = build_irrep(IrrepLabel::plus(1)).unwrap();
    let tf = coproduct_pair(&triv, &f).unwrap();
    assert_eq!(spectrum(&casimir_q(&tf).unwrap()).eigenvalues, [q(3, 8)]);
    let ff = coproduct_pair(&f, &f).unwrap();
    assert_eq!(ff.r, kron(&f.r, &f.r));
    assert_eq!(&ff.r * &ff.r, MatrixQ::identity(9));
    assert_eq!(spectrum(&casimir_q(&ff).unwrap()).eigenvalues, [q(-3, 8), q(1, 8), q(5, 8)]);
}

#[test]
fn context_dimensions() {
    assert_eq!(build_equal_context(IrrepLabel::plus(1)).unwrap().dim(), 27);
    assert_eq!(build_equal_context(IrrepLabel::plus(2)).unwrap().dim(), 125);
    let mixed = build_context(IrrepLabel::plus(1), IrrepLabel::minus(2), IrrepLabel::plus(0)).unwrap();
    assert_eq!(mixed.dim(), 15);
    assert!(!mixed.equal_labels());
}

#[test]
fn fundamental_triple() {
    let ctx = build_equal_context(IrrepLabel::plus(1)).unwrap();
    let cs = build_casimirs(&ctx).unwrap();
    for m in [&cs.q1, &cs.q2, &cs.q3] {
        assert_eq!(*m, MatrixQ::scalar(27, q(3, 8)));
    }
    assert_eq!(spectrum(&cs.q4).eigenvalues, [q(-5, 8), q(-1, 8), q(3, 8), q(7, 8)]);
    assert_eq!(spectrum(&cs.q13).eigenvalues, [q(-3, 8), q(1, 8), q(5, 8)]);
    let bi = phi_images(&cs).unwrap();
    assert_eq!(spectrum(&bi.x).eigenvalues, [q(-2, 1), q(0, 1), q(2, 1)]);
    let w = bi.omega().expect("equal omegas");
    assert_eq!(*w, cs.q4.scale(&q(12, 1)).add_scalar(&q(7, 2)));
    let checks = verify_centralizing(&bi, &ctx);
    assert_eq!(checks.len(), 36);
    assert!(checks.iter().all(|c| c.zero));
    assert_eq!(monomial_rank(&FIFTEEN_WORDS, &cs.q12, &cs.q23), 15);
    assert_eq!(monomial_rank(&FIFTEEN_WORDS, &cs.q12, &cs.q12), 3);
    assert_eq!(monomial_rank(&[""], &cs.q12, &cs.q23), 1);
}

#[test]
fn spin_one_triple_centralizes() {
    let ctx = build_equal_context(IrrepLabel::plus(2)).unwrap();
    let bi = phi_images(&build_casimirs(&ctx).unwrap()).unwrap();
    assert!(verify_centralizing(&bi, &ctx).iter().all(|c| c.zero));
    let w = bi.omega().unwrap();
    assert!(commutator(w, &bi.x).unwrap().is_zero());
}

#[test]
fn trivial_triple_is_scalar() {
    let ctx = build_equal_context(IrrepLabel::plus(0)).unwrap();
    let bi = phi_images(&build_casimirs(&ctx).unwrap()).unwrap();
    for (_, m) in bi.named() {
        assert!(m.as_scalar().is_some());
    }
    assert!(verify_centralizing(&bi, &ctx).iter().all(|c| c.zero));
}
