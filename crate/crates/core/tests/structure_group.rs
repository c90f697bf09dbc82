use cubic_jordan::composition::CompositionAlgebra;
use cubic_jordan::constructions::Her3;
use cubic_jordan::field::{Field, FiniteField, Rationals, Ring};
use cubic_jordan::linalg::Matrix;
use cubic_jordan::structure_group::*;
use cubic_jordan::Error;

fn albert(p: u64) -> (FiniteField, Her3<FiniteField>) {
    let f = FiniteField::prime(p).unwrap();
    let h = Her3::new(&CompositionAlgebra::zorn(&f), &[1, 1, 1]).unwrap();
    (f, h)
}

#[test]
fn sym3_identity_is_trivial() {
    let (f, h) = albert(5);
    let c = sym3_operator(&h, [0, 1, 2]).unwrap();
    assert_eq!(c.matrix, Matrix::identity(&f, 27));
}

#[test]
fn sym3_generators_over_gf5() {
    let (f, h) = albert(5);
    let c = sym3_operator(&h, [1, 2, 0]).unwrap();
    assert!(c.in_h() && c.is_automorphism());
    assert_eq!(c.order(&f, 10), Some(3));
    let t = sym3_operator(&h, [1, 0, 2]).unwrap();
    assert!(t.in_h() && t.is_automorphism());
    assert_eq!(t.order(&f, 10), Some(2));
    let e11 = h.cns.basis(0);
    assert_eq!(t.matrix.apply(&f, &e11), h.cns.basis(1));
    assert_eq!(t.matrix.apply(&f, &h.cns.basis(1)), e11);
}

#[test]
fn all_permutations_certify_in_small_characteristic() {
    for p in [2, 3, 5] {
        let (_, h) = albert(p);
        for s in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            assert!(sym3_operator(&h, s).unwrap().in_h(), "p = {p}, sigma = {s:?}");
        }
    }
}

#[test]
fn uw_scales_the_diagonal_over_q() {
    let q = Rationals;
    let h = Her3::new(&CompositionAlgebra::zorn(&q), &[q.one(), q.one(), q.one()]).unwrap();
    let w = vec![q.one(), q.from_i64(2), q.from_ratio(1, 2).unwrap()];
    let c = uw_operator(&h, &w).unwrap();
    assert!(c.in_h());
    assert!(!c.fixes_unit);
    assert_eq!(c.matrix.apply(&q, &h.cns.basis(1)), h.cns.basis(1).iter().map(|a| q.mul(a, &q.from_i64(4))).collect::<Vec<_>>());
    assert_eq!(c.matrix.apply(&q, &h.cns.basis(2)), h.cns.basis(2).iter().map(|a| q.mul(a, &q.from_ratio(1, 4).unwrap())).collect::<Vec<_>>());
}

#[test]
fn uw_with_square_one_entries_is_an_automorphism_but_not_trivial() {
    let (f, h) = albert(5);
    let m1 = f.neg(&f.one());
    let c = uw_operator(&h, &[1, m1, m1]).unwrap();
    assert!(c.fixes_unit && c.is_automorphism());
    assert_ne!(c.matrix, Matrix::identity(&f, 27));
    let v1 = h.slot(0).start;
    assert_eq!(c.matrix.apply(&f, &h.cns.basis(v1)), h.cns.basis(v1));
    let v2 = h.slot(1).start;
    assert_eq!(c.matrix.apply(&f, &h.cns.basis(v2)), h.cns.basis(v2).iter().map(|a| f.neg(a)).collect::<Vec<_>>());
}

#[test]
fn uw_rejects_product_not_one() {
    let (_, h) = albert(5);
    assert!(matches!(uw_operator(&h, &[1, 2, 2]), Err(Error::ProductNotOne)));
}

#[test]
fn uw_is_multiplicative_over_gf5() {
    let (f, h) = albert(5);
    let triples = norm_one_triples(&f).unwrap();
    assert_eq!(triples.len(), 16);
    let ops: Vec<_> = triples.iter().map(|w| uw_operator(&h, w).unwrap()).collect();
    for (w, a) in triples.iter().zip(&ops) {
        for (v, b) in triples.iter().zip(&ops) {
            let wv: Vec<u64> = (0..3).map(|i| f.mul(&w[i], &v[i])).collect();
            let k = triples.iter().position(|t| *t == wv).unwrap();
            assert_eq!(a.matrix.mul(&f, &b.matrix), ops[k].matrix);
        }
    }
}

#[test]
fn products_of_certified_elements_recertify() {
    let (f, h) = albert(5);
    let gens = vec![
        sym3_operator(&h, [1, 2, 0]).unwrap(),
        sym3_operator(&h, [1, 0, 2]).unwrap(),
        uw_operator(&h, &[2, 3, 1]).unwrap(),
        uw_operator(&h, &[4, 4, 1]).unwrap(),
    ];
    for a in &gens {
        for b in &gens {
            let c = a.compose(&h, b).unwrap();
            assert!(c.in_h(), "{}", c.label);
        }
    }
    let _ = f;
}

#[test]
fn su3_over_gf4_transpose_gives_an_outer_automorphism() {
    let k = FiniteField::new(2, 2, None).unwrap();
    let d = UnitaryDatum::standard(&k, 3).unwrap();
    let psi = AntiAutomorphism::transpose(&d);
    let r = outer_from_antiauto(&d, &psi, 10_000_000).unwrap();
    assert_eq!(r.order, 216);
    assert_eq!(r.pairs_checked, 216 * 216);
    assert_eq!(r.phi_involutive, Some(true));
    assert_eq!(r.verdict, OuterVerdict::Outer);
}

fn brute_force_is_inner(d: &UnitaryDatum, psi: &AntiAutomorphism) -> bool {
    let group = d.enumerate_su(1_000_000).unwrap();
    let phi: Vec<Vec<u64>> = group.iter().map(|g| d.inverse(&psi.apply(&d.k, g)).unwrap()).collect();
    group.iter().any(|h| {
        let hi = d.inverse(h).unwrap();
        group.iter().zip(&phi).all(|(g, pg)| d.mul(&d.mul(h, g), &hi) == *pg)
    })
}

#[test]
fn verdict_matches_full_comparison() {
    for (p, e, n) in [(2u64, 2u32, 2usize), (2, 2, 3), (3, 2, 2), (2, 4, 2)] {
        let k = FiniteField::new(p, e, None).unwrap();
        let d = UnitaryDatum::standard(&k, n).unwrap();
        let psi = AntiAutomorphism::transpose(&d);
        let r = outer_from_antiauto(&d, &psi, 10_000_000).unwrap();
        let inner = brute_force_is_inner(&d, &psi);
        assert_eq!(matches!(r.verdict, OuterVerdict::Inner { .. }), inner, "GF({p}^{e}), d = {n}");
        assert!(!matches!(r.verdict, OuterVerdict::NotAutomorphism { .. }));
    }
}
