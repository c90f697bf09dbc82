use std::sync::Arc;

use cubic_jordan::assoc::AssocCubic;
use cubic_jordan::composition::CompositionAlgebra;
use cubic_jordan::constructions::{etale_tits, mat3_identification, Her3};
use cubic_jordan::etale::{CubicEtale, EtaleTensor, QuadraticEtale};
use cubic_jordan::field::{Field, FiniteField, Rationals, Ring};
use cubic_jordan::linalg::{rank_of, Matrix};
use cubic_jordan::skolem_noether::*;
use cubic_jordan::Error;

fn gf3_instance() -> (FiniteField, CubicEtale<FiniteField>, QuadraticEtale<FiniteField>) {
    let f = FiniteField::prime(3).unwrap();
    let e = CubicEtale::from_poly(&f, &[1, 2, 0]).unwrap();
    let l = QuadraticEtale::from_poly(&f, &[1, 0]).unwrap();
    (f, e, l)
}

fn norm_one(e: &CubicEtale<FiniteField>) -> Vec<Vec<u64>> {
    let f = e.field();
    e.units().into_iter().filter(|w| f.is_one(&e.norm(w))).collect()
}

#[test]
fn imcri_from_automorphism_data() {
    let (f, e, l) = gf3_instance();
    let ctx = EtaleContext::new(&e, &l);
    let phi = &e.automorphisms().unwrap()[1];
    let psi = &l.automorphisms()[1];
    let (u1, b1) = (vec![2, 0, 0], vec![1, 1]);
    assert_eq!(e.norm(&u1), l.norm(&b1));
    let y = ctx.t.units()[17].clone();
    let (u, b) = iscri_target(&ctx, &u1, &b1, phi, psi, &y).unwrap();
    let src = etale_tits(&e, &l, &u1, &b1).unwrap();
    let dst = etale_tits(&e, &l, &u, &b).unwrap();
    let c = imcri_build(&src, &dst, phi, psi, &y).unwrap();
    assert!(c.is_isomorphism());
    assert_eq!(c.cert.matrix.apply(&f, &src.cns.base), dst.cns.base);
    let c = norm_one(&e).into_iter().find(|c| *c != e.one()).unwrap();
    let wrong = etale_tits(&e, &l, &e.mul(&u, &c), &b).unwrap();
    assert!(matches!(imcri_build(&src, &wrong, phi, psi, &y), Err(Error::CompatibilityViolation(_))));
}

#[test]
fn iscri_scalar_isotopy() {
    let f = FiniteField::prime(5).unwrap();
    let e = CubicEtale::split(&f);
    let l = QuadraticEtale::from_poly(&f, &[2, 0]).unwrap();
    let ctx = EtaleContext::new(&e, &l);
    let phi = Matrix::scalar(&f, 3, &2);
    let psi = Matrix::identity(&f, 2);
    let y = ctx.t.one();
    let (u, b) = iscri_target(&ctx, &e.one(), &l.one(), &phi, &psi, &y).unwrap();
    assert_eq!((u.clone(), b.clone()), (e.one(), l.one()));
    let j = etale_tits(&e, &l, &u, &b).unwrap();
    let c = iscri_build(&j, &j, &phi, &psi, &y).unwrap();
    assert!(c.cert.is_isotopy());
    assert!(!c.is_isomorphism());
}

#[test]
fn etale_isotopies_count() {
    let (_, e, _) = gf3_instance();
    let isos = etale_isotopies(&e).unwrap();
    assert_eq!(isos.len(), e.units().len() * 3);
    assert!(isos.iter().all(|m| is_etale_isotopy(&e, m)));
}

#[test]
fn norm_membership_gf3_every_norm_one_is_a_norm() {
    let (_, e, l) = gf3_instance();
    let t = EtaleTensor::new(&e, &l);
    let ws = norm_one(&e);
    assert!(!ws.is_empty());
    for w in ws {
        let c = norm_membership(&e, &l, &w, ENUMERATION_CAP).unwrap();
        let NormDecision::Trivial { witness } = &c.decision else { panic!("{:?}", c.decision) };
        assert_eq!(t.n_l(witness), w);
    }
}

#[test]
fn norm_membership_errors() {
    let (_, e, l) = gf3_instance();
    assert!(matches!(norm_membership(&e, &l, &[2, 0, 0], ENUMERATION_CAP), Err(Error::PreconditionViolation(_))));
    let f = FiniteField::prime(17).unwrap();
    let e = CubicEtale::split(&f);
    let l = QuadraticEtale::split(&f);
    assert!(matches!(norm_membership(&e, &l, &e.one(), ENUMERATION_CAP), Err(Error::BudgetExceeded(_))));
}

#[test]
fn sign_obstruction_needs_a_definite_form() {
    let q = Rationals;
    let e = CubicEtale::split(&q);
    let w = vec![q.from_i64(-1), q.from_i64(-1), q.one()];
    let definite = QuadraticEtale::from_poly(&q, &[q.one(), q.zero()]).unwrap();
    assert_eq!(norm_membership(&e, &definite, &w, ENUMERATION_CAP).unwrap().is_trivial(), Some(false));
    let indefinite = QuadraticEtale::from_poly(&q, &[q.from_i64(-2), q.zero()]).unwrap();
    assert_eq!(norm_membership(&e, &indefinite, &w, ENUMERATION_CAP).unwrap().is_trivial(), None);
}

#[test]
fn nornor_witnesses() {
    let (f, e, l) = gf3_instance();
    let t = EtaleTensor::new(&e, &l);
    assert_eq!(nornor_witness(&e, &l, &t.one(), ENUMERATION_CAP).unwrap(), t.one());
    let i = vec![0, 1];
    assert!(f.is_one(&l.norm(&i)));
    let y = t.embed_l(&i);
    let c = t.norm_e(&y);
    assert_ne!(c, l.one());
    let y2 = nornor_witness(&e, &l, &y, ENUMERATION_CAP).unwrap();
    assert_eq!(t.norm_e(&y2), c);
    assert_eq!(t.n_l(&y2), e.one());
    let bad = t.embed_l(&[1, 1]);
    assert!(matches!(nornor_witness(&e, &l, &bad, ENUMERATION_CAP), Err(Error::PreconditionViolation(_))));
}

fn irreducible_cubic(f: &FiniteField) -> [u64; 3] {
    let q = f.order();
    for idx in 0..q * q * q {
        let c = [idx % q, (idx / q) % q, idx / (q * q)];
        let c = [f.element(c[0]), f.element(c[1]), f.element(c[2])];
        let rootless = f.elements().iter().all(|x| {
            let x2 = f.mul(x, x);
            let v = f.add(&f.add(&f.mul(&x2, x), &f.mul(&c[2], &x2)), &f.add(&f.mul(&c[1], x), &c[0]));
            !f.is_zero(&v)
        });
        if rootless {
            return c;
        }
    }
    panic!("no irreducible cubic");
}

#[test]
fn etfim_over_gf4_with_cubic_field() {
    let f = FiniteField::new(2, 2, None).unwrap();
    let e = CubicEtale::from_poly(&f, &irreducible_cubic(&f)).unwrap();
    assert_eq!(e.units().len(), 63);
    for a in f.units() {
        for a2 in f.units() {
            let v = etfim_check(&e, &a, &a2).unwrap();
            let EtfimVerdict::Equivalent { epsilon, witness } = v else { panic!("not equivalent") };
            let a2e = if epsilon == 1 { f.inv(&a2).unwrap() } else { a2 };
            assert_eq!(e.norm(&witness), f.mul(&a, &a2e));
        }
    }
}

#[test]
fn etfim_split_and_errors() {
    let f = FiniteField::new(2, 2, None).unwrap();
    let e = CubicEtale::split(&f);
    for a in f.units() {
        assert!(matches!(etfim_check(&e, &a, &f.one()).unwrap(), EtfimVerdict::Equivalent { .. }));
    }
    assert!(matches!(etfim_check(&e, &0, &1), Err(Error::InvalidMu)));
    let q = Rationals;
    let eq = CubicEtale::split(&q);
    assert!(matches!(etfim_check(&eq, &q.one(), &q.from_i64(2)), Err(Error::Unknown(_))));
}

#[test]
fn twisting_the_initial_embedding() {
    let (f, e, l) = gf3_instance();
    let j = etale_tits(&e, &l, &e.one(), &l.one()).unwrap();
    let i = initial_embedding(&e, &j).unwrap();
    assert_eq!(i.kind, EmbeddingKind::Isomorphic);
    let id = Matrix::identity(&f, j.dim());
    for w in norm_one(&e) {
        let i2 = i.twist(&w).unwrap();
        let expect = if w == e.one() { Equivalence::StronglyEquivalent } else { Equivalence::WeaklyEquivalent };
        assert_eq!(weak_equivalence_check(&i, &i2, &w, &id), expect);
    }
    assert!(matches!(weak_equivalence_check(&i, &i, &[2, 0, 0], &id), Equivalence::Rejected(_)));
}

#[test]
fn u_operator_composition_is_strongly_equivalent() {
    let (f, e, l) = gf3_instance();
    let j = etale_tits(&e, &l, &e.one(), &l.one()).unwrap();
    let i = initial_embedding(&e, &j).unwrap();
    let p = (3..j.dim())
        .map(|k| {
            let mut p = j.cns.base.clone();
            p[k] = f.add(&p[k], &1);
            p
        })
        .find(|p| !f.is_zero(&j.cns.norm(p)))
        .unwrap();
    let up = j.cns.u_matrix(&p);
    let up_inv = up.inverse(&f).expect("p is invertible");
    let i2 = i.compose(&up).unwrap();
    assert_eq!(weak_equivalence_check(&i, &i2, &e.one(), &up_inv), Equivalence::StronglyEquivalent);
    let id = Matrix::identity(&f, j.dim());
    if i2.matrix != i.matrix {
        assert!(matches!(weak_equivalence_check(&i, &i2, &e.one(), &id), Equivalence::Rejected(_)));
    }
}

#[test]
fn twists_compose_multiplicatively() {
    let (_, e, l) = gf3_instance();
    let j = etale_tits(&e, &l, &e.one(), &l.one()).unwrap();
    let i = initial_embedding(&e, &j).unwrap();
    let ws = norm_one(&e);
    let t = EtaleTensor::new(&e, &l);
    for (w, v) in ws.iter().zip(ws.iter().rev()).take(6) {
        let (iw, cw) = norm_class_of_twist(&i, &l, w, ENUMERATION_CAP).unwrap();
        let (iwv, cwv) = norm_class_of_twist(&iw, &l, v, ENUMERATION_CAP).unwrap();
        let (direct, _) = norm_class_of_twist(&i, &l, &e.mul(w, v), ENUMERATION_CAP).unwrap();
        assert_eq!(iwv.matrix, direct.matrix);
        let (NormDecision::Trivial { witness: yw }, NormDecision::Trivial { witness: yv }) = (&cw.decision, &cwv.decision)
        else {
            panic!("norm classes over a finite field are trivial");
        };
        assert_eq!(t.n_l(&t.mul(yw, yv)), e.mul(w, v));
    }
}

#[test]
fn spliet_pair_generates_mat3() {
    let f = FiniteField::prime(5).unwrap();
    let e = CubicEtale::split(&f);
    let r = spliet_alpha(&e, &[0, 1, 2], 100).unwrap();
    assert!(!f.is_zero(&r.delta_y));
    assert_eq!(r.delta_y, spliet_delta(&e, &[0, 1, 2], &r.alpha));
    assert!(is_etale_subalgebra(&r.j.cns, &r.y));
    let iso = mat3_identification(&f).unwrap();
    let y = iso.cert.matrix.apply(&f, &r.y);
    let j = AssocCubic::mat3(&f).cns().unwrap();
    let x = vec![0, 0, 0, 0, 1, 0, 0, 0, 2];
    let rep = generated_subalgebra(&j, &x, &y);
    assert!(rep.is_full(9));
    assert_eq!(rank_of(&f, &rep.elements), 9);
    assert!(!f.is_zero(&rep.gram_det));
}

#[test]
fn spliet_rejects_a_repeated_root() {
    let f = FiniteField::prime(5).unwrap();
    let e = CubicEtale::split(&f);
    assert!(matches!(spliet_alpha(&e, &[1, 1, 2], 100), Err(Error::NoGenerator)));
}

#[test]
fn random_pair_generates_albert() {
    let f = FiniteField::prime(5).unwrap();
    let h = Her3::new(&CompositionAlgebra::zorn(&f), &[1, 1, 1]).unwrap();
    let j = Arc::clone(&h.cns);
    let (x, x2, rep) = random_generating_pair(&j, 11, 50).unwrap();
    assert_eq!(rep.dim, 9);
    let again = generated_subalgebra(&j, &x, &x2);
    assert_eq!(rank_of(&f, &again.elements), 9);
    assert_eq!(again.gram_det, rep.gram_det);
    let (x3, _, _) = random_generating_pair(&j, 11, 50).unwrap();
    assert_eq!(x3, x);
}

#[test]
fn builder_sweep_over_gf2() {
    let f = FiniteField::prime(2).unwrap();
    let e = CubicEtale::from_poly(&f, &[1, 1, 0]).unwrap();
    let l = QuadraticEtale::from_poly(&f, &[1, 1]).unwrap();
    let s = exhaustive::sweep_builders(&e, &l, false).unwrap();
    assert!(s.passed(), "{:?}", s.failures);
    assert_eq!(s.checked, s.isomorphisms);
    assert_eq!(exhaustive::sweep_builders_jobs(&e, &l, false, 2).unwrap(), s);
}
