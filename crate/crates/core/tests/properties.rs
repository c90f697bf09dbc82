use std::sync::OnceLock;

use proptest::prelude::*;

use cubic_jordan::composition::CompositionAlgebra;
use cubic_jordan::constructions::{first_tits, her3_rescale, Her3};
use cubic_jordan::etale::CubicEtale;
use cubic_jordan::field::{Field, FiniteField, Rationals, Ring};
use cubic_jordan::skolem_noether::spliet_delta;

fn small_fields() -> &'static [FiniteField] {
    static FIELDS: OnceLock<Vec<FiniteField>> = OnceLock::new();
    FIELDS.get_or_init(|| {
        [(3, 2), (2, 4), (5, 2), (7, 1)].iter().map(|&(p, k)| FiniteField::new(p, k, None).unwrap()).collect()
    })
}

fn albert7() -> &'static Her3<FiniteField> {
    static H: OnceLock<Her3<FiniteField>> = OnceLock::new();
    H.get_or_init(|| {
        let f = FiniteField::prime(7).unwrap();
        Her3::new(&CompositionAlgebra::zorn(&f), &[1, 3, 5]).unwrap()
    })
}

fn vec_mod(n: usize, q: u64) -> impl Strategy<Value = Vec<u64>> {
    proptest::collection::vec(0..q, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(which in 0usize..4, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let f = &small_fields()[which];
        let q = f.order();
        let (a, b, c) = (f.element(a % q), f.element(b % q), f.element(c % q));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        prop_assert_eq!(f.add(&f.sub(&a, &b), &b), a);
        prop_assert_eq!(f.pow(&a, q), a);
        if !f.is_zero(&a) {
            prop_assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
        }
    }

    #[test]
    fn zorn_norm_is_multiplicative(x in vec_mod(8, 11), y in vec_mod(8, 11)) {
        let f = FiniteField::prime(11).unwrap();
        let z = CompositionAlgebra::zorn(&f);
        prop_assert_eq!(z.norm(&z.mul(&x, &y)), f.mul(&z.norm(&x), &z.norm(&y)));
    }

    #[test]
    fn albert_u_operator_scales_the_norm(x in vec_mod(27, 7), y in vec_mod(27, 7)) {
        let h = albert7();
        let f = h.field();
        let nx = h.cns.norm(&x);
        let lhs = h.cns.norm(&h.cns.u(&x, &y));
        prop_assert_eq!(lhs, f.mul(&f.mul(&nx, &nx), &h.cns.norm(&y)));
    }

    #[test]
    fn albert_adjoint_identity(x in vec_mod(27, 7)) {
        let h = albert7();
        let f = h.field();
        let xss = h.cns.sharp(&h.cns.sharp(&x));
        let nx = h.cns.norm(&x);
        prop_assert_eq!(xss, x.iter().map(|c| f.mul(&nx, c)).collect::<Vec<_>>());
    }

    #[test]
    fn spliet_delta_is_the_discriminant(u in proptest::collection::vec(-6i64..6, 3), an in -5i64..5, ad in 1i64..4) {
        let q = Rationals;
        let e = CubicEtale::split(&q);
        let u0: Vec<_> = u.iter().map(|&c| q.from_i64(c)).collect();
        let alpha = q.from_ratio(an, ad).unwrap();
        let j = first_tits(&e.assoc, &q.one()).unwrap();
        let y = j.elem(&u0, &e.scalar(&alpha), &[q.zero(), q.zero(), q.zero()]);
        // x³ + b x² + c x + d with b = −T(y), c = T(y♯), d = −N(y)
        let b = q.neg(&j.cns.lin_trace(&y));
        let c = j.cns.lin_trace(&j.cns.sharp(&y));
        let d = q.neg(&j.cns.norm(&y));
        let m = |xs: &[&_]| xs.iter().fold(q.one(), |acc, x| q.mul(&acc, x));
        let k = |n: i64| q.from_i64(n);
        let disc = q.sum([
            m(&[&b, &b, &c, &c]),
            q.neg(&m(&[&k(4), &c, &c, &c])),
            q.neg(&m(&[&k(4), &b, &b, &b, &d])),
            q.neg(&m(&[&k(27), &d, &d])),
            m(&[&k(18), &b, &c, &d]),
        ].iter());
        prop_assert_eq!(spliet_delta(&e, &u0, &alpha), disc);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn her3_rescale_certifies(lambda in 1u64..13, g in proptest::collection::vec(1u64..13, 3)) {
        let f = FiniteField::prime(13).unwrap();
        let c = CompositionAlgebra::split_quaternion(&f);
        prop_assert!(her3_rescale(&c, &g, &lambda).unwrap().is_isomorphism());
    }
}
