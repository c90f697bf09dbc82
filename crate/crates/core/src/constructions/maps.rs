//! Explicit isomorphisms between the constructions, each verified through
//! `certify_map`.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::assoc::AssocCubic;
use crate::composition::CompositionAlgebra;
use crate::cubic_norm::{certify_map, Cns, IsotopyCertificate};
use crate::error::{Error, Result};
use crate::etale::{CubicEtale, QuadraticEtale};
use crate::field::{fmt_vec, Field};
use crate::linalg::{same_span, Matrix};

use super::her3::Her3;
use super::involution::InvolutionAlgebra;
use super::tits::{etale_tits, first_tits, second_tits};

/// A linear map between two cubic norm structures with its verdict.
#[derive(Clone, Debug)]
pub struct MapCertificate<F: Field> {
    pub source: Arc<Cns<F>>,
    pub target: Arc<Cns<F>>,
    pub cert: IsotopyCertificate<F>,
}

impl<F: Field> MapCertificate<F> {
    pub fn is_isomorphism(&self) -> bool {
        self.cert.is_isomorphism()
    }

    pub fn to_json(&self) -> Value {
        let f = &self.source.field;
        json!({
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "certificate": self.cert.to_json(f),
        })
    }
}

fn expect_isomorphism<F: Field>(src: Arc<Cns<F>>, dst: Arc<Cns<F>>, m: &Matrix<F::Elem>, what: &str) -> Result<MapCertificate<F>> {
    let cert = certify_map(&src, &dst, m)?;
    if !cert.is_isomorphism() {
        return Err(Error::Inconsistent(format!(
            "{what} is not an isomorphism: {}",
            cert.reason.clone().unwrap_or_else(|| cert.kind.as_str().into())
        )));
    }
    Ok(MapCertificate { source: src, target: dst, cert })
}

/// R̂_p : J(K,B,τ,u,μ)^(p) → J(K,B,τ^(p),p^♯u,N_B(p)μ), v₀ + vj ↦ v₀p + (p⁻¹vp)j.
pub fn setis_map<F: Field>(
    datum: &InvolutionAlgebra<F>,
    u: &[F::Elem],
    mu: &[F::Elem],
    p: &[F::Elem],
) -> Result<MapCertificate<F>> {
    let f = datum.field();
    let b = &datum.b;
    if !datum.is_nonsingular() {
        return Err(Error::PreconditionViolation(format!("{} is singular", datum.label)));
    }
    let j = second_tits(datum, u, mu)?;
    let pj = j.elem(p, &vec![f.zero(); b.dim()])?;
    let p_inv = b
        .inverse(p)
        .ok_or_else(|| Error::NotInvertible(format!("p = {} is not invertible", fmt_vec(f, p))))?;
    let src = Arc::new(j.cns.isotope(&pj)?);

    let twisted = datum.twist(p)?;
    let hp: Vec<_> = datum.h_basis.iter().map(|h| b.mul(h, p)).collect();
    if !same_span(f, &twisted.h_basis, &hp) {
        return Err(Error::Inconsistent("H(B, tau^(p)) differs from H(B, tau) p".into()));
    }
    let u_p = b.mul(&b.sharp(p), u);
    let mu_p = datum.k().mul(&b.norm(p), mu);
    if !twisted.is_hermitian(&u_p) {
        return Err(Error::Inconsistent("p^# u is not hermitian for the twisted involution".into()));
    }
    let target = second_tits(&twisted, &u_p, &mu_p)
        .map_err(|e| Error::Inconsistent(format!("twisted datum rejected: {e}")))?;

    let nh = datum.dim_h();
    let m = Matrix::of_linear_map(f, j.dim(), |x| {
        let (v0, v) = j.split(x);
        let mut y = twisted.h_coords(&b.mul(&v0, p)).expect("v0 p is hermitian for the twist");
        y.extend(b.mul(&b.mul(&p_inv, &v), p));
        debug_assert_eq!(y.len(), nh + b.dim());
        y
    });
    expect_isomorphism(src, target.cns, &m, "R_p")
}

/// R̂_w : J(E,L,1,b) → J(E,L,u,b)^(u), v + xj ↦ vw + xj with w = u⁻¹.
pub fn unet_map<F: Field>(
    e: &CubicEtale<F>,
    l: &QuadraticEtale<F>,
    u: &[F::Elem],
    b: &[F::Elem],
) -> Result<MapCertificate<F>> {
    let f = e.field();
    if !f.is_one(&e.norm(u)) {
        return Err(Error::PreconditionViolation(format!("N_E(u) = {} is not 1", f.fmt_elem(&e.norm(u)))));
    }
    if !f.is_one(&l.norm(b)) {
        return Err(Error::PreconditionViolation(format!("n_L(b) = {} is not 1", f.fmt_elem(&l.norm(b)))));
    }
    let w = e.inverse(u).expect("N_E(u) = 1");
    debug_assert!(f.is_one(&e.norm(&w)));
    let src = etale_tits(e, l, &e.one(), b)?;
    let j = etale_tits(e, l, u, b)?;
    let nb = j.datum.b.dim();
    let uj = j.elem(&j.datum.b.embed_a(u), &vec![f.zero(); nb])?;
    let dst = Arc::new(j.cns.isotope(&uj)?);
    let m = Matrix::of_linear_map(f, src.dim(), |x| {
        let (v0, v) = src.split(x);
        let ve = j.datum.b.to_a(&v0).expect("E-valued");
        let mut y = j.datum.h_coords(&j.datum.b.embed_a(&e.mul(&ve, &w))).expect("E is hermitian");
        y.extend(v);
        y
    });
    expect_isomorphism(src.cns, dst, &m, "R_w")
}

/// J(E, L, u, αe + βe') ≅ J(E, α) for split L with idempotents e, e':
/// v₀ + (x⊗e + y⊗e')j ↦ v₀ + xj₁ + (u y)j₂.
pub fn split_first_identification<F: Field>(
    e: &CubicEtale<F>,
    l: &QuadraticEtale<F>,
    u: &[F::Elem],
    b: &[F::Elem],
) -> Result<MapCertificate<F>> {
    let f = e.field();
    let (e1, e2) = l.idempotents()?;
    let idem = Matrix::from_cols(&[e1.clone(), e2.clone()]);
    let ab = idem.solve(f, b).expect("idempotents form a basis");
    let alpha = ab[0].clone();
    let src = etale_tits(e, l, u, b)?;
    let dst = first_tits(&e.assoc, &alpha)?;
    let d = e.assoc.dim();
    let m = Matrix::of_linear_map(f, src.dim(), |x| {
        let (v0, v) = src.split(x);
        let mut xs = Vec::with_capacity(d);
        let mut ys = Vec::with_capacity(d);
        for c in v.chunks(2) {
            let s = idem.solve(f, c).expect("idempotents form a basis");
            xs.push(s[0].clone());
            ys.push(s[1].clone());
        }
        let mut y = src.datum.b.to_a(&v0).expect("E-valued");
        y.extend(xs);
        y.extend(e.mul(u, &ys));
        y
    });
    let cert = expect_isomorphism(src.cns.clone(), dst.cns.clone(), &m, "split identification")?;
    for i in 0..d {
        let ei = src.elem(&src.datum.b.embed_a(&super::tits::unit(f, d, i)), &vec![f.zero(); 2 * d])?;
        if m.apply(f, &ei) != super::tits::unit(f, 3 * d, i) {
            return Err(Error::Inconsistent("the identification moves the embedded copy of E".into()));
        }
    }
    Ok(cert)
}

/// J(E₁, 1) → Mat₃(F)⁺ for E₁ = F × F × F: diagonal to diagonal, the
/// j₁-summand to (E₂₃, E₃₁, E₁₂) and the j₂-summand to (E₃₂, E₁₃, E₂₁).
pub fn mat3_identification<F: Field>(f: &F) -> Result<MapCertificate<F>> {
    let e1 = CubicEtale::split(f);
    let src = first_tits(&e1.assoc, &f.one())?;
    let dst = Arc::new(AssocCubic::mat3(f).cns()?);
    const TARGET: [usize; 9] = [0, 4, 8, 5, 6, 1, 7, 2, 3];
    let m = Matrix::of_linear_map(f, 9, |x| {
        let mut y = vec![f.zero(); 9];
        for (i, &t) in TARGET.iter().enumerate() {
            y[t] = x[i].clone();
        }
        y
    });
    expect_isomorphism(src.cns, dst, &m, "J(E1, 1) -> Mat3")
}

/// Her₃(C, Γ) → Her₃(C, λΓ), α ↦ α, v ↦ λ⁻¹v.
pub fn her3_rescale<F: Field>(
    comp: &CompositionAlgebra<F>,
    gamma: &[F::Elem],
    lambda: &F::Elem,
) -> Result<MapCertificate<F>> {
    let f = comp.field();
    let li = f.inv(lambda).ok_or(Error::InvalidGamma)?;
    let src = Her3::new(comp, gamma)?;
    let scaled: Vec<F::Elem> = gamma.iter().map(|g| f.mul(lambda, g)).collect();
    let dst = Her3::new(comp, &scaled)?;
    let m = Matrix::of_linear_map(f, src.dim(), |x| {
        x.iter().enumerate().map(|(i, c)| if i < 3 { c.clone() } else { f.mul(&li, c) }).collect()
    });
    expect_isomorphism(src.cns, dst.cns, &m, "rescaling")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Ring;
    use crate::field::{FiniteField, Rationals};

    #[test]
    fn mat3_candidate_is_an_isomorphism() {
        assert!(mat3_identification(&FiniteField::prime(3).unwrap()).unwrap().is_isomorphism());
        assert!(mat3_identification(&Rationals).unwrap().is_isomorphism());
    }

    #[test]
    fn rescaling_zorn_gf5() {
        let f = FiniteField::prime(5).unwrap();
        let c = CompositionAlgebra::zorn(&f);
        assert!(her3_rescale(&c, &[1, 2, 3], &4).unwrap().is_isomorphism());
    }

    #[test]
    fn unet_over_gf2() {
        let f = FiniteField::prime(2).unwrap();
        let e = CubicEtale::from_poly(&f, &[1, 1, 0]).unwrap();
        let l = QuadraticEtale::from_poly(&f, &[1, 1]).unwrap();
        for u in e.units() {
            assert!(unet_map(&e, &l, &u, &l.one()).unwrap().is_isomorphism());
        }
    }

    #[test]
    fn split_identification_gf3() {
        let f = FiniteField::prime(3).unwrap();
        let e = CubicEtale::split(&f);
        let l = QuadraticEtale::split(&f);
        let (e1, e2) = l.idempotents().unwrap();
        // b = 2e + 2e', N_E(u) = 4 = 1 for u = (1, 2, 2)
        let b: Vec<u64> = (0..2).map(|i| f.add(&f.mul(&2, &e1[i]), &f.mul(&2, &e2[i]))).collect();
        let u = vec![1, 2, 2];
        assert!(split_first_identification(&e, &l, &u, &b).unwrap().is_isomorphism());
        let field_l = QuadraticEtale::from_poly(&f, &[1, 0]).unwrap();
        assert!(matches!(
            split_first_identification(&e, &field_l, &u, &field_l.one()),
            Err(Error::NotSplit(_))
        ));
    }

    #[test]
    fn setis_over_gf3() {
        let f = FiniteField::prime(3).unwrap();
        let e = CubicEtale::split(&f);
        let l = QuadraticEtale::from_poly(&f, &[1, 0]).unwrap();
        let d = InvolutionAlgebra::etale(&e, &l).unwrap();
        let u = d.b.one();
        let mu = l.one();
        let p = d.b.embed_a(&[1, 2, 1]);
        assert!(setis_map(&d, &u, &mu, &p).unwrap().is_isomorphism());
        assert!(setis_map(&d, &u, &mu, &d.b.one()).unwrap().cert.matrix == Matrix::identity(&f, 9));
    }
}
