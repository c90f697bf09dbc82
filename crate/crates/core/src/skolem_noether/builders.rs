//! Isomorphisms and isotopies between étale Tits process algebras built from
//! data (φ, ψ, y).

use std::sync::Arc;

use crate::constructions::{MapCertificate, SecondTits};
use crate::cubic_norm::certify_map;
use crate::error::{Error, Result};
use crate::etale::{kron, CubicEtale, EtaleTensor, QuadraticEtale};
use crate::field::{fmt_vec, Field};
use crate::linalg::Matrix;

/// E, L and E ⊗ L of an étale datum, shared across many builder calls.
pub struct EtaleContext<F: Field> {
    pub e: CubicEtale<F>,
    pub l: QuadraticEtale<F>,
    pub t: EtaleTensor<F>,
}

impl<F: Field> EtaleContext<F> {
    pub fn new(e: &CubicEtale<F>, l: &QuadraticEtale<F>) -> Self {
        EtaleContext { e: e.clone(), l: l.clone(), t: EtaleTensor::new(e, l) }
    }

    /// Reads E and L back from a second Tits algebra over an étale datum.
    pub fn of(j: &SecondTits<F>) -> Result<Self> {
        let bb = &j.datum.b;
        if bb.a.dim() != 3 {
            return Err(Error::InvalidInput(format!("{} is not an etale datum", j.datum.label)));
        }
        let e = CubicEtale { assoc: bb.a.clone(), poly: None };
        Ok(EtaleContext { e, l: bb.k.clone(), t: EtaleTensor { e: CubicEtale { assoc: bb.a.clone(), poly: None }, l: bb.k.clone(), b: bb.clone() } })
    }
}

/// (u, b) of an étale second Tits algebra with u read in E.
fn datum_of<F: Field>(j: &SecondTits<F>) -> Result<(Vec<F::Elem>, Vec<F::Elem>)> {
    let u = j
        .datum
        .b
        .to_a(&j.u)
        .ok_or_else(|| Error::InvalidInput(format!("u = {} does not lie in E", fmt_vec(j.field(), &j.u))))?;
    Ok((u, j.mu.clone()))
}

/// φ is an isotopy of E⁺: invertible with φ(x)φ(y) = φ(1)φ(xy).
pub fn is_etale_isotopy<F: Field>(e: &CubicEtale<F>, phi: &Matrix<F::Elem>) -> bool {
    let f = e.field();
    if phi.rows != 3 || phi.cols != 3 || f.is_zero(&phi.det(f)) {
        return false;
    }
    let c = phi.apply(f, &e.one());
    (0..3).all(|i| {
        (0..3).all(|j| {
            let (a, b) = (e.alg().basis(i), e.alg().basis(j));
            e.mul(&phi.apply(f, &a), &phi.apply(f, &b)) == e.mul(&c, &phi.apply(f, &e.mul(&a, &b)))
        })
    })
}

/// Φ(v₀′ + v′j′) = φ(v₀′) + (y·(φ⊗ψ)(v′))j.
fn build_matrix<F: Field>(
    src: &SecondTits<F>,
    dst: &SecondTits<F>,
    phi: &Matrix<F::Elem>,
    psi: &Matrix<F::Elem>,
    y: &[F::Elem],
) -> Matrix<F::Elem> {
    let f = src.field();
    let phipsi = kron(f, phi, psi);
    let (sb, db) = (&src.datum.b, &dst.datum.b);
    Matrix::of_linear_map(f, src.dim(), |x| {
        let (v0, v) = src.split(x);
        let v0e = sb.to_a(&v0).expect("H(B, tau) = E");
        let mut out = dst.datum.h_coords(&db.embed_a(&phi.apply(f, &v0e))).expect("E is hermitian");
        out.extend(db.mul(y, &phipsi.apply(f, &v)));
        out
    })
}

fn check_inputs<F: Field>(
    ctx: &EtaleContext<F>,
    phi: &Matrix<F::Elem>,
    psi: &Matrix<F::Elem>,
    y: &[F::Elem],
    isotopy: bool,
) -> Result<()> {
    let ok_phi = if isotopy { is_etale_isotopy(&ctx.e, phi) } else { ctx.e.is_automorphism(phi) };
    if !ok_phi {
        return Err(Error::InvalidInput("phi is not an isomorphism of the cubic etale algebras".into()));
    }
    if psi.rows != 2 || psi.cols != 2 || !ctx.l.is_automorphism(psi) {
        return Err(Error::InvalidInput("psi is not an isomorphism of the quadratic etale algebras".into()));
    }
    if ctx.t.inverse(y).is_none() {
        return Err(Error::NotInvertible(format!("y = {} is not invertible", fmt_vec(ctx.e.field(), y))));
    }
    Ok(())
}

/// Builds Φ : J(E,L,u′,b′) → J(E,L,u,b) for an automorphism φ of E, an
/// automorphism ψ of L and y ∈ (E⊗L)ˣ satisfying φ(u′) = n_L(y)u and
/// ψ(b′) = N_E(y)b, and verifies it is an isomorphism.
pub fn imcri_build<F: Field>(
    src: &SecondTits<F>,
    dst: &SecondTits<F>,
    phi: &Matrix<F::Elem>,
    psi: &Matrix<F::Elem>,
    y: &[F::Elem],
) -> Result<MapCertificate<F>> {
    imcri_build_in(&EtaleContext::of(dst)?, src, dst, phi, psi, y)
}

pub fn imcri_build_in<F: Field>(
    ctx: &EtaleContext<F>,
    src: &SecondTits<F>,
    dst: &SecondTits<F>,
    phi: &Matrix<F::Elem>,
    psi: &Matrix<F::Elem>,
    y: &[F::Elem],
) -> Result<MapCertificate<F>> {
    let ((u1, b1), (u, b)) = (datum_of(src)?, datum_of(dst)?);
    check_inputs(ctx, phi, psi, y, false)?;
    let f = ctx.e.field();
    let mut failed = Vec::new();
    if phi.apply(f, &u1) != ctx.e.mul(&ctx.t.n_l(y), &u) {
        failed.push("phi(u') = n_L(y) u");
    }
    if psi.apply(f, &b1) != ctx.l.mul(&ctx.t.norm_e(y), &b) {
        failed.push("psi(b') = N_E(y) b");
    }
    if !failed.is_empty() {
        return Err(Error::CompatibilityViolation(failed.join("; ")));
    }
    let m = build_matrix(src, dst, phi, psi, y);
    let cert = certify_map(&src.cns, &dst.cns, &m)?;
    if !cert.is_isomorphism() {
        return Err(Error::Inconsistent(format!(
            "compatible data (phi, psi, y) gave a non-isomorphism: {}",
            cert.reason.clone().unwrap_or_default()
        )));
    }
    Ok(MapCertificate { source: Arc::clone(&src.cns), target: Arc::clone(&dst.cns), cert })
}

/// The (u, b) determined by an isotopy φ, ψ and y from (u′, b′):
/// u = (n_L(y) p^♯ p⁻³)⁻¹ φ(u′), b = N_E(y)⁻¹ ψ(b′) with p = φ(1)⁻¹.
pub fn iscri_target<F: Field>(
    ctx: &EtaleContext<F>,
    u_src: &[F::Elem],
    b_src: &[F::Elem],
    phi: &Matrix<F::Elem>,
    psi: &Matrix<F::Elem>,
    y: &[F::Elem],
) -> Result<(Vec<F::Elem>, Vec<F::Elem>)> {
    let (e, l, t) = (&ctx.e, &ctx.l, &ctx.t);
    let f = e.field();
    let p = e.inverse(&phi.apply(f, &e.one())).ok_or_else(|| Error::NotInvertible("phi(1)".into()))?;
    let factor = iscri_factor(e, t, &p, y)?;
    let u = e.mul(&e.inverse(&factor).ok_or_else(|| Error::NotInvertible("n_L(y)".into()))?, &phi.apply(f, u_src));
    let nb = l.inverse(&t.norm_e(y)).ok_or_else(|| Error::NotInvertible("N_E(y)".into()))?;
    Ok((u, l.mul(&nb, &psi.apply(f, b_src))))
}

fn iscri_factor<F: Field>(e: &CubicEtale<F>, t: &EtaleTensor<F>, p: &[F::Elem], y: &[F::Elem]) -> Result<Vec<F::Elem>> {
    let pi = e.inverse(p).ok_or_else(|| Error::NotInvertible("p".into()))?;
    let pi3 = e.mul(&pi, &e.mul(&pi, &pi));
    Ok(e.mul(&t.n_l(y), &e.mul(&e.sharp(p), &pi3)))
}

/// Builds Φ : J(E,L,u′,b′) → J(E,L,u,b) for an isotopy φ of E with
/// p = φ(1)⁻¹ under φ(u′) = n_L(y) p^♯ p⁻³ u and ψ(b′) = N_E(y) b, and
/// verifies it is an isotopy.
pub fn iscri_build<F: Field>(
    src: &SecondTits<F>,
    dst: &SecondTits<F>,
    phi: &Matrix<F::Elem>,
    psi: &Matrix<F::Elem>,
    y: &[F::Elem],
) -> Result<MapCertificate<F>> {
    iscri_build_in(&EtaleContext::of(dst)?, src, dst, phi, psi, y)
}

pub fn iscri_build_in<F: Field>(
    ctx: &EtaleContext<F>,
    src: &SecondTits<F>,
    dst: &SecondTits<F>,
    phi: &Matrix<F::Elem>,
    psi: &Matrix<F::Elem>,
    y: &[F::Elem],
) -> Result<MapCertificate<F>> {
    let ((u1, b1), (u, b)) = (datum_of(src)?, datum_of(dst)?);
    check_inputs(ctx, phi, psi, y, true)?;
    let (e, f) = (&ctx.e, ctx.e.field());
    let p = e.inverse(&phi.apply(f, &e.one())).ok_or_else(|| Error::NotInvertible("phi(1)".into()))?;
    let mut failed = Vec::new();
    if phi.apply(f, &u1) != e.mul(&iscri_factor(e, &ctx.t, &p, y)?, &u) {
        failed.push("phi(u') = n_L(y) p^# p^-3 u");
    }
    if psi.apply(f, &b1) != ctx.l.mul(&ctx.t.norm_e(y), &b) {
        failed.push("psi(b') = N_E(y) b");
    }
    if !failed.is_empty() {
        return Err(Error::CompatibilityViolation(failed.join("; ")));
    }
    let m = build_matrix(src, dst, phi, psi, y);
    let cert = certify_map(&src.cns, &dst.cns, &m)?;
    if !cert.is_isotopy() {
        return Err(Error::Inconsistent(format!(
            "compatible isotopy data gave a non-isotopy: {}",
            cert.reason.clone().unwrap_or_default()
        )));
    }
    Ok(MapCertificate { source: Arc::clone(&src.cns), target: Arc::clone(&dst.cns), cert })
}

/// All isotopies x ↦ a σ(x) of E⁺ with σ ∈ Aut(E), a ∈ Eˣ (finite fields).
pub fn etale_isotopies<F: Field>(e: &CubicEtale<F>) -> Result<Vec<Matrix<F::Elem>>> {
    let f = e.field();
    let autos = e.automorphisms()?;
    let mut out = Vec::new();
    for a in e.units() {
        let la = Matrix::of_linear_map(f, 3, |x| e.mul(&a, x));
        for s in &autos {
            out.push(la.mul(f, s));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::etale_tits;
    use crate::field::FiniteField;

    fn gf2_instance() -> (FiniteField, CubicEtale<FiniteField>, QuadraticEtale<FiniteField>) {
        let f = FiniteField::prime(2).unwrap();
        let e = CubicEtale::from_poly(&f, &[1, 1, 0]).unwrap();
        let l = QuadraticEtale::from_poly(&f, &[1, 1]).unwrap();
        (f, e, l)
    }

    #[test]
    fn identity_data_give_identity() {
        let (f, e, l) = gf2_instance();
        let j = etale_tits(&e, &l, &e.one(), &l.one()).unwrap();
        let c = imcri_build(&j, &j, &Matrix::identity(&f, 3), &Matrix::identity(&f, 2), &j.datum.b.one()).unwrap();
        assert_eq!(c.cert.matrix, Matrix::identity(&f, 9));
    }

    #[test]
    fn inverse_twist_from_u_prime() {
        let (f, e, l) = gf2_instance();
        let u = vec![0, 1, 0];
        let b = vec![0, 1];
        let src = etale_tits(&e, &l, &u, &b).unwrap();
        let dst = etale_tits(&e, &l, &e.inverse(&u).unwrap(), &l.inverse(&b).unwrap()).unwrap();
        let y = src.datum.b.embed_a(&u);
        let c = imcri_build(&src, &dst, &Matrix::identity(&f, 3), &l.conj_matrix(), &y).unwrap();
        assert!(c.is_isomorphism());
    }

    #[test]
    fn incompatible_data_are_reported() {
        let (f, e, l) = gf2_instance();
        let j = etale_tits(&e, &l, &e.one(), &l.one()).unwrap();
        let y = j.datum.b.embed_a(&[0, 1, 0]);
        let r = imcri_build(&j, &j, &Matrix::identity(&f, 3), &Matrix::identity(&f, 2), &y);
        assert!(matches!(r, Err(Error::CompatibilityViolation(_))));
    }

    #[test]
    fn isotopy_by_scalar() {
        let f = FiniteField::prime(3).unwrap();
        let e = CubicEtale::split(&f);
        let l = QuadraticEtale::from_poly(&f, &[1, 0]).unwrap();
        let phi = Matrix::scalar(&f, 3, &2);
        let psi = Matrix::identity(&f, 2);
        let y = EtaleTensor::new(&e, &l).one();
        let (u, b) = iscri_target(&EtaleContext::new(&e, &l), &e.one(), &l.one(), &phi, &psi, &y).unwrap();
        let src = etale_tits(&e, &l, &e.one(), &l.one()).unwrap();
        let dst = etale_tits(&e, &l, &u, &b).unwrap();
        let c = iscri_build(&src, &dst, &phi, &psi, &y).unwrap();
        assert!(c.cert.is_isotopy());
        assert_eq!(etale_isotopies(&e).unwrap().len(), 48);
    }
}
