//! First and second Tits constructions and the étale Tits process.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::assoc::AssocCubic;
use crate::cubic_norm::Cns;
use crate::error::{Error, Result};
use crate::etale::{CubicEtale, QuadraticEtale};
use crate::field::{fmt_vec, vec_to_json, Algebra, Field, Ring};
use crate::linalg::Matrix;
use crate::poly::{Poly, PolyRing};

use super::involution::{k_scalar_part, InvolutionAlgebra};

/// J(A, μ) on A ⊕ Aj₁ ⊕ Aj₂, coordinates v₀ | v₁ | v₂.
#[derive(Clone, Debug)]
pub struct FirstTits<F: Field> {
    pub a: AssocCubic<F>,
    pub mu: F::Elem,
    pub cns: Arc<Cns<F>>,
}

pub fn first_tits<F: Field>(a: &AssocCubic<F>, mu: &F::Elem) -> Result<FirstTits<F>> {
    let f = a.field().clone();
    let mu_inv = f.inv(mu).ok_or(Error::InvalidMu)?;
    let d = a.dim();
    let n = 3 * d;
    let r = PolyRing::new(&f, n)?;
    let x = r.vars(0, n);
    let (v0, v1, v2) = (&x[..d], &x[d..2 * d], &x[2 * d..]);
    let mut sharp = r_sub(&r, &a.sharp_in(&r, v0), &a.mul_in(&r, v1, v2));
    let s1 = r_sub(&r, &r_scale(&r, &mu_inv, &a.sharp_in(&r, v2)), &a.mul_in(&r, v0, v1));
    let s2 = r_sub(&r, &r_scale(&r, mu, &a.sharp_in(&r, v1)), &a.mul_in(&r, v2, v0));
    sharp.extend(s1);
    sharp.extend(s2);
    let v012 = a.mul_in(&r, &a.mul_in(&r, v0, v1), v2);
    let norm = r.sub(
        &r.add(
            &r.add(&a.norm_in(&r, v0), &r.scale(mu, &a.norm_in(&r, v1))),
            &r.scale(&mu_inv, &a.norm_in(&r, v2)),
        ),
        &a.trace_in(&r, &v012),
    );
    let mut base = a.one();
    base.resize(n, f.zero());
    let label = format!("J({}, {})", a.label, f.fmt_elem(mu));
    let cns = Cns::new(&f, base, sharp, norm, label)?;
    Ok(FirstTits { a: a.clone(), mu: mu.clone(), cns: Arc::new(cns) })
}

impl<F: Field> FirstTits<F> {
    pub fn field(&self) -> &F {
        self.a.field()
    }

    pub fn dim(&self) -> usize {
        3 * self.a.dim()
    }

    pub fn elem(&self, v0: &[F::Elem], v1: &[F::Elem], v2: &[F::Elem]) -> Vec<F::Elem> {
        [v0, v1, v2].concat()
    }

    pub fn split<'a>(&self, x: &'a [F::Elem]) -> (&'a [F::Elem], &'a [F::Elem], &'a [F::Elem]) {
        let d = self.a.dim();
        (&x[..d], &x[d..2 * d], &x[2 * d..])
    }

    /// Gram matrix of T_A(v₀,w₀) + T_A(v₁,w₂) + T_A(v₂,w₁).
    pub fn closed_form_gram(&self) -> Matrix<F::Elem> {
        let f = self.field();
        let n = self.dim();
        let rows = (0..n)
            .map(|i| {
                let ei = unit(f, n, i);
                let (x0, x1, x2) = self.split(&ei);
                (0..n)
                    .map(|j| {
                        let ej = unit(f, n, j);
                        let (y0, y1, y2) = self.split(&ej);
                        f.sum(&[self.a.trace2(x0, y0), self.a.trace2(x1, y2), self.a.trace2(x2, y1)])
                    })
                    .collect()
            })
            .collect();
        Matrix::from_rows(rows)
    }

    pub fn trace_formula_holds(&self) -> bool {
        &self.closed_form_gram() == self.cns.gram()
    }

    /// A⁺ → J(A, μ), v ↦ v + 0j₁ + 0j₂, preserves norm and adjoint.
    pub fn initial_summand_is_homomorphism(&self) -> Result<bool> {
        let a = self.a.cns()?;
        let emb = Matrix::from_cols(&(0..self.a.dim()).map(|i| unit(self.field(), self.dim(), i)).collect::<Vec<_>>());
        Ok(restriction_holds(&a, &self.cns, &emb))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "first_tits": {
                "algebra": self.a.label,
                "mu": self.field().elem_to_json(&self.mu),
            }
        })
    }
}

/// J(K, B, τ, u, μ) on H(B,τ) ⊕ Bj, coordinates v₀ ∈ H (in the basis of the
/// datum) followed by v ∈ B.
#[derive(Clone, Debug)]
pub struct SecondTits<F: Field> {
    pub datum: InvolutionAlgebra<F>,
    pub u: Vec<F::Elem>,
    pub mu: Vec<F::Elem>,
    pub cns: Arc<Cns<F>>,
}

pub fn second_tits<F: Field>(datum: &InvolutionAlgebra<F>, u: &[F::Elem], mu: &[F::Elem]) -> Result<SecondTits<F>> {
    let f = datum.field().clone();
    let b = &datum.b;
    let k = datum.k();
    if !datum.is_hermitian(u) {
        return Err(Error::AdmissibilityViolation(format!("u = {} is not hermitian", fmt_vec(&f, u))));
    }
    let u_inv = b
        .inverse(u)
        .ok_or_else(|| Error::AdmissibilityViolation(format!("u = {} is not invertible", fmt_vec(&f, u))))?;
    if k.inverse(mu).is_none() {
        return Err(Error::AdmissibilityViolation(format!("mu = {} is not invertible in K", fmt_vec(&f, mu))));
    }
    if b.norm(u) != k.scalar(&k.norm(mu)) {
        return Err(Error::AdmissibilityViolation(format!(
            "N_B(u) = {} differs from n_K(mu) = {}",
            fmt_vec(&f, &b.norm(u)),
            f.fmt_elem(&k.norm(mu))
        )));
    }
    let nh = datum.dim_h();
    let nb = b.dim();
    let n = nh + nb;
    let r = PolyRing::new(&f, n)?;
    let x = r.vars(0, n);
    let v0 = datum.h_elem_in(&r, &x[..nh]);
    let v = &x[nh..];
    let konst = |c: &[F::Elem]| b.embed_k_in(&r, &c.iter().map(|e| r.constant(e)).collect::<Vec<_>>());
    let bconst = |c: &[F::Elem]| c.iter().map(|e| r.constant(e)).collect::<Vec<_>>();
    let u_r = bconst(u);
    let tau_v = datum.tau_in(&r, v);
    let vutv = b.mul_in(&r, &b.mul_in(&r, v, &u_r), &tau_v);

    let h_sharp = r_sub(&r, &b.sharp_in(&r, &v0), &vutv);
    if datum.tau_in(&r, &h_sharp) != h_sharp {
        return Err(Error::Inconsistent("H-component of the adjoint is not hermitian".into()));
    }
    let mu_bar = k.conj(mu);
    let j_sharp = r_sub(
        &r,
        &b.mul_in(&r, &b.mul_in(&r, &konst(&mu_bar), &b.sharp_in(&r, &tau_v)), &bconst(&u_inv)),
        &b.mul_in(&r, &v0, v),
    );
    let mut sharp = datum.h_coords_in::<PolyRing<F>>(&h_sharp);
    sharp.extend(j_sharp);

    let mu_r: Vec<Poly<F::Elem>> = mu.iter().map(|e| r.constant(e)).collect();
    let mu_nv = k.mul_in(&r, &mu_r, &b.norm_in(&r, v));
    let mut norm_k = b.norm_in(&r, &v0);
    norm_k = r_add(&r, &norm_k, &mu_nv);
    norm_k = r_add(&r, &norm_k, &k.conj_in(&r, &mu_nv));
    norm_k = r_sub(&r, &norm_k, &b.trace_in(&r, &b.mul_in(&r, &v0, &vutv)));
    let norm = k_scalar_part(&r, &norm_k)?;

    let mut base = datum.h_coords(&b.one()).expect("1 is hermitian");
    base.resize(n, f.zero());
    let label = format!("J({}, u = {}, mu = {})", datum.label, fmt_vec(&f, u), fmt_vec(&f, mu));
    let cns = Cns::new(&f, base, sharp, norm, label)?;
    Ok(SecondTits { datum: datum.clone(), u: u.to_vec(), mu: mu.to_vec(), cns: Arc::new(cns) })
}

impl<F: Field> SecondTits<F> {
    pub fn field(&self) -> &F {
        self.datum.field()
    }

    pub fn dim(&self) -> usize {
        self.datum.dim_h() + self.datum.b.dim()
    }

    /// v₀ + vj for hermitian v₀ ∈ B and v ∈ B.
    pub fn elem(&self, v0: &[F::Elem], v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        let mut x = self
            .datum
            .h_coords(v0)
            .ok_or_else(|| Error::InvalidInput(format!("{} is not hermitian", fmt_vec(self.field(), v0))))?;
        x.extend_from_slice(v);
        Ok(x)
    }

    /// (v₀ as an element of B, v).
    pub fn split(&self, x: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
        let nh = self.datum.dim_h();
        (self.datum.h_elem(&x[..nh]), x[nh..].to_vec())
    }

    /// Gram matrix of T_B(v₀,w₀) + t_K(T_B(v u τ(w))).
    pub fn closed_form_gram(&self) -> Matrix<F::Elem> {
        let f = self.field();
        let b = &self.datum.b;
        let k = self.datum.k();
        let n = self.dim();
        let parts: Vec<_> = (0..n).map(|i| self.split(&unit(f, n, i))).collect();
        let rows = parts
            .iter()
            .map(|(v0, v)| {
                let vu = b.mul(v, &self.u);
                parts
                    .iter()
                    .map(|(w0, w)| {
                        let t0 = b.trace2(v0, w0);
                        let t1 = b.trace(&b.mul(&vu, &self.datum.tau_apply(w)));
                        f.add(&t0[0], &k.trace(&t1))
                    })
                    .collect()
            })
            .collect();
        Matrix::from_rows(rows)
    }

    pub fn trace_formula_holds(&self) -> bool {
        &self.closed_form_gram() == self.cns.gram()
    }

    /// H(B, τ) → J, v₀ ↦ v₀ + 0j, preserves norm and adjoint.
    pub fn initial_summand_is_homomorphism(&self) -> Result<bool> {
        let h = self.datum.h_cns()?;
        let nh = self.datum.dim_h();
        let emb = Matrix::from_cols(&(0..nh).map(|i| unit(self.field(), self.dim(), i)).collect::<Vec<_>>());
        Ok(restriction_holds(&h, &self.cns, &emb))
    }

    pub fn to_json(&self) -> Value {
        let f = self.field();
        json!({
            "second_tits": {
                "datum": self.datum.label,
                "u": vec_to_json(f, &self.u),
                "mu": vec_to_json(f, &self.mu),
            }
        })
    }
}

/// J(E, L, u, b): the second Tits construction over (L, E ⊗ L, id ⊗ ι_L)
/// with u ∈ E and b ∈ L.
pub fn etale_tits<F: Field>(
    e: &CubicEtale<F>,
    l: &QuadraticEtale<F>,
    u: &[F::Elem],
    b: &[F::Elem],
) -> Result<SecondTits<F>> {
    let datum = InvolutionAlgebra::etale(e, l)?;
    let ub = datum.b.embed_a(u);
    second_tits(&datum, &ub, b)
}

/// Admissible pairs (u, b): u ∈ Eˣ, b ∈ Lˣ with N_E(u) = n_L(b).
pub fn etale_admissible_pairs<F: Field>(
    e: &CubicEtale<F>,
    l: &QuadraticEtale<F>,
) -> Vec<(Vec<F::Elem>, Vec<F::Elem>)> {
    let lu: Vec<_> = l.elements().into_iter().filter(|b| l.inverse(b).is_some()).collect();
    let mut out = Vec::new();
    for u in e.units() {
        let nu = e.norm(&u);
        for b in &lu {
            if l.norm(b) == nu {
                out.push((u.clone(), b.clone()));
            }
        }
    }
    out
}

/// Flavours of Tits data; `build` validates and constructs.
#[derive(Clone, Debug)]
pub enum TitsDatum<F: Field> {
    First { a: AssocCubic<F>, mu: F::Elem },
    Second { datum: InvolutionAlgebra<F>, u: Vec<F::Elem>, mu: Vec<F::Elem> },
    Etale { e: CubicEtale<F>, l: QuadraticEtale<F>, u: Vec<F::Elem>, b: Vec<F::Elem> },
}

impl<F: Field> TitsDatum<F> {
    pub fn build(&self) -> Result<Arc<Cns<F>>> {
        Ok(match self {
            TitsDatum::First { a, mu } => first_tits(a, mu)?.cns,
            TitsDatum::Second { datum, u, mu } => second_tits(datum, u, mu)?.cns,
            TitsDatum::Etale { e, l, u, b } => etale_tits(e, l, u, b)?.cns,
        })
    }
}

/// N' ∘ M = N and M x^♯ = (Mx)^♯' for an injective linear M, checked by
/// substituting coordinates.
fn restriction_holds<F: Field>(src: &Cns<F>, dst: &Cns<F>, m: &Matrix<F::Elem>) -> bool {
    let r = src.ring();
    let x = r.vars(0, src.dim);
    let mx = m.apply_in(&r, &x);
    if dst.norm_in(&r, &mx) != src.norm {
        return false;
    }
    dst.sharp_in(&r, &mx) == m.apply_in(&r, &src.sharp)
}

pub(crate) fn unit<F: Field>(f: &F, n: usize, i: usize) -> Vec<F::Elem> {
    let mut v = vec![f.zero(); n];
    v[i] = f.one();
    v
}

fn r_add<F: Field>(r: &PolyRing<F>, a: &[Poly<F::Elem>], b: &[Poly<F::Elem>]) -> Vec<Poly<F::Elem>> {
    a.iter().zip(b).map(|(x, y)| r.add(x, y)).collect()
}

fn r_sub<F: Field>(r: &PolyRing<F>, a: &[Poly<F::Elem>], b: &[Poly<F::Elem>]) -> Vec<Poly<F::Elem>> {
    a.iter().zip(b).map(|(x, y)| r.sub(x, y)).collect()
}

fn r_scale<F: Field>(r: &PolyRing<F>, c: &F::Elem, a: &[Poly<F::Elem>]) -> Vec<Poly<F::Elem>> {
    a.iter().map(|x| r.scale(c, x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, Rationals};
    use crate::identity::IdentityConfig;

    #[test]
    fn first_tits_over_mat3_gf3() {
        let f = FiniteField::prime(3).unwrap();
        let a = AssocCubic::mat3(&f);
        for mu in [1u64, 2] {
            let j = first_tits(&a, &mu).unwrap();
            assert_eq!(j.dim(), 27);
            let mut x = vec![0; 27];
            x[9] = 1;
            x[13] = 1;
            x[17] = 1;
            assert_eq!(j.cns.norm(&x), mu);
            assert!(j.trace_formula_holds());
        }
        assert!(matches!(first_tits(&a, &0), Err(Error::InvalidMu)));
    }

    #[test]
    fn first_tits_over_cubic_field() {
        let q = Rationals;
        let e = CubicEtale::from_poly(&q, &[q.from_i64(-2), q.zero(), q.zero()]).unwrap();
        let j = first_tits(&e.assoc, &q.from_i64(3)).unwrap();
        assert!(j.cns.verify_axioms(&IdentityConfig::formal()).passed());
        assert!(j.trace_formula_holds());
        assert!(j.initial_summand_is_homomorphism().unwrap());
    }

    #[test]
    fn etale_tits_gf2() {
        let f = FiniteField::prime(2).unwrap();
        let e = CubicEtale::from_poly(&f, &[1, 1, 0]).unwrap();
        let l = QuadraticEtale::from_poly(&f, &[1, 1]).unwrap();
        let j = etale_tits(&e, &l, &e.one(), &l.one()).unwrap();
        assert_eq!(j.dim(), 9);
        assert!(j.cns.verify_axioms(&IdentityConfig::formal()).passed());
        assert!(j.trace_formula_holds());
        assert!(j.initial_summand_is_homomorphism().unwrap());
        assert!(j.cns.is_nonsingular());
        let x = j.elem(&[0; 6], &j.datum.b.one()).unwrap();
        assert_eq!(j.cns.norm(&x), l.trace(&l.one()));
    }

    #[test]
    fn second_tits_rejects_inadmissible() {
        let f = FiniteField::prime(3).unwrap();
        let e = CubicEtale::split(&f);
        let l = QuadraticEtale::from_poly(&f, &[1, 0]).unwrap();
        let r = etale_tits(&e, &l, &e.scalar(&2), &l.one());
        assert!(matches!(r, Err(Error::AdmissibilityViolation(_))));
    }
}
