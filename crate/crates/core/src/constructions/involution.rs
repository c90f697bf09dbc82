//! Associative algebras of degree 3 with unitary involution (K, B, τ).

use crate::assoc::{AssocCubic, CubicOverK};
use crate::cubic_norm::Cns;
use crate::error::{Error, Result};
use crate::etale::{kron, CubicEtale, QuadraticEtale};
use crate::field::{fmt_vec, Algebra, Field, Ring};
use crate::linalg::Matrix;
use crate::poly::{Poly, PolyRing};

#[derive(Clone, Debug)]
pub struct InvolutionAlgebra<F: Field> {
    pub b: CubicOverK<F>,
    /// Matrix of τ on the F-basis of B.
    pub tau: Matrix<F::Elem>,
    /// F-basis of H(B, τ) as B-vectors.
    pub h_basis: Vec<Vec<F::Elem>>,
    /// Coordinates of B that determine a hermitian element.
    pub h_pos: Vec<usize>,
    pub label: String,
}

impl<F: Field> InvolutionAlgebra<F> {
    /// Validates τ² = 1, τ(xy) = τ(y)τ(x) on basis pairs, τ|_K = ι_K and
    /// dim_F H(B, τ) = dim_K B.
    pub fn new(b: CubicOverK<F>, tau: Matrix<F::Elem>, label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        let f = b.field().clone();
        let n = b.dim();
        if tau.rows != n || tau.cols != n {
            return Err(Error::InvalidInput(format!("{label}: tau must be {n}x{n}")));
        }
        if tau.mul(&f, &tau) != Matrix::identity(&f, n) {
            return Err(Error::InvalidInput(format!("{label}: tau is not of period 2")));
        }
        for i in 0..n {
            for j in 0..n {
                let (ei, ej) = (b.alg.basis(i), b.alg.basis(j));
                let lhs = tau.apply(&f, &b.mul(&ei, &ej));
                let rhs = b.mul(&tau.apply(&f, &ej), &tau.apply(&f, &ei));
                if lhs != rhs {
                    return Err(Error::InvalidInput(format!("{label}: tau is not anti-multiplicative on ({i}, {j})")));
                }
            }
        }
        for k in [b.k.one(), vec![f.zero(), f.one()]] {
            if tau.apply(&f, &b.embed_k(&k)) != b.embed_k(&b.k.conj(&k)) {
                return Err(Error::InvalidInput(format!("{label}: tau does not restrict to the conjugation of K")));
            }
        }
        let fixed = tau.sub(&f, &Matrix::identity(&f, n));
        let (_, pivots) = fixed.rref(&f);
        let h_basis = fixed.kernel(&f);
        let h_pos: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        if h_basis.len() != n / 2 {
            return Err(Error::FixedSpaceDimensionUnexpected { expected: n / 2, found: h_basis.len() });
        }
        Ok(InvolutionAlgebra { b, tau, h_basis, h_pos, label })
    }

    /// (L, E ⊗ L, id ⊗ ι_L); H(B, τ) = E with matching coordinates.
    pub fn etale(e: &CubicEtale<F>, l: &QuadraticEtale<F>) -> Result<Self> {
        let f = e.field();
        let b = CubicOverK::new(&e.assoc, l);
        let tau = kron(f, &Matrix::identity(f, 3), &l.conj_matrix());
        Self::new(b, tau, format!("({} x L, id x iota)", e.assoc.label))
    }

    /// (K, Mat₃(K), conjugate transpose).
    pub fn mat3_unitary(k: &QuadraticEtale<F>) -> Result<Self> {
        let f = &k.field;
        let a = AssocCubic::mat3(f);
        let b = CubicOverK::new(&a, k);
        let transpose = Matrix::of_linear_map(f, 9, |x| (0..9).map(|idx| x[(idx % 3) * 3 + idx / 3].clone()).collect());
        let tau = kron(f, &transpose, &k.conj_matrix());
        Self::new(b, tau, "(K, Mat3(K), conjugate transpose)")
    }

    pub fn field(&self) -> &F {
        self.b.field()
    }

    pub fn k(&self) -> &QuadraticEtale<F> {
        &self.b.k
    }

    pub fn dim_h(&self) -> usize {
        self.h_basis.len()
    }

    pub fn tau_in<R: Algebra<F>>(&self, r: &R, v: &[R::Elem]) -> Vec<R::Elem> {
        self.tau.apply_in(r, v)
    }

    pub fn tau_apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        self.tau.apply(self.field(), v)
    }

    pub fn is_hermitian(&self, v: &[F::Elem]) -> bool {
        self.tau_apply(v) == v
    }

    /// Coordinates of a hermitian element in the basis of H(B, τ).
    pub fn h_coords(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        self.is_hermitian(v).then(|| self.h_pos.iter().map(|&i| v[i].clone()).collect())
    }

    pub fn h_coords_in<R: Algebra<F>>(&self, v: &[R::Elem]) -> Vec<R::Elem> {
        self.h_pos.iter().map(|&i| v[i].clone()).collect()
    }

    pub fn h_elem_in<R: Algebra<F>>(&self, r: &R, c: &[R::Elem]) -> Vec<R::Elem> {
        (0..self.b.dim())
            .map(|i| {
                let items: Vec<(&F::Elem, &R::Elem)> = self.h_basis.iter().map(|h| &h[i]).zip(c).collect();
                r.lincomb(&items)
            })
            .collect()
    }

    pub fn h_elem(&self, c: &[F::Elem]) -> Vec<F::Elem> {
        self.h_elem_in(self.field(), c)
    }

    /// Nonsingular: the K-bilinear trace T_B is nondegenerate, i.e. the
    /// F-bilinear form t_K ∘ T_B is.
    pub fn is_nonsingular(&self) -> bool {
        let f = self.field();
        let n = self.b.dim();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.b.k.trace(&self.b.trace2(&self.b.alg.basis(i), &self.b.alg.basis(j))))
                    .collect()
            })
            .collect();
        !f.is_zero(&Matrix::from_rows(rows).det(f))
    }

    /// The p-twist τ^(p)(x) = p^{-1} τ(x) p for invertible hermitian p.
    pub fn twist(&self, p: &[F::Elem]) -> Result<Self> {
        let f = self.field();
        if !self.is_hermitian(p) {
            return Err(Error::PreconditionViolation(format!("p = {} is not hermitian", fmt_vec(f, p))));
        }
        let pi = self
            .b
            .inverse(p)
            .ok_or_else(|| Error::NotInvertible(format!("p = {} is not invertible", fmt_vec(f, p))))?;
        let n = self.b.dim();
        let tau = Matrix::of_linear_map(f, n, |x| self.b.mul(&self.b.mul(&pi, &self.tau_apply(x)), p));
        Self::new(self.b.clone(), tau, format!("{}^(p)", self.label))
    }

    /// The cubic norm structure of H(B, τ), restricted from B⁺.
    pub fn h_cns(&self) -> Result<Cns<F>> {
        let f = self.field().clone();
        let nh = self.dim_h();
        let r = PolyRing::new(&f, nh)?;
        let x = self.h_elem_in(&r, &r.vars(0, nh));
        let sharp_b = self.b.sharp_in(&r, &x);
        if self.tau_in(&r, &sharp_b) != sharp_b {
            return Err(Error::Inconsistent("the adjoint does not preserve H(B, tau)".into()));
        }
        let sharp = self.h_coords_in::<PolyRing<F>>(&sharp_b);
        let norm = k_scalar_part(&r, &self.b.norm_in(&r, &x))?;
        let base = self.h_coords(&self.b.one()).expect("1 is hermitian");
        Cns::new(&f, base, sharp, norm, format!("H{}", self.label))
    }

    pub fn b_units(&self) -> Vec<Vec<F::Elem>> {
        let f = self.field();
        let els = f.elements();
        let mut out: Vec<Vec<F::Elem>> = vec![vec![]];
        for _ in 0..self.b.dim() {
            out = out
                .into_iter()
                .flat_map(|v| {
                    els.iter().map(move |c| {
                        let mut w = v.clone();
                        w.push(c.clone());
                        w
                    })
                })
                .collect();
        }
        out.into_iter().filter(|v| !f.is_zero(&self.b.k.norm(&self.b.norm(v)))).collect()
    }

    pub fn h_units(&self) -> Vec<Vec<F::Elem>> {
        let f = self.field();
        let els = f.elements();
        let mut coords: Vec<Vec<F::Elem>> = vec![vec![]];
        for _ in 0..self.dim_h() {
            coords = coords
                .into_iter()
                .flat_map(|v| {
                    els.iter().map(move |c| {
                        let mut w = v.clone();
                        w.push(c.clone());
                        w
                    })
                })
                .collect();
        }
        coords
            .into_iter()
            .map(|c| self.h_elem(&c))
            .filter(|v| !f.is_zero(&self.b.k.norm(&self.b.norm(v))))
            .collect()
    }
}

/// The F-component of a K-valued polynomial whose s-component must vanish.
pub(crate) fn k_scalar_part<F: Field>(r: &PolyRing<F>, k: &[Poly<F::Elem>]) -> Result<Poly<F::Elem>> {
    if !r.is_zero(&k[1]) {
        return Err(Error::Inconsistent("a K-valued form expected to be F-valued has a nonzero K-part".into()));
    }
    Ok(k[0].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, Rationals};
    use crate::identity::IdentityConfig;

    #[test]
    fn hermitian_mat3_has_dimension_nine() {
        let q = Rationals;
        let k = QuadraticEtale::new(&q, q.zero(), q.one()).unwrap();
        let d = InvolutionAlgebra::mat3_unitary(&k).unwrap();
        assert_eq!(d.dim_h(), 9);
        let h = d.h_cns().unwrap();
        assert!(h.verify_axioms(&IdentityConfig::formal()).passed());
    }

    #[test]
    fn etale_hermitian_part_is_e() {
        let f = FiniteField::prime(2).unwrap();
        let e = CubicEtale::from_poly(&f, &[1, 1, 0]).unwrap();
        let l = QuadraticEtale::from_poly(&f, &[1, 1]).unwrap();
        let d = InvolutionAlgebra::etale(&e, &l).unwrap();
        assert_eq!(d.h_pos, vec![0, 2, 4]);
        let x = vec![1, 0, 1];
        assert_eq!(d.h_elem(&x), d.b.embed_a(&x));
        assert!(d.is_nonsingular());
    }
}
