//! Hermitian 3×3 matrices over a composition algebra.

use std::sync::Arc;

use crate::composition::CompositionAlgebra;
use crate::cubic_norm::Cns;
use crate::error::{Error, Result};
use crate::field::{Algebra, Field, Ring};
use crate::poly::{Poly, PolyRing};

/// Her₃(C, Γ) on the coordinates α₁, α₂, α₃ followed by v₁ ∈ C[23],
/// v₂ ∈ C[31], v₃ ∈ C[12].
#[derive(Clone, Debug)]
pub struct Her3<F: Field> {
    pub comp: CompositionAlgebra<F>,
    pub gamma: [F::Elem; 3],
    pub cns: Arc<Cns<F>>,
}

impl<F: Field> Her3<F> {
    pub fn new(comp: &CompositionAlgebra<F>, gamma: &[F::Elem]) -> Result<Self> {
        let f = comp.field().clone();
        if gamma.len() != 3 || gamma.iter().any(|g| f.is_zero(g)) {
            return Err(Error::InvalidGamma);
        }
        let g = [gamma[0].clone(), gamma[1].clone(), gamma[2].clone()];
        let d = comp.dim();
        let n = 3 + 3 * d;
        let r = PolyRing::new(&f, n)?;
        let x = r.vars(0, n);
        let alpha = &x[..3];
        let v: Vec<&[Poly<F::Elem>]> = (0..3).map(|i| &x[3 + i * d..3 + (i + 1) * d]).collect();
        let nv: Vec<Poly<F::Elem>> = v.iter().map(|vi| comp.norm_in(&r, vi)).collect();
        let mut sharp = vec![Poly::zero(); n];
        let mut norm = r.mul(&r.mul(&alpha[0], &alpha[1]), &alpha[2]);
        for i in 0..3 {
            let (j, l) = ((i + 1) % 3, (i + 2) % 3);
            let gjl = f.mul(&g[j], &g[l]);
            sharp[i] = r.sub(&r.mul(&alpha[j], &alpha[l]), &r.scale(&gjl, &nv[i]));
            let vjvl = comp.conj_in(&r, &comp.mul_in(&r, v[j], v[l]));
            for k in 0..d {
                sharp[3 + i * d + k] = r.sub(&r.scale(&g[i], &vjvl[k]), &r.mul(&alpha[i], &v[i][k]));
            }
            norm = r.sub(&norm, &r.scale(&gjl, &r.mul(&alpha[i], &nv[i])));
        }
        let v123 = comp.mul_in(&r, &comp.mul_in(&r, v[0], v[1]), v[2]);
        let g123 = f.mul(&f.mul(&g[0], &g[1]), &g[2]);
        norm = r.add(&norm, &r.scale(&g123, &comp.trace_in(&r, &v123)));
        let mut base = vec![f.zero(); n];
        for b in base.iter_mut().take(3) {
            *b = f.one();
        }
        let label = format!(
            "Her3({}, diag({}, {}, {}))",
            comp.label,
            f.fmt_elem(&g[0]),
            f.fmt_elem(&g[1]),
            f.fmt_elem(&g[2])
        );
        let cns = Cns::new(&f, base, sharp, norm, label)?;
        Ok(Her3 { comp: comp.clone(), gamma: g, cns: Arc::new(cns) })
    }

    pub fn field(&self) -> &F {
        self.comp.field()
    }

    pub fn dim(&self) -> usize {
        3 + 3 * self.comp.dim()
    }

    /// Index of e_ii.
    pub fn diag_index(&self, i: usize) -> usize {
        i
    }

    /// Coordinate range of the slot holding v_i (i = 0, 1, 2 for [23], [31], [12]).
    pub fn slot(&self, i: usize) -> std::ops::Range<usize> {
        let d = self.comp.dim();
        3 + i * d..3 + (i + 1) * d
    }

    /// Σ α_i e_ii + v_i[jl].
    pub fn elem(&self, alpha: &[F::Elem], v: &[Vec<F::Elem>]) -> Vec<F::Elem> {
        let mut x = alpha.to_vec();
        for vi in v {
            x.extend_from_slice(vi);
        }
        x
    }

    pub fn diag(&self, alpha: &[F::Elem]) -> Vec<F::Elem> {
        let z = self.comp.zero();
        self.elem(alpha, &[z.clone(), z.clone(), z])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, Rationals};
    use crate::identity::IdentityConfig;

    #[test]
    fn diagonal_norm_and_adjoint() {
        let q = Rationals;
        let c = CompositionAlgebra::split_quaternion(&q);
        let h = Her3::new(&c, &[q.one(), q.from_i64(2), q.from_i64(-1)]).unwrap();
        let x = h.diag(&[q.from_i64(2), q.from_i64(3), q.from_i64(5)]);
        assert_eq!(h.cns.norm(&x), q.from_i64(30));
        assert_eq!(h.cns.sharp(&x), h.diag(&[q.from_i64(15), q.from_i64(10), q.from_i64(6)]));
        assert!(h.cns.verify_axioms(&IdentityConfig::formal()).passed());
    }

    #[test]
    fn zero_gamma_is_rejected() {
        let f = FiniteField::prime(5).unwrap();
        let c = CompositionAlgebra::base(&f);
        assert_eq!(Her3::new(&c, &[1, 0, 1]).unwrap_err(), Error::InvalidGamma);
    }
}
