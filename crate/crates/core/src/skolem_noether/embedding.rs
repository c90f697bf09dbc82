//! Embeddings of a cubic étale algebra into a cubic norm structure and the
//! equivalences between them.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::constructions::SecondTits;
use crate::cubic_norm::{certify_map, Cns};
use crate::error::{Error, Result};
use crate::etale::{CubicEtale, QuadraticEtale};
use crate::field::{vec_to_json, Field};
use crate::linalg::Matrix;
use crate::poly::PolyRing;

use super::norms::{norm_membership, NormClass};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmbeddingKind<E> {
    Isomorphic,
    /// E → J^(p) is isomorphic, p = i(1)⁻¹.
    Isotopic { p: Vec<E> },
}

#[derive(Clone, Debug)]
pub struct Embedding<F: Field> {
    pub source: CubicEtale<F>,
    pub target: Arc<Cns<F>>,
    pub matrix: Matrix<F::Elem>,
    pub kind: EmbeddingKind<F::Elem>,
}

impl<F: Field> Embedding<F> {
    /// Classifies an injective linear map E → J as an isomorphic or
    /// isotopic embedding; norm and adjoint are compared formally.
    pub fn new(source: &CubicEtale<F>, target: Arc<Cns<F>>, matrix: Matrix<F::Elem>) -> Result<Self> {
        let f = source.field();
        if matrix.rows != target.dim || matrix.cols != 3 || matrix.rank(f) != 3 {
            return Err(Error::InvalidInput("an embedding needs an injective dim(J) x 3 matrix".into()));
        }
        let c = matrix.apply(f, &source.one());
        let kind = if c == target.base {
            EmbeddingKind::Isomorphic
        } else {
            EmbeddingKind::Isotopic { p: target.inverse(&c)? }
        };
        let host = match &kind {
            EmbeddingKind::Isomorphic => Arc::clone(&target),
            EmbeddingKind::Isotopic { p } => Arc::new(target.isotope(p)?),
        };
        if !preserves_structure(source, &host, &matrix)? {
            return Err(Error::InvalidInput("the map does not preserve norm and adjoint".into()));
        }
        Ok(Embedding { source: source.clone(), target, matrix, kind })
    }

    /// i ∘ R_w.
    pub fn twist(&self, w: &[F::Elem]) -> Result<Self> {
        let f = self.source.field();
        let rw = Matrix::of_linear_map(f, 3, |x| self.source.mul(w, x));
        Self::new(&self.source, Arc::clone(&self.target), self.matrix.mul(f, &rw))
    }

    /// φ ∘ i for a linear map φ of J.
    pub fn compose(&self, phi: &Matrix<F::Elem>) -> Result<Self> {
        let f = self.source.field();
        Self::new(&self.source, Arc::clone(&self.target), phi.mul(f, &self.matrix))
    }

    pub fn to_json(&self) -> Value {
        let f = self.source.field();
        let kind = match &self.kind {
            EmbeddingKind::Isomorphic => json!("isomorphic"),
            EmbeddingKind::Isotopic { p } => json!({"isotopic": {"p": vec_to_json(f, p)}}),
        };
        json!({"source": self.source.to_json(), "matrix": self.matrix.to_json(f), "kind": kind})
    }
}

/// i: E → J(E, L, u, b), v ↦ v + 0j.
pub fn initial_embedding<F: Field>(e: &CubicEtale<F>, j: &SecondTits<F>) -> Result<Embedding<F>> {
    let f = e.field();
    let zero = vec![f.zero(); j.datum.b.dim()];
    let cols = (0..3)
        .map(|k| {
            let mut v = vec![f.zero(); 3];
            v[k] = f.one();
            j.elem(&j.datum.b.embed_a(&v), &zero)
        })
        .collect::<Result<Vec<_>>>()?;
    Embedding::new(e, Arc::clone(&j.cns), Matrix::from_cols(&cols))
}

fn preserves_structure<F: Field>(e: &CubicEtale<F>, j: &Cns<F>, m: &Matrix<F::Elem>) -> Result<bool> {
    let f = e.field();
    let r = PolyRing::new(f, 3)?;
    let x = r.vars(0, 3);
    let mx = m.apply_in(&r, &x);
    if j.norm_in(&r, &mx) != e.assoc.norm_in(&r, &x) || m.apply(f, &e.one()) != j.base {
        return Ok(false);
    }
    Ok(j.sharp_in(&r, &mx) == m.apply_in(&r, &e.assoc.sharp_in(&r, &x)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    StronglyEquivalent,
    WeaklyEquivalent,
    Rejected(String),
}

impl Equivalence {
    pub fn as_str(&self) -> &str {
        match self {
            Equivalence::StronglyEquivalent => "strongly-equivalent",
            Equivalence::WeaklyEquivalent => "weakly-equivalent",
            Equivalence::Rejected(_) => "rejected",
        }
    }
}

/// Checks that φ = M lies in Str(J) and that i ∘ R_w = φ ∘ i′.
pub fn weak_equivalence_check<F: Field>(
    i: &Embedding<F>,
    i2: &Embedding<F>,
    w: &[F::Elem],
    m: &Matrix<F::Elem>,
) -> Equivalence {
    let e = &i.source;
    let f = e.field();
    if !f.is_one(&e.norm(w)) {
        return Equivalence::Rejected(format!("N_E(w) = {} is not 1", f.fmt_elem(&e.norm(w))));
    }
    if i.target.dim != i2.target.dim || i.target.norm != i2.target.norm {
        return Equivalence::Rejected("the embeddings have different targets".into());
    }
    match certify_map(&i.target, &i.target, m) {
        Ok(c) if c.is_isotopy() => {}
        Ok(c) => return Equivalence::Rejected(format!("M is not in Str(J): {}", c.reason.unwrap_or_default())),
        Err(err) => return Equivalence::Rejected(err.to_string()),
    }
    let rw = Matrix::of_linear_map(f, 3, |x| e.mul(w, x));
    if i.matrix.mul(f, &rw) != m.mul(f, &i2.matrix) {
        return Equivalence::Rejected("i o R_w differs from M o i'".into());
    }
    if *w == e.one()[..] {
        Equivalence::StronglyEquivalent
    } else {
        Equivalence::WeaklyEquivalent
    }
}

/// i′ = i ∘ R_w together with the class of w in Eˣ / n_L((E⊗L)ˣ).
pub fn norm_class_of_twist<F: Field>(
    i: &Embedding<F>,
    l: &QuadraticEtale<F>,
    w: &[F::Elem],
    cap: u64,
) -> Result<(Embedding<F>, NormClass<F>)> {
    let class = norm_membership(&i.source, l, w, cap)?;
    Ok((i.twist(w)?, class))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assoc::AssocCubic;
    use crate::field::FiniteField;

    fn diagonal(f: &FiniteField) -> (CubicEtale<FiniteField>, Embedding<FiniteField>) {
        let e = CubicEtale::split(f);
        let j = Arc::new(AssocCubic::mat3(f).cns().unwrap());
        let cols: Vec<Vec<u64>> = (0..3)
            .map(|k| {
                let mut v = vec![0; 9];
                v[4 * k] = 1;
                v
            })
            .collect();
        let i = Embedding::new(&e, j, Matrix::from_cols(&cols)).unwrap();
        (e, i)
    }

    #[test]
    fn trivial_equivalence() {
        let f = FiniteField::prime(5).unwrap();
        let (e, i) = diagonal(&f);
        assert_eq!(i.kind, EmbeddingKind::Isomorphic);
        let id = Matrix::identity(&f, 9);
        assert_eq!(weak_equivalence_check(&i, &i, &e.one(), &id), Equivalence::StronglyEquivalent);
    }

    #[test]
    fn twist_is_weakly_equivalent() {
        let f = FiniteField::prime(5).unwrap();
        let (e, i) = diagonal(&f);
        let v = vec![2, 3, 1];
        let i2 = i.twist(&v).unwrap();
        assert!(matches!(i2.kind, EmbeddingKind::Isotopic { .. }));
        let id = Matrix::identity(&f, 9);
        assert_eq!(weak_equivalence_check(&i, &i2, &v, &id), Equivalence::WeaklyEquivalent);
        assert!(matches!(weak_equivalence_check(&i, &i2, &e.one(), &id), Equivalence::Rejected(_)));
    }
}
