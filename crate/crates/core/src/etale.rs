//! Quadratic and cubic étale algebras, the product K ∗ L and the algebra
//! E ⊗ L with its two norms.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::{StructAlgebra, TensorRing};
use crate::assoc::{AssocCubic, CubicOverK};
use crate::error::{Error, Result};
use crate::field::{upoly, Algebra, Field};
use crate::linalg::Matrix;

/// F[s]/(s² − t s + n) on the basis {1, s}.
#[derive(Clone, Debug)]
pub struct QuadraticEtale<F: Field> {
    pub field: F,
    pub t: F::Elem,
    pub n: F::Elem,
    pub alg: Arc<StructAlgebra<F>>,
}

impl<F: Field> QuadraticEtale<F> {
    pub fn new(field: &F, t: F::Elem, n: F::Elem) -> Result<Self> {
        let f = field;
        let disc = f.sub(&f.mul(&t, &t), &f.mul(&f.from_i64(4), &n));
        if f.is_zero(&disc) {
            return Err(Error::NotSeparable);
        }
        let alg = StructAlgebra::from_fn(f, 2, vec![f.one(), f.zero()], |i, j| match (i, j) {
            (0, 0) => vec![f.one(), f.zero()],
            (0, 1) | (1, 0) => vec![f.zero(), f.one()],
            _ => vec![f.neg(&n), t.clone()],
        });
        Ok(QuadraticEtale { field: f.clone(), t, n, alg: Arc::new(alg) })
    }

    /// F × F presented as F[s]/(s² − s); s is the idempotent (0, 1).
    pub fn split(field: &F) -> Self {
        Self::new(field, field.one(), field.zero()).expect("s^2 - s is separable")
    }

    /// F[s]/(s² + c1 s + c0) from the coefficients [c0, c1].
    pub fn from_poly(field: &F, c: &[F::Elem]) -> Result<Self> {
        if c.len() != 2 {
            return Err(Error::InvalidInput("a quadratic etale algebra needs [c0, c1]".into()));
        }
        Self::new(field, field.neg(&c[1]), c[0].clone())
    }

    pub fn to_json(&self) -> Value {
        let f = &self.field;
        json!({"poly": [f.elem_to_json(&self.n), f.elem_to_json(&f.neg(&self.t))]})
    }

    pub fn from_json(field: &F, v: &Value) -> Result<Self> {
        if v.as_str() == Some("split") {
            return Ok(Self::split(field));
        }
        let arr = v
            .get("poly")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidInput(format!("expected {{\"poly\": [c0, c1]}} or \"split\", got {v}")))?;
        let c = arr.iter().map(|x| field.elem_from_json(x)).collect::<Result<Vec<_>>>()?;
        Self::from_poly(field, &c)
    }

    pub fn one(&self) -> Vec<F::Elem> {
        vec![self.field.one(), self.field.zero()]
    }

    pub fn scalar(&self, c: &F::Elem) -> Vec<F::Elem> {
        vec![c.clone(), self.field.zero()]
    }

    pub fn conj_in<R: Algebra<F>>(&self, r: &R, x: &[R::Elem]) -> Vec<R::Elem> {
        vec![r.add(&x[0], &r.scale(&self.t, &x[1])), r.neg(&x[1])]
    }

    pub fn norm_in<R: Algebra<F>>(&self, r: &R, x: &[R::Elem]) -> R::Elem {
        let ab = r.mul(&x[0], &x[1]);
        let items = [
            (&self.field.one(), &r.mul(&x[0], &x[0])),
            (&self.t, &ab),
            (&self.n, &r.mul(&x[1], &x[1])),
        ];
        r.lincomb(&items.iter().map(|(c, v)| (*c, *v)).collect::<Vec<_>>())
    }

    pub fn trace_in<R: Algebra<F>>(&self, r: &R, x: &[R::Elem]) -> R::Elem {
        r.add(&r.add(&x[0], &x[0]), &r.scale(&self.t, &x[1]))
    }

    pub fn mul_in<R: Algebra<F>>(&self, r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        self.alg.mul_in(r, a, b)
    }

    pub fn conj(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        self.conj_in(&self.field, x)
    }

    pub fn norm(&self, x: &[F::Elem]) -> F::Elem {
        self.norm_in(&self.field, x)
    }

    pub fn trace(&self, x: &[F::Elem]) -> F::Elem {
        self.trace_in(&self.field, x)
    }

    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        self.alg.mul(a, b)
    }

    pub fn inverse(&self, x: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let ni = self.field.inv(&self.norm(x))?;
        Some(self.conj(x).iter().map(|c| self.field.mul(&ni, c)).collect())
    }

    pub fn conj_matrix(&self) -> Matrix<F::Elem> {
        Matrix::from_cols(&[self.conj(&self.alg.basis(0)), self.conj(&self.alg.basis(1))])
    }

    /// Roots of s² − t s + n in F; `None` when this cannot be decided.
    pub fn roots(&self) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        if f.characteristic() == 2 {
            if !f.is_finite() {
                return None;
            }
            let poly = [self.n.clone(), f.neg(&self.t), f.one()];
            return Some(upoly::roots_exhaustive(f, &poly));
        }
        let disc = f.sub(&f.mul(&self.t, &self.t), &f.mul(&f.from_i64(4), &self.n));
        match f.is_square(&disc) {
            Some(false) => Some(vec![]),
            None => None,
            Some(true) => {
                let r = f.sqrt(&disc)?;
                let half = f.inv(&f.from_i64(2))?;
                let a = f.mul(&half, &f.add(&self.t, &r));
                let b = f.mul(&half, &f.sub(&self.t, &r));
                Some(vec![a, b])
            }
        }
    }

    pub fn is_split(&self) -> Option<bool> {
        self.roots().map(|r| !r.is_empty())
    }

    /// The primitive idempotent pair (e, 1 − e) of a split algebra, with
    /// e ↦ (1, 0) under K ≅ F × F.
    pub fn idempotents(&self) -> Result<(Vec<F::Elem>, Vec<F::Elem>)> {
        let f = &self.field;
        let roots = self.roots().ok_or_else(|| Error::Unknown("splitting could not be decided".into()))?;
        let r = roots.first().ok_or_else(|| Error::NotSplit("L is a field".into()))?;
        let r2 = f.sub(&self.t, r);
        // (s − r2)/(r − r2) is the idempotent with s ↦ r
        let d = f.inv(&f.sub(r, &r2)).ok_or(Error::NotSeparable)?;
        let e = vec![f.neg(&f.mul(&r2, &d)), d.clone()];
        let e2 = vec![f.sub(&f.one(), &e[0]), f.neg(&d)];
        Ok((e, e2))
    }

    /// K ∗ L: the fixed algebra of ι_K ⊗ ι_L in K ⊗ L.
    pub fn star_compose(&self, other: &QuadraticEtale<F>) -> Result<QuadraticEtale<F>> {
        let f = &self.field;
        let tensor = self.alg.tensor(&other.alg);
        let (ck, cl) = (self.conj_matrix(), other.conj_matrix());
        let mut rows = vec![vec![f.zero(); 4]; 4];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = f.mul(ck.get(i / 2, j / 2), cl.get(i % 2, j % 2));
                if i == j {
                    *v = f.sub(v, &f.one());
                }
            }
        }
        let fixed = Matrix::from_rows(rows).kernel(f);
        if fixed.len() != 2 {
            return Err(Error::FixedSpaceDimensionUnexpected { expected: 2, found: fixed.len() });
        }
        let one = tensor.unit.clone();
        let z = fixed
            .into_iter()
            .find(|v| crate::linalg::rank_of(f, &[one.clone(), v.clone()]) == 2)
            .ok_or(Error::FixedSpaceDimensionUnexpected { expected: 2, found: 1 })?;
        let z2 = tensor.mul(&z, &z);
        // z² = α z + β 1
        let m = Matrix::from_cols(&[z.clone(), one]);
        let sol = m
            .solve(f, &z2)
            .ok_or_else(|| Error::Inconsistent("the fixed algebra is not closed under products".into()))?;
        QuadraticEtale::new(f, sol[0].clone(), f.neg(&sol[1]))
    }

    /// Isomorphism of quadratic étale algebras: K ∗ L is split.
    pub fn isomorphic(&self, other: &QuadraticEtale<F>) -> Option<bool> {
        self.star_compose(other).ok()?.is_split()
    }

    pub fn elements(&self) -> Vec<Vec<F::Elem>> {
        let els = self.field.elements();
        els.iter().flat_map(|a| els.iter().map(move |b| vec![a.clone(), b.clone()])).collect()
    }
}

/// A cubic étale algebra with its generic norm, trace and adjoint.
#[derive(Clone, Debug)]
pub struct CubicEtale<F: Field> {
    pub assoc: AssocCubic<F>,
    /// [c0, c1, c2] of t³ + c2 t² + c1 t + c0 when presented as F[t]/(f)
    /// on the basis {1, t, t²}.
    pub poly: Option<Vec<F::Elem>>,
}

impl<F: Field> CubicEtale<F> {
    pub fn from_poly(field: &F, c: &[F::Elem]) -> Result<Self> {
        let f = field;
        if c.len() != 3 {
            return Err(Error::InvalidInput("a monic cubic needs [c0, c1, c2]".into()));
        }
        if f.is_zero(&upoly::cubic_discriminant(f, &c[2], &c[1], &c[0])) {
            return Err(Error::NotSeparable);
        }
        let modulus = [c[0].clone(), c[1].clone(), c[2].clone(), f.one()];
        let alg = StructAlgebra::from_fn(f, 3, vec![f.one(), f.zero(), f.zero()], |i, j| {
            let mut mono = vec![f.zero(); i + j + 1];
            mono[i + j] = f.one();
            let mut r = upoly::rem(f, &mono, &modulus);
            r.resize(3, f.zero());
            r
        });
        let label = format!("F[t]/({})", fmt_cubic(f, c));
        let e = Self::from_struct_unchecked(alg, label)?;
        Ok(CubicEtale { poly: Some(c.to_vec()), ..e })
    }

    pub fn split(field: &F) -> Self {
        let f = field;
        let alg = StructAlgebra::from_fn(f, 3, vec![f.one(); 3], |i, j| {
            let mut v = vec![f.zero(); 3];
            if i == j {
                v[i] = f.one();
            }
            v
        });
        Self::from_struct_unchecked(alg, "F x F x F").expect("split cubic algebra")
    }

    /// Validates commutativity, associativity, the unit and étaleness.
    pub fn from_struct(alg: StructAlgebra<F>, label: impl Into<String>) -> Result<Self> {
        Self::from_struct_unchecked(alg, label)
    }

    fn from_struct_unchecked(alg: StructAlgebra<F>, label: impl Into<String>) -> Result<Self> {
        let assoc = AssocCubic::from_regular(alg, label)?;
        let f = assoc.field().clone();
        if f.is_zero(&assoc.trace_gram().det(&f)) {
            return Err(Error::NotSeparable);
        }
        Ok(CubicEtale { assoc, poly: None })
    }

    pub fn from_json(field: &F, v: &Value) -> Result<Self> {
        if v.as_str() == Some("split") {
            return Ok(Self::split(field));
        }
        if let Some(arr) = v.get("poly").and_then(Value::as_array) {
            let c = arr.iter().map(|x| field.elem_from_json(x)).collect::<Result<Vec<_>>>()?;
            return Self::from_poly(field, &c);
        }
        Err(Error::InvalidInput(format!("expected {{\"poly\": [c0, c1, c2]}} or \"split\", got {v}")))
    }

    pub fn to_json(&self) -> Value {
        let f = self.field();
        match &self.poly {
            Some(c) => json!({"poly": c.iter().map(|x| f.elem_to_json(x)).collect::<Vec<_>>()}),
            None => json!("split"),
        }
    }

    pub fn field(&self) -> &F {
        self.assoc.field()
    }

    pub fn alg(&self) -> &Arc<StructAlgebra<F>> {
        &self.assoc.alg
    }

    pub fn one(&self) -> Vec<F::Elem> {
        self.assoc.one()
    }

    pub fn scalar(&self, c: &F::Elem) -> Vec<F::Elem> {
        self.assoc.alg.scalar(c)
    }

    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        self.assoc.mul(a, b)
    }

    pub fn norm(&self, x: &[F::Elem]) -> F::Elem {
        self.assoc.norm(x)
    }

    pub fn trace(&self, x: &[F::Elem]) -> F::Elem {
        self.assoc.trace(x)
    }

    pub fn sharp(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        self.assoc.sharp(x)
    }

    pub fn inverse(&self, x: &[F::Elem]) -> Option<Vec<F::Elem>> {
        self.assoc.inverse(x)
    }

    /// [c0, c1, c2] with t³ + c2 t² + c1 t + c0 the characteristic
    /// polynomial of x: t³ − T(x) t² + T(x^♯) t − N(x).
    pub fn char_poly(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        vec![f.neg(&self.norm(x)), self.trace(&self.sharp(x)), f.neg(&self.trace(x))]
    }

    /// Whether 1, x, x² are linearly independent.
    pub fn generates(&self, x: &[F::Elem]) -> bool {
        let x2 = self.mul(x, x);
        crate::linalg::rank_of(self.field(), &[self.one(), x.to_vec(), x2]) == 3
    }

    /// A generator x with its characteristic polynomial, found by canonical
    /// search when no presentation is stored.
    pub fn primitive(&self) -> Result<(Vec<F::Elem>, Vec<F::Elem>)> {
        let f = self.field();
        if let Some(c) = &self.poly {
            return Ok((self.alg().basis(1), c.clone()));
        }
        let limit: u64 = match f.size() {
            Some(q) => q.pow(3),
            None => 1 << 12,
        };
        let base = f.size().unwrap_or(16);
        for idx in 0..limit {
            let x: Vec<F::Elem> = (0..3).map(|k| f.element((idx / base.pow(k)) % base)).collect();
            if self.generates(&x) {
                let c = self.char_poly(&x);
                return Ok((x, c));
            }
        }
        Err(Error::NoGenerator)
    }

    /// The discriminant algebra Δ(E).
    pub fn discriminant_algebra(&self) -> Result<QuadraticEtale<F>> {
        let f = self.field();
        let (_, c) = self.primitive()?;
        let (a, b, cc) = (&c[2], &c[1], &c[0]);
        if f.characteristic() == 2 {
            // Berlekamp: s² + s + β with β = (a³c + abc + b³ + c²)/(ab + c)²
            let ab = f.mul(a, b);
            let den = f.add(&ab, cc);
            let den2 = f.inv(&f.mul(&den, &den)).ok_or(Error::NotSeparable)?;
            let a3c = f.mul(&f.mul(&f.mul(a, a), a), cc);
            let abc = f.mul(&ab, cc);
            let b3 = f.mul(&f.mul(b, b), b);
            let c2 = f.mul(cc, cc);
            let num = f.add(&f.add(&a3c, &abc), &f.add(&b3, &c2));
            let beta = f.mul(&num, &den2);
            let k = QuadraticEtale::new(f, f.one(), beta)?;
            return Ok(if k.is_split() == Some(true) { QuadraticEtale::split(f) } else { k });
        }
        let d = upoly::cubic_discriminant(f, a, b, cc);
        if f.is_square(&d) == Some(true) {
            return Ok(QuadraticEtale::split(f));
        }
        QuadraticEtale::new(f, f.zero(), f.neg(&d))
    }

    pub fn elements(&self) -> Vec<Vec<F::Elem>> {
        let els = self.field().elements();
        let mut out = vec![vec![]];
        for _ in 0..3 {
            out = out
                .into_iter()
                .flat_map(|v: Vec<F::Elem>| {
                    els.iter().map(move |c| {
                        let mut w = v.clone();
                        w.push(c.clone());
                        w
                    })
                })
                .collect();
        }
        out
    }

    pub fn units(&self) -> Vec<Vec<F::Elem>> {
        let f = self.field().clone();
        self.elements().into_iter().filter(|x| !f.is_zero(&self.norm(x))).collect()
    }
}

impl<F: Field> CubicEtale<F> {
    /// Matrices of all F-algebra automorphisms (finite fields), obtained by
    /// sending a generator to each root of its characteristic polynomial.
    pub fn automorphisms(&self) -> Result<Vec<Matrix<F::Elem>>> {
        let f = self.field();
        if !f.is_finite() {
            return Err(Error::Unknown("automorphisms are only enumerated over finite fields".into()));
        }
        let (g, c) = self.primitive()?;
        let powers = |x: &[F::Elem]| vec![self.one(), x.to_vec(), self.mul(x, x)];
        let p_inv = Matrix::from_cols(&powers(&g)).inverse(f).ok_or(Error::NoGenerator)?;
        let mut out = Vec::new();
        for r in self.elements() {
            if self.char_poly(&r) != c || !self.generates(&r) {
                continue;
            }
            let m = Matrix::from_cols(&powers(&r)).mul(f, &p_inv);
            if self.is_automorphism(&m) {
                out.push(m);
            }
        }
        Ok(out)
    }

    /// Whether the basis consists of orthogonal idempotents.
    pub fn is_diagonal(&self) -> bool {
        let f = self.field();
        (0..3).all(|i| {
            (0..3).all(|j| {
                let (a, b) = (self.alg().basis(i), self.alg().basis(j));
                self.mul(&a, &b) == if i == j { a } else { vec![f.zero(); 3] }
            })
        })
    }

    pub fn is_automorphism(&self, m: &Matrix<F::Elem>) -> bool {
        let f = self.field();
        if m.apply(f, &self.one()) != self.one() || f.is_zero(&m.det(f)) {
            return false;
        }
        (0..3).all(|i| {
            (0..3).all(|j| {
                let (a, b) = (self.alg().basis(i), self.alg().basis(j));
                m.apply(f, &self.mul(&a, &b)) == self.mul(&m.apply(f, &a), &m.apply(f, &b))
            })
        })
    }
}

impl<F: Field> QuadraticEtale<F> {
    /// The identity and the conjugation.
    pub fn automorphisms(&self) -> Vec<Matrix<F::Elem>> {
        vec![Matrix::identity(&self.field, 2), self.conj_matrix()]
    }

    pub fn is_automorphism(&self, m: &Matrix<F::Elem>) -> bool {
        self.automorphisms().contains(m)
    }
}

fn fmt_cubic<F: Field>(f: &F, c: &[F::Elem]) -> String {
    format!("t^3 + ({})t^2 + ({})t + ({})", f.fmt_elem(&c[2]), f.fmt_elem(&c[1]), f.fmt_elem(&c[0]))
}

/// E ⊗ L on the basis e_i ⊗ l_a at index 2i + a, carrying N_E, T_E, ♯ with
/// values in L and n_L, t_L, ι_L with values in E.
#[derive(Clone, Debug)]
pub struct EtaleTensor<F: Field> {
    pub e: CubicEtale<F>,
    pub l: QuadraticEtale<F>,
    pub b: CubicOverK<F>,
}

impl<F: Field> EtaleTensor<F> {
    pub fn new(e: &CubicEtale<F>, l: &QuadraticEtale<F>) -> Self {
        EtaleTensor { e: e.clone(), l: l.clone(), b: CubicOverK::new(&e.assoc, l) }
    }

    pub fn field(&self) -> &F {
        self.e.field()
    }

    pub fn dim(&self) -> usize {
        6
    }

    pub fn one(&self) -> Vec<F::Elem> {
        self.b.one()
    }

    pub fn embed_e(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        self.b.embed_a(x)
    }

    pub fn embed_l(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        self.b.embed_k(x)
    }

    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        self.b.mul(a, b)
    }

    pub fn inverse(&self, a: &[F::Elem]) -> Option<Vec<F::Elem>> {
        self.b.inverse(a)
    }

    pub fn conj_l(&self, y: &[F::Elem]) -> Vec<F::Elem> {
        self.b.conj_k(y)
    }

    /// Coordinates in E of an element of E ⊗ 1.
    pub fn to_e(&self, y: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let f = self.field();
        (0..3).all(|i| f.is_zero(&y[2 * i + 1])).then(|| (0..3).map(|i| y[2 * i].clone()).collect())
    }

    /// Coordinates in L of an element of 1 ⊗ L.
    pub fn to_l(&self, y: &[F::Elem]) -> Option<Vec<F::Elem>> {
        self.b.to_k(y)
    }

    /// n_L(y) = y ι_L(y), an element of E.
    pub fn n_l(&self, y: &[F::Elem]) -> Vec<F::Elem> {
        self.to_e(&self.mul(y, &self.conj_l(y))).expect("n_L takes values in E")
    }

    pub fn t_l(&self, y: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let s: Vec<F::Elem> = y.iter().zip(self.conj_l(y)).map(|(a, b)| f.add(a, &b)).collect();
        self.to_e(&s).expect("t_L takes values in E")
    }

    /// N_E(y) ∈ L.
    pub fn norm_e(&self, y: &[F::Elem]) -> Vec<F::Elem> {
        self.b.norm(y)
    }

    pub fn trace_e(&self, y: &[F::Elem]) -> Vec<F::Elem> {
        self.b.trace(y)
    }

    pub fn sharp_e(&self, y: &[F::Elem]) -> Vec<F::Elem> {
        self.b.sharp(y)
    }

    /// Kronecker product φ ⊗ ψ of an E-map and an L-map.
    pub fn kron(&self, phi: &Matrix<F::Elem>, psi: &Matrix<F::Elem>) -> Matrix<F::Elem> {
        kron(self.field(), phi, psi)
    }

    pub fn elements(&self) -> Vec<Vec<F::Elem>> {
        let els = self.field().elements();
        let mut out = vec![vec![]];
        for _ in 0..6 {
            out = out
                .into_iter()
                .flat_map(|v: Vec<F::Elem>| {
                    els.iter().map(move |c| {
                        let mut w = v.clone();
                        w.push(c.clone());
                        w
                    })
                })
                .collect();
        }
        out
    }

    /// Units, detected by n_K(N_E(y)) ≠ 0.
    pub fn units(&self) -> Vec<Vec<F::Elem>> {
        let f = self.field().clone();
        self.elements().into_iter().filter(|y| !f.is_zero(&self.l.norm(&self.norm_e(y)))).collect()
    }

    /// The L-valued generic norm as a TensorRing evaluation, for use with
    /// symbolic coordinates.
    pub fn norm_e_in<R: Algebra<F>>(&self, r: &R, y: &[R::Elem]) -> Vec<R::Elem> {
        self.b.norm_in(r, y)
    }

    pub fn l_ring<R: Algebra<F>>(&self, r: &R) -> TensorRing<F, R> {
        TensorRing::new(r, self.l.alg.clone())
    }
}

pub fn kron<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let (ar, ac, br, bc) = (a.rows, a.cols, b.rows, b.cols);
    let rows = (0..ar * br)
        .map(|i| (0..ac * bc).map(|j| f.mul(a.get(i / br, j / bc), b.get(i % br, j % bc))).collect())
        .collect();
    Matrix::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Ring;
    use crate::field::{FiniteField, Rationals};

    fn q(n: i64) -> num_rational::BigRational {
        Rationals.from_i64(n)
    }

    #[test]
    fn t3_minus_t_norm_is_product_of_evaluations() {
        let e = CubicEtale::from_poly(&Rationals, &[q(0), q(-1), q(0)]).unwrap();
        let x = vec![q(2), q(3), q(5)];
        let ev = |t: i64| q(2) + q(3) * q(t) + q(5) * q(t * t);
        assert_eq!(e.norm(&x), ev(0) * ev(1) * ev(-1));
        assert_eq!(e.trace(&e.one()), q(3));
        let d = e.discriminant_algebra().unwrap();
        assert_eq!(d.is_split(), Some(true));
    }

    #[test]
    fn gf8_over_gf2() {
        let f = FiniteField::prime(2).unwrap();
        let e = CubicEtale::from_poly(&f, &[1, 1, 0]).unwrap();
        assert_eq!(e.norm(&[0, 1, 0]), 1);
        assert_eq!(e.units().len(), 7);
        assert_eq!(e.discriminant_algebra().unwrap().is_split(), Some(true));
        let l = QuadraticEtale::from_poly(&f, &[1, 1]).unwrap();
        assert_eq!(l.is_split(), Some(false));
        let el = EtaleTensor::new(&e, &l);
        assert_eq!(el.units().len(), 63);
    }

    #[test]
    fn star_composition_over_q() {
        let k2 = QuadraticEtale::new(&Rationals, q(0), q(-2)).unwrap();
        let k3 = QuadraticEtale::new(&Rationals, q(0), q(-3)).unwrap();
        let k6 = QuadraticEtale::new(&Rationals, q(0), q(-6)).unwrap();
        assert_eq!(k2.star_compose(&k3).unwrap().isomorphic(&k6), Some(true));
        assert_eq!(k2.isomorphic(&k3), Some(false));
        assert_eq!(k2.star_compose(&k2).unwrap().is_split(), Some(true));
        let s = QuadraticEtale::split(&Rationals);
        assert_eq!(k2.star_compose(&s).unwrap().isomorphic(&k2), Some(true));
    }
}
