//! Associative algebras of degree 3 with their generic norm, trace and
//! adjoint: Mat3(F) and three-dimensional commutative algebras.

use std::sync::Arc;

use crate::algebra::{StructAlgebra, TensorRing};
use crate::cubic_norm::Cns;
use crate::error::{Error, Result};
use crate::etale::QuadraticEtale;
use crate::field::{Algebra, Field, Ring};
use crate::identity::{check_identity, Identity, IdentityConfig};
use crate::linalg::Matrix;
use crate::poly::{CubicForm, Poly, PolyRing, QuadForm, QuadSystem};

#[derive(Clone, Debug)]
pub struct AssocCubic<F: Field> {
    pub alg: Arc<StructAlgebra<F>>,
    pub norm: Poly<F::Elem>,
    pub sharp: Vec<Poly<F::Elem>>,
    /// Coefficients of the linear trace.
    pub trace: Vec<F::Elem>,
    pub label: String,
    norm_form: CubicForm<F::Elem>,
    sharp_sys: QuadSystem<F::Elem>,
}

impl<F: Field> AssocCubic<F> {
    /// Validates x x^♯ = x^♯ x = N(x) 1 formally and N(1) = 1.
    pub fn new(
        alg: Arc<StructAlgebra<F>>,
        norm: Poly<F::Elem>,
        sharp: Vec<Poly<F::Elem>>,
        trace: Vec<F::Elem>,
        label: impl Into<String>,
    ) -> Result<Self> {
        let f = alg.field.clone();
        let f = &f;
        let quads = sharp.iter().map(|p| QuadForm::from_poly(f, p)).collect::<Result<Vec<_>>>()?;
        let a = AssocCubic {
            norm_form: CubicForm::from_poly(f, &norm)?,
            sharp_sys: QuadSystem::new(alg.dim, &quads),
            alg,
            norm,
            sharp,
            trace,
            label: label.into(),
        };
        if !f.is_one(&a.norm(&a.alg.unit)) {
            return Err(Error::InvalidInput(format!("{}: the norm of 1 is not 1", a.label)));
        }
        let out = check_identity(f, &DegreeThree(&a), &IdentityConfig::formal());
        if !out.passed {
            return Err(Error::InvalidInput(format!(
                "{} is not of degree 3: x x^# = N(x) 1 fails ({})",
                a.label,
                out.failure.unwrap_or_default()
            )));
        }
        Ok(a)
    }

    /// Mat3(F) with basis E_ij at index 3i + j.
    pub fn mat3(field: &F) -> Self {
        let f = field;
        let alg = StructAlgebra::from_fn(f, 9, mat_unit(f), |x, y| {
            let (i, j, k, l) = (x / 3, x % 3, y / 3, y % 3);
            let mut v = vec![f.zero(); 9];
            if j == k {
                v[3 * i + l] = f.one();
            }
            v
        });
        let r = PolyRing::new(f, 9).expect("9 variables");
        let x = r.vars(0, 9);
        let e = |i: usize, j: usize| &x[3 * i + j];
        let minor = |a: usize, b: usize, c: usize, d: usize| {
            r.sub(&r.mul(e(a, c), e(b, d)), &r.mul(e(a, d), e(b, c)))
        };
        // adj(x)_{ij} is the cofactor of x_{ji}
        let mut sharp = vec![Poly::zero(); 9];
        for i in 0..3 {
            for j in 0..3 {
                let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
                let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
                sharp[3 * i + j] = minor(r0, r1, c0, c1);
            }
        }
        let norm = r.sum((0..3).map(|j| r.mul(e(0, j), &sharp[3 * j])).collect::<Vec<_>>().iter());
        let trace = mat_unit(f);
        Self::new(Arc::new(alg), norm, sharp, trace, "Mat3").expect("Mat3 is of degree 3")
    }

    /// Norm, trace and adjoint of a three-dimensional commutative associative
    /// algebra from its regular representation.
    pub fn from_regular(alg: StructAlgebra<F>, label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        if alg.dim != 3 {
            return Err(Error::InvalidInput(format!(
                "{label}: generic presentations of degree-3 algebras are supported in dimension 3 only"
            )));
        }
        if !alg.is_commutative() || !alg.is_associative() || !alg.unit_is_identity() {
            return Err(Error::InvalidInput(format!("{label}: not a commutative associative unital algebra")));
        }
        let f = alg.field.clone();
        let r = PolyRing::new(&f, 3)?;
        let x = r.vars(0, 3);
        // columns of L_x are x e_j
        let cols: Vec<Vec<Poly<F::Elem>>> = (0..3)
            .map(|j| {
                let ej: Vec<Poly<F::Elem>> = alg.basis(j).iter().map(|c| r.constant(c)).collect();
                alg.mul_in(&r, &x, &ej)
            })
            .collect();
        let m = |i: usize, j: usize| &cols[j][i];
        let t1 = r.add(&r.add(m(0, 0), m(1, 1)), m(2, 2));
        let pm = |a: usize, b: usize| r.sub(&r.mul(m(a, a), m(b, b)), &r.mul(m(a, b), m(b, a)));
        let t2 = r.add(&r.add(&pm(0, 1), &pm(0, 2)), &pm(1, 2));
        let det = {
            let c0 = r.sub(&r.mul(m(1, 1), m(2, 2)), &r.mul(m(1, 2), m(2, 1)));
            let c1 = r.sub(&r.mul(m(1, 0), m(2, 2)), &r.mul(m(1, 2), m(2, 0)));
            let c2 = r.sub(&r.mul(m(1, 0), m(2, 1)), &r.mul(m(1, 1), m(2, 0)));
            r.add(&r.sub(&r.mul(m(0, 0), &c0), &r.mul(m(0, 1), &c1)), &r.mul(m(0, 2), &c2))
        };
        // x^♯ = x^2 - T(x) x + S(x) 1
        let x2 = alg.mul_in(&r, &x, &x);
        let sharp: Vec<Poly<F::Elem>> = (0..3)
            .map(|i| {
                let u = r.scale(&alg.unit[i], &t2);
                r.add(&r.sub(&x2[i], &r.mul(&t1, &x[i])), &u)
            })
            .collect();
        let trace: Vec<F::Elem> = (0..3)
            .map(|i| {
                let mut pt = vec![f.zero(); 3];
                pt[i] = f.one();
                r.eval(&t1, &pt)
            })
            .collect();
        Self::new(Arc::new(alg), det, sharp, trace, label)
    }

    pub fn field(&self) -> &F {
        &self.alg.field
    }

    pub fn dim(&self) -> usize {
        self.alg.dim
    }

    pub fn one(&self) -> Vec<F::Elem> {
        self.alg.unit.clone()
    }

    pub fn mul_in<R: Algebra<F>>(&self, r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        self.alg.mul_in(r, a, b)
    }

    pub fn norm_in<R: Algebra<F>>(&self, r: &R, x: &[R::Elem]) -> R::Elem {
        self.norm_form.eval_in(r, x)
    }

    pub fn sharp_in<R: Algebra<F>>(&self, r: &R, x: &[R::Elem]) -> Vec<R::Elem> {
        self.sharp_sys.eval_in(r, x)
    }

    pub fn cross_in<R: Algebra<F>>(&self, r: &R, x: &[R::Elem], y: &[R::Elem]) -> Vec<R::Elem> {
        self.sharp_sys.polar_in(r, x, y)
    }

    pub fn trace_in<R: Algebra<F>>(&self, r: &R, x: &[R::Elem]) -> R::Elem {
        let items: Vec<(&F::Elem, &R::Elem)> = self.trace.iter().zip(x).collect();
        r.lincomb(&items)
    }

    /// T(x, y) = T(xy).
    pub fn trace2_in<R: Algebra<F>>(&self, r: &R, x: &[R::Elem], y: &[R::Elem]) -> R::Elem {
        self.trace_in(r, &self.mul_in(r, x, y))
    }

    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        self.alg.mul(a, b)
    }

    pub fn norm(&self, x: &[F::Elem]) -> F::Elem {
        self.norm_in(self.field(), x)
    }

    pub fn sharp(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        self.sharp_in(self.field(), x)
    }

    pub fn trace(&self, x: &[F::Elem]) -> F::Elem {
        self.trace_in(self.field(), x)
    }

    pub fn trace2(&self, x: &[F::Elem], y: &[F::Elem]) -> F::Elem {
        self.trace2_in(self.field(), x, y)
    }

    pub fn inverse(&self, x: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let f = self.field();
        let ni = f.inv(&self.norm(x))?;
        Some(self.sharp(x).iter().map(|c| f.mul(&ni, c)).collect())
    }

    /// Gram matrix of (x, y) ↦ T(xy).
    pub fn trace_gram(&self) -> Matrix<F::Elem> {
        let n = self.dim();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| self.trace2(&self.alg.basis(i), &self.alg.basis(j))).collect())
            .collect();
        Matrix::from_rows(rows)
    }

    /// The cubic norm structure of A^+.
    pub fn cns(&self) -> Result<Cns<F>> {
        Cns::new(self.field(), self.one(), self.sharp.clone(), self.norm.clone(), format!("{}+", self.label))
    }
}

/// B = A ⊗ K for a degree-3 algebra A and a quadratic étale K, on the basis
/// a_i ⊗ k_s at index 2i + s; norm, trace and adjoint are K-valued.
#[derive(Clone, Debug)]
pub struct CubicOverK<F: Field> {
    pub a: AssocCubic<F>,
    pub k: QuadraticEtale<F>,
    pub alg: Arc<StructAlgebra<F>>,
}

impl<F: Field> CubicOverK<F> {
    pub fn new(a: &AssocCubic<F>, k: &QuadraticEtale<F>) -> Self {
        CubicOverK { a: a.clone(), k: k.clone(), alg: Arc::new(a.alg.tensor(&k.alg)) }
    }

    pub fn field(&self) -> &F {
        self.a.field()
    }

    pub fn dim(&self) -> usize {
        self.alg.dim
    }

    pub fn one(&self) -> Vec<F::Elem> {
        self.alg.unit.clone()
    }

    fn split_k<R: Algebra<F>>(&self, y: &[R::Elem]) -> Vec<Vec<R::Elem>> {
        y.chunks(2).map(|c| c.to_vec()).collect()
    }

    pub fn mul_in<R: Algebra<F>>(&self, r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        self.alg.mul_in(r, a, b)
    }

    pub fn norm_in<R: Algebra<F>>(&self, r: &R, y: &[R::Elem]) -> Vec<R::Elem> {
        let kr = TensorRing::new(r, self.k.alg.clone());
        self.a.norm_in(&kr, &self.split_k::<R>(y))
    }

    pub fn sharp_in<R: Algebra<F>>(&self, r: &R, y: &[R::Elem]) -> Vec<R::Elem> {
        let kr = TensorRing::new(r, self.k.alg.clone());
        self.a.sharp_in(&kr, &self.split_k::<R>(y)).concat()
    }

    pub fn cross_in<R: Algebra<F>>(&self, r: &R, x: &[R::Elem], y: &[R::Elem]) -> Vec<R::Elem> {
        let kr = TensorRing::new(r, self.k.alg.clone());
        self.a.cross_in(&kr, &self.split_k::<R>(x), &self.split_k::<R>(y)).concat()
    }

    pub fn trace_in<R: Algebra<F>>(&self, r: &R, y: &[R::Elem]) -> Vec<R::Elem> {
        let kr = TensorRing::new(r, self.k.alg.clone());
        self.a.trace_in(&kr, &self.split_k::<R>(y))
    }

    /// T_B(x, y) = T_B(xy) ∈ K.
    pub fn trace2_in<R: Algebra<F>>(&self, r: &R, x: &[R::Elem], y: &[R::Elem]) -> Vec<R::Elem> {
        self.trace_in(r, &self.mul_in(r, x, y))
    }

    /// id ⊗ ι_K.
    pub fn conj_k_in<R: Algebra<F>>(&self, r: &R, y: &[R::Elem]) -> Vec<R::Elem> {
        y.chunks(2).flat_map(|c| self.k.conj_in(r, c)).collect()
    }

    /// 1 ⊗ λ for λ with coordinates in R.
    pub fn embed_k_in<R: Algebra<F>>(&self, r: &R, l: &[R::Elem]) -> Vec<R::Elem> {
        self.a.alg.unit.iter().flat_map(|u| l.iter().map(move |c| r.scale(u, c))).collect()
    }

    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        self.alg.mul(a, b)
    }

    pub fn norm(&self, y: &[F::Elem]) -> Vec<F::Elem> {
        self.norm_in(self.field(), y)
    }

    pub fn sharp(&self, y: &[F::Elem]) -> Vec<F::Elem> {
        self.sharp_in(self.field(), y)
    }

    pub fn cross(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        self.cross_in(self.field(), x, y)
    }

    pub fn trace(&self, y: &[F::Elem]) -> Vec<F::Elem> {
        self.trace_in(self.field(), y)
    }

    pub fn trace2(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        self.trace2_in(self.field(), x, y)
    }

    pub fn conj_k(&self, y: &[F::Elem]) -> Vec<F::Elem> {
        self.conj_k_in(self.field(), y)
    }

    pub fn embed_a(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        let z = self.field().zero();
        x.iter().flat_map(|c| [c.clone(), z.clone()]).collect()
    }

    pub fn embed_k(&self, l: &[F::Elem]) -> Vec<F::Elem> {
        self.embed_k_in(self.field(), l)
    }

    /// A-coordinates of an element of A ⊗ 1.
    pub fn to_a(&self, y: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let f = self.field();
        y.chunks(2).map(|c| f.is_zero(&c[1]).then(|| c[0].clone())).collect()
    }

    /// K-coordinates of an element of 1 ⊗ K.
    pub fn to_k(&self, y: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let f = self.field();
        let i = self.a.alg.unit.iter().position(|u| !f.is_zero(u))?;
        let ui = f.inv(&self.a.alg.unit[i])?;
        let l = vec![f.mul(&ui, &y[2 * i]), f.mul(&ui, &y[2 * i + 1])];
        (self.embed_k(&l) == y).then_some(l)
    }

    /// λ y for λ ∈ K.
    pub fn k_scale(&self, l: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        self.mul(&self.embed_k(l), y)
    }

    /// N_B(y)^{-1} y^♯.
    pub fn inverse(&self, y: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let ni = self.k.inverse(&self.norm(y))?;
        Some(self.k_scale(&ni, &self.sharp(y)))
    }
}

fn mat_unit<F: Field>(f: &F) -> Vec<F::Elem> {
    (0..9).map(|k| if k % 4 == 0 { f.one() } else { f.zero() }).collect()
}

/// x x^♯ = N(x) 1 = x^♯ x.
struct DegreeThree<'a, F: Field>(&'a AssocCubic<F>);

impl<F: Field> Identity<F> for DegreeThree<'_, F> {
    fn name(&self) -> String {
        "x x^# = N(x) 1 = x^# x".into()
    }
    fn groups(&self) -> Vec<(usize, usize)> {
        vec![(self.0.dim(), 3)]
    }
    fn outputs(&self) -> usize {
        2 * self.0.dim()
    }
    fn residual<R: Algebra<F>>(&self, r: &R, a: &[Vec<R::Elem>]) -> Vec<R::Elem> {
        let x = &a[0];
        let xs = self.0.sharp_in(r, x);
        let n = self.0.norm_in(r, x);
        let one: Vec<R::Elem> = self.0.alg.unit.iter().map(|u| r.scale(u, &n)).collect();
        let mut out: Vec<R::Elem> =
            self.0.mul_in(r, x, &xs).iter().zip(&one).map(|(p, q)| r.sub(p, q)).collect();
        out.extend(self.0.mul_in(r, &xs, x).iter().zip(&one).map(|(p, q)| r.sub(p, q)));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, Rationals};

    #[test]
    fn mat3_adjugate_and_determinant() {
        let q = Rationals;
        let a = AssocCubic::mat3(&q);
        let x: Vec<_> = [2, 1, 0, 0, 3, 1, 1, 0, 1].iter().map(|&c| q.from_i64(c)).collect();
        // det = 2(3) - 1(0 - 1) + 0 = 7
        assert_eq!(a.norm(&x), q.from_i64(7));
        assert_eq!(a.mul(&x, &a.sharp(&x)), a.alg.scalar(&q.from_i64(7)));
        assert_eq!(a.trace(&x), q.from_i64(6));
        assert!(!q.is_zero(&a.trace_gram().det(&q)));
    }

    #[test]
    fn split_cubic_from_regular_representation() {
        let f = FiniteField::prime(5).unwrap();
        let alg = StructAlgebra::from_fn(&f, 3, vec![1, 1, 1], |i, j| {
            let mut v = vec![0; 3];
            if i == j {
                v[i] = 1;
            }
            v
        });
        let a = AssocCubic::from_regular(alg, "F^3").unwrap();
        assert_eq!(a.norm(&[2, 3, 4]), 24 % 5);
        assert_eq!(a.sharp(&[2, 3, 4]), vec![12 % 5, 8 % 5, 6 % 5]);
        assert_eq!(a.trace, vec![1, 1, 1]);
    }
}
