//! Composition algebras of dimension 1, 2, 4 and 8.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::StructAlgebra;
use crate::error::{Error, Result};
use crate::etale::QuadraticEtale;
use crate::field::{Algebra, Field, Ring};
use crate::identity::{check_identity, Identity, IdentityConfig, IdentityOutcome};
use crate::linalg::Matrix;
use crate::poly::{Poly, PolyRing, QuadForm, QuadSystem};

#[derive(Clone, Debug)]
pub struct CompositionAlgebra<F: Field> {
    pub alg: Arc<StructAlgebra<F>>,
    pub norm: Poly<F::Elem>,
    /// Coefficients of the linear trace t_C.
    pub trace: Vec<F::Elem>,
    pub label: String,
    norm_sys: QuadSystem<F::Elem>,
}

impl<F: Field> CompositionAlgebra<F> {
    /// Accepts a multiplication table with norm and trace and validates the
    /// composition identities formally together with nondegeneracy.
    pub fn new(
        alg: StructAlgebra<F>,
        norm: Poly<F::Elem>,
        trace: Vec<F::Elem>,
        label: impl Into<String>,
    ) -> Result<Self> {
        let c = Self::unchecked(alg, norm, trace, label)?;
        if let Some(bad) = c.verify(&IdentityConfig::formal()).into_iter().find(|o| !o.passed) {
            return Err(Error::InvalidInput(format!("{}: {} fails", c.label, bad.name)));
        }
        if !c.is_nondegenerate() {
            return Err(Error::InvalidInput(format!("{}: the norm is degenerate", c.label)));
        }
        Ok(c)
    }

    fn unchecked(alg: StructAlgebra<F>, norm: Poly<F::Elem>, trace: Vec<F::Elem>, label: impl Into<String>) -> Result<Self> {
        if ![1, 2, 4, 8].contains(&alg.dim) {
            return Err(Error::InvalidInput(format!("composition algebras have dimension 1, 2, 4 or 8, not {}", alg.dim)));
        }
        let q = QuadForm::from_poly(&alg.field, &norm)?;
        Ok(CompositionAlgebra {
            norm_sys: QuadSystem::new(alg.dim, &[q]),
            alg: Arc::new(alg),
            norm,
            trace,
            label: label.into(),
        })
    }

    /// F itself with n(x) = x².
    pub fn base(field: &F) -> Self {
        let f = field;
        let alg = StructAlgebra::from_fn(f, 1, vec![f.one()], |_, _| vec![f.one()]);
        let r = PolyRing::new(f, 1).expect("one variable");
        let x = r.var(0);
        Self::unchecked(alg, r.mul(&x, &x), vec![f.from_i64(2)], "F").expect("F")
    }

    /// F × F as F[s]/(s² − s).
    pub fn split_binarion(field: &F) -> Self {
        let k = QuadraticEtale::split(field);
        let r = PolyRing::new(field, 2).expect("two variables");
        let norm = k.norm_in(&r, &r.vars(0, 2));
        let trace = vec![field.from_i64(2), k.t.clone()];
        Self::new((*k.alg).clone(), norm, trace, "split-binarion").expect("F x F")
    }

    pub fn split_quaternion(field: &F) -> Self {
        let c = Self::cayley_dickson(&Self::split_binarion(field), &field.one()).expect("doubling F x F");
        CompositionAlgebra { label: "split-quaternion".into(), ..c }
    }

    /// Zorn vector matrices [[α, u], [v, β]] on the basis
    /// e1, e2, u1, u2, u3, v1, v2, v3.
    pub fn zorn(field: &F) -> Self {
        let f = field;
        let r = PolyRing::new(f, 16).expect("16 variables");
        let x = r.vars(0, 8);
        let y = r.vars(8, 8);
        let p = zorn_product(&r, &x, &y);
        // structure constants: coefficient of x_i y_j in each output coordinate
        let alg = StructAlgebra::from_fn(f, 8, zorn_unit(f), |i, j| {
            let mut pt = vec![f.zero(); 16];
            pt[i] = f.one();
            pt[8 + j] = f.one();
            p.iter().map(|c| r.eval(c, &pt)).collect()
        });
        let r8 = PolyRing::new(f, 8).expect("8 variables");
        let z = r8.vars(0, 8);
        let norm = r8.sub(&r8.mul(&z[0], &z[1]), &dot(&r8, &z[2..5], &z[5..8]));
        let mut trace = vec![f.zero(); 8];
        trace[0] = f.one();
        trace[1] = f.one();
        Self::new(alg, norm, trace, "zorn").expect("split octonions")
    }

    /// (a, b)(c, d) = (ac + λ d̄ b, da + b c̄), n(a, b) = n(a) − λ n(b).
    pub fn cayley_dickson(c: &CompositionAlgebra<F>, lambda: &F::Elem) -> Result<Self> {
        let f = c.field().clone();
        if c.dim() == 8 {
            return Err(Error::DimensionTooLarge);
        }
        if f.is_zero(lambda) {
            return Err(Error::InvalidInput("the Cayley-Dickson parameter must be nonzero".into()));
        }
        let n = c.dim();
        let mut unit = c.one();
        unit.extend(vec![f.zero(); n]);
        let alg = StructAlgebra::from_fn(&f, 2 * n, unit, |i, j| {
            let zero = c.zero();
            let (a, b) = if i < n { (c.alg.basis(i), zero.clone()) } else { (zero.clone(), c.alg.basis(i - n)) };
            let (cc, d) = if j < n { (c.alg.basis(j), zero.clone()) } else { (zero, c.alg.basis(j - n)) };
            let first = c.alg.add(&c.mul(&a, &cc), &c.alg.scale(lambda, &c.mul(&c.conj(&d), &b)));
            let second = c.alg.add(&c.mul(&d, &a), &c.mul(&b, &c.conj(&cc)));
            [first, second].concat()
        });
        let r = PolyRing::new(&f, 2 * n)?;
        let v = r.vars(0, 2 * n);
        let norm = r.sub(&c.norm_in(&r, &v[..n]), &r.scale(lambda, &c.norm_in(&r, &v[n..])));
        let mut trace = c.trace.clone();
        trace.extend(vec![f.zero(); n]);
        let label = format!("CD({}, {})", c.label, f.fmt_elem(lambda));
        Self::new(alg, norm, trace, label)
    }

    pub fn preset(field: &F, name: &str) -> Result<Self> {
        match name {
            "zorn" => Ok(Self::zorn(field)),
            "split-quaternion" => Ok(Self::split_quaternion(field)),
            "split-binarion" => Ok(Self::split_binarion(field)),
            "base" | "field" => Ok(Self::base(field)),
            _ => Err(Error::InvalidInput(format!("unknown composition algebra preset {name:?}"))),
        }
    }

    /// A preset name or {"cayley_dickson": {"base": ..., "lambda": ...}}.
    pub fn from_json(field: &F, v: &Value) -> Result<Self> {
        if let Some(name) = v.as_str() {
            return Self::preset(field, name);
        }
        if let Some(cd) = v.get("cayley_dickson") {
            let base = cd.get("base").map_or_else(|| Ok(Self::base(field)), |b| Self::from_json(field, b))?;
            let lambda = field.elem_from_json(
                cd.get("lambda").ok_or_else(|| Error::InvalidInput("cayley_dickson needs lambda".into()))?,
            )?;
            return Self::cayley_dickson(&base, &lambda);
        }
        Err(Error::InvalidInput(format!("unrecognised composition algebra {v}")))
    }

    pub fn to_json(&self) -> Value {
        let f = self.field();
        json!({
            "label": self.label,
            "dim": self.dim(),
            "trace": self.trace.iter().map(|c| f.elem_to_json(c)).collect::<Vec<_>>(),
            "norm": PolyRing::new(f, self.dim()).expect("dim <= 8").to_json(&self.norm),
        })
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

    pub fn zero(&self) -> Vec<F::Elem> {
        self.alg.zero()
    }

    pub fn mul_in<R: Algebra<F>>(&self, r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        self.alg.mul_in(r, a, b)
    }

    pub fn norm_in<R: Algebra<F>>(&self, r: &R, x: &[R::Elem]) -> R::Elem {
        self.norm_sys.eval_in(r, x).pop().expect("one form")
    }

    /// n(x, y) = n(x + y) − n(x) − n(y).
    pub fn polar_in<R: Algebra<F>>(&self, r: &R, x: &[R::Elem], y: &[R::Elem]) -> R::Elem {
        self.norm_sys.polar_in(r, x, y).pop().expect("one form")
    }

    pub fn trace_in<R: Algebra<F>>(&self, r: &R, x: &[R::Elem]) -> R::Elem {
        let items: Vec<(&F::Elem, &R::Elem)> = self.trace.iter().zip(x).collect();
        r.lincomb(&items)
    }

    /// x̄ = t(x) 1 − x.
    pub fn conj_in<R: Algebra<F>>(&self, r: &R, x: &[R::Elem]) -> Vec<R::Elem> {
        let t = self.trace_in(r, x);
        self.alg.unit.iter().zip(x).map(|(u, c)| r.sub(&r.scale(u, &t), c)).collect()
    }

    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        self.alg.mul(a, b)
    }

    pub fn norm(&self, x: &[F::Elem]) -> F::Elem {
        self.norm_in(self.field(), x)
    }

    pub fn trace_of(&self, x: &[F::Elem]) -> F::Elem {
        self.trace_in(self.field(), x)
    }

    pub fn conj(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        self.conj_in(self.field(), x)
    }

    /// Gram matrix of the polar form.
    pub fn polar_gram(&self) -> Matrix<F::Elem> {
        let n = self.dim();
        let f = self.field();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| self.polar_in(f, &self.alg.basis(i), &self.alg.basis(j))).collect())
            .collect();
        Matrix::from_rows(rows)
    }

    /// Nondegenerate polar form, or in characteristic 2 a radical of
    /// dimension at most 1 on which the norm is anisotropic.
    pub fn is_nondegenerate(&self) -> bool {
        let f = self.field();
        let g = self.polar_gram();
        let rad = g.kernel(f);
        match rad.len() {
            0 => true,
            1 if f.characteristic() == 2 => !f.is_zero(&self.norm(&rad[0])),
            _ => false,
        }
    }

    pub fn verify(&self, cfg: &IdentityConfig) -> Vec<IdentityOutcome> {
        let f = self.field();
        vec![
            check_identity(f, &Multiplicative(self), cfg),
            check_identity(f, &ConjugateNorm(self), cfg),
            check_identity(f, &QuadraticRelation(self), cfg),
            check_identity(f, &ConjugateTrace(self), cfg),
        ]
    }
}

fn zorn_unit<F: Field>(f: &F) -> Vec<F::Elem> {
    (0..8).map(|k| if k < 2 { f.one() } else { f.zero() }).collect()
}

fn cross<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    (0..3)
        .map(|i| {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            r.sub(&r.mul(&a[j], &b[k]), &r.mul(&a[k], &b[j]))
        })
        .collect()
}

fn dot<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> R::Elem {
    let prods: Vec<R::Elem> = a.iter().zip(b).map(|(x, y)| r.mul(x, y)).collect();
    r.sum(prods.iter())
}

/// [[α, u], [v, β]] [[α', u'], [v', β']] =
/// [[αα' + u·v', αu' + β'u − v×v'], [α'v + βv' + u×u', ββ' + v·u']].
fn zorn_product<R: Ring>(r: &R, x: &[R::Elem], y: &[R::Elem]) -> Vec<R::Elem> {
    let (a, b, u, v) = (&x[0], &x[1], &x[2..5], &x[5..8]);
    let (a2, b2, u2, v2) = (&y[0], &y[1], &y[2..5], &y[5..8]);
    let alpha = r.add(&r.mul(a, a2), &dot(r, u, v2));
    let beta = r.add(&r.mul(b, b2), &dot(r, v, u2));
    let vv = cross(r, v, v2);
    let uu = cross(r, u, u2);
    let mut out = vec![alpha, beta];
    out.extend((0..3).map(|i| r.sub(&r.add(&r.mul(a, &u2[i]), &r.mul(b2, &u[i])), &vv[i])));
    out.extend((0..3).map(|i| r.add(&r.add(&r.mul(a2, &v[i]), &r.mul(b, &v2[i])), &uu[i])));
    out
}

struct Multiplicative<'a, F: Field>(&'a CompositionAlgebra<F>);

impl<F: Field> Identity<F> for Multiplicative<'_, F> {
    fn name(&self) -> String {
        "n(xy) = n(x)n(y)".into()
    }
    fn groups(&self) -> Vec<(usize, usize)> {
        vec![(self.0.dim(), 2), (self.0.dim(), 2)]
    }
    fn outputs(&self) -> usize {
        1
    }
    fn residual<R: Algebra<F>>(&self, r: &R, a: &[Vec<R::Elem>]) -> Vec<R::Elem> {
        let c = self.0;
        let lhs = c.norm_in(r, &c.mul_in(r, &a[0], &a[1]));
        vec![r.sub(&lhs, &r.mul(&c.norm_in(r, &a[0]), &c.norm_in(r, &a[1])))]
    }
}

struct ConjugateNorm<'a, F: Field>(&'a CompositionAlgebra<F>);

impl<F: Field> Identity<F> for ConjugateNorm<'_, F> {
    fn name(&self) -> String {
        "x xbar = n(x) 1".into()
    }
    fn groups(&self) -> Vec<(usize, usize)> {
        vec![(self.0.dim(), 2)]
    }
    fn outputs(&self) -> usize {
        self.0.dim()
    }
    fn residual<R: Algebra<F>>(&self, r: &R, a: &[Vec<R::Elem>]) -> Vec<R::Elem> {
        let c = self.0;
        let x = &a[0];
        let n = c.norm_in(r, x);
        let p = c.mul_in(r, x, &c.conj_in(r, x));
        p.iter().zip(&c.alg.unit).map(|(v, u)| r.sub(v, &r.scale(u, &n))).collect()
    }
}

struct QuadraticRelation<'a, F: Field>(&'a CompositionAlgebra<F>);

impl<F: Field> Identity<F> for QuadraticRelation<'_, F> {
    fn name(&self) -> String {
        "x^2 - t(x) x + n(x) 1 = 0".into()
    }
    fn groups(&self) -> Vec<(usize, usize)> {
        vec![(self.0.dim(), 2)]
    }
    fn outputs(&self) -> usize {
        self.0.dim()
    }
    fn residual<R: Algebra<F>>(&self, r: &R, a: &[Vec<R::Elem>]) -> Vec<R::Elem> {
        let c = self.0;
        let x = &a[0];
        let (t, n) = (c.trace_in(r, x), c.norm_in(r, x));
        let x2 = c.mul_in(r, x, x);
        (0..c.dim())
            .map(|i| r.add(&r.sub(&x2[i], &r.mul(&t, &x[i])), &r.scale(&c.alg.unit[i], &n)))
            .collect()
    }
}

struct ConjugateTrace<'a, F: Field>(&'a CompositionAlgebra<F>);

impl<F: Field> Identity<F> for ConjugateTrace<'_, F> {
    fn name(&self) -> String {
        "x + xbar = t(x) 1".into()
    }
    fn groups(&self) -> Vec<(usize, usize)> {
        vec![(self.0.dim(), 1)]
    }
    fn outputs(&self) -> usize {
        self.0.dim()
    }
    fn residual<R: Algebra<F>>(&self, r: &R, a: &[Vec<R::Elem>]) -> Vec<R::Elem> {
        let c = self.0;
        let x = &a[0];
        let t = c.trace_in(r, x);
        let xb = c.conj_in(r, x);
        (0..c.dim()).map(|i| r.sub(&r.add(&x[i], &xb[i]), &r.scale(&c.alg.unit[i], &t))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, Rationals};

    #[test]
    fn zorn_is_a_split_composition_algebra() {
        for p in [2, 3, 5] {
            let f = FiniteField::prime(p).unwrap();
            let z = CompositionAlgebra::zorn(&f);
            assert!(z.verify(&IdentityConfig::formal()).iter().all(|o| o.passed));
            assert_eq!(z.norm(&z.one()), 1);
            assert_eq!(z.trace_of(&z.one()), 2 % p);
            assert_eq!(z.norm(&z.alg.basis(0)), 0);
            assert!(z.is_nondegenerate());
        }
    }

    #[test]
    fn cayley_dickson_over_q() {
        let q = Rationals;
        let c = CompositionAlgebra::cayley_dickson(&CompositionAlgebra::base(&q), &q.from_i64(-1)).unwrap();
        assert_eq!(c.norm(&[q.from_i64(3), q.from_i64(4)]), q.from_i64(25));
        let h = CompositionAlgebra::cayley_dickson(&c, &q.from_i64(-1)).unwrap();
        assert_eq!(h.dim(), 4);
        assert!(!h.alg.is_commutative());
        let o = CompositionAlgebra::cayley_dickson(&h, &q.from_i64(-1)).unwrap();
        assert!(!o.alg.is_associative());
        assert_eq!(CompositionAlgebra::cayley_dickson(&o, &q.one()).unwrap_err(), Error::DimensionTooLarge);
    }
}
