use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{vec_from_json, vec_to_json, Algebra, Field, FieldDesc};
use crate::identity::{check_identity, Identity, IdentityConfig, IdentityOutcome};
use crate::linalg::Matrix;
use crate::poly::{CubicForm, Poly, PolyRing, QuadForm, QuadSystem};

/// A cubic norm structure (V, c, ♯, N) on F^n: the adjoint is given by n
/// quadratic forms, the norm by one cubic form.
#[derive(Clone, Debug)]
pub struct Cns<F: Field> {
    pub field: F,
    pub dim: usize,
    pub base: Vec<F::Elem>,
    pub sharp: Vec<Poly<F::Elem>>,
    pub norm: Poly<F::Elem>,
    pub label: String,
    sharp_sys: QuadSystem<F::Elem>,
    norm_form: CubicForm<F::Elem>,
    grad_sys: QuadSystem<F::Elem>,
    gram: Matrix<F::Elem>,
    gram_inv: Option<Matrix<F::Elem>>,
    gram_rows: Vec<Vec<(usize, F::Elem)>>,
    trace_lin: Vec<F::Elem>,
}

impl<F: Field> Cns<F> {
    pub fn new(
        field: &F,
        base: Vec<F::Elem>,
        sharp: Vec<Poly<F::Elem>>,
        norm: Poly<F::Elem>,
        label: impl Into<String>,
    ) -> Result<Self> {
        let f = field;
        let n = base.len();
        if sharp.len() != n {
            return Err(Error::InvalidInput(format!("{} adjoint coordinates for dimension {n}", sharp.len())));
        }
        let ring = PolyRing::new(f, n)?;
        let quads = sharp.iter().map(|p| QuadForm::from_poly(f, p)).collect::<Result<Vec<_>>>()?;
        let norm_form = CubicForm::from_poly(f, &norm)?;
        let grads: Vec<Poly<F::Elem>> = (0..n).map(|i| ring.derivative(&norm, i)).collect();
        let grad_quads = grads.iter().map(|p| QuadForm::from_poly(f, p)).collect::<Result<Vec<_>>>()?;
        // T(y,z) = ∂_yN(c) ∂_zN(c) - ∂_y∂_zN(c)
        let d: Vec<F::Elem> = grads.iter().map(|g| ring.eval(g, &base)).collect();
        let mut gram = Matrix::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                let hij = ring.eval(&ring.derivative(&grads[i], j), &base);
                gram.set(i, j, f.sub(&f.mul(&d[i], &d[j]), &hij));
            }
        }
        let gram_rows = (0..n)
            .map(|i| (0..n).filter(|&j| !f.is_zero(gram.get(i, j))).map(|j| (j, gram.get(i, j).clone())).collect())
            .collect();
        let trace_lin = gram.apply(f, &base);
        let gram_inv = gram.inverse(f);
        Ok(Cns {
            field: f.clone(),
            dim: n,
            base,
            sharp_sys: QuadSystem::new(n, &quads),
            norm_form,
            grad_sys: QuadSystem::new(n, &grad_quads),
            sharp,
            norm,
            label: label.into(),
            gram,
            gram_inv,
            gram_rows,
            trace_lin,
        })
    }

    pub fn ring(&self) -> PolyRing<F> {
        PolyRing::new(&self.field, self.dim).expect("dimension validated at construction")
    }

    pub fn basis(&self, i: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    pub fn zero(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim]
    }

    pub fn sharp_in<R: Algebra<F>>(&self, r: &R, x: &[R::Elem]) -> Vec<R::Elem> {
        self.sharp_sys.eval_in(r, x)
    }

    /// x × y = (x + y)^♯ - x^♯ - y^♯.
    pub fn cross_in<R: Algebra<F>>(&self, r: &R, x: &[R::Elem], y: &[R::Elem]) -> Vec<R::Elem> {
        self.sharp_sys.polar_in(r, x, y)
    }

    pub fn norm_in<R: Algebra<F>>(&self, r: &R, x: &[R::Elem]) -> R::Elem {
        self.norm_form.eval_in(r, x)
    }

    /// (∂_0N(x), ..., ∂_{n-1}N(x)).
    pub fn grad_in<R: Algebra<F>>(&self, r: &R, x: &[R::Elem]) -> Vec<R::Elem> {
        self.grad_sys.eval_in(r, x)
    }

    pub fn trace_in<R: Algebra<F>>(&self, r: &R, x: &[R::Elem], y: &[R::Elem]) -> R::Elem {
        let mut items_store = Vec::new();
        for (i, row) in self.gram_rows.iter().enumerate() {
            if r.is_zero(&x[i]) {
                continue;
            }
            let items: Vec<(&F::Elem, &R::Elem)> = row.iter().map(|(j, c)| (c, &y[*j])).collect();
            let gy = r.lincomb(&items);
            items_store.push(r.mul(&x[i], &gy));
        }
        r.sum(items_store.iter())
    }

    /// The linear trace T(x) = T(x, c).
    pub fn lin_trace_in<R: Algebra<F>>(&self, r: &R, x: &[R::Elem]) -> R::Elem {
        let items: Vec<(&F::Elem, &R::Elem)> = self.trace_lin.iter().zip(x).collect();
        r.lincomb(&items)
    }

    /// U_x y = T(x,y)x - x^♯ × y.
    pub fn u_in<R: Algebra<F>>(&self, r: &R, x: &[R::Elem], y: &[R::Elem]) -> Vec<R::Elem> {
        let t = self.trace_in(r, x, y);
        let xs = self.sharp_in(r, x);
        let cr = self.cross_in(r, &xs, y);
        x.iter().zip(&cr).map(|(a, b)| r.sub(&r.mul(&t, a), b)).collect()
    }

    pub fn sharp(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        self.sharp_in(&self.field, x)
    }

    pub fn cross(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        self.cross_in(&self.field, x, y)
    }

    pub fn norm(&self, x: &[F::Elem]) -> F::Elem {
        self.norm_in(&self.field, x)
    }

    pub fn trace(&self, x: &[F::Elem], y: &[F::Elem]) -> F::Elem {
        self.trace_in(&self.field, x, y)
    }

    pub fn lin_trace(&self, x: &[F::Elem]) -> F::Elem {
        self.lin_trace_in(&self.field, x)
    }

    pub fn u(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        self.u_in(&self.field, x, y)
    }

    /// Matrix of U_x (column j is U_x e_j).
    pub fn u_matrix(&self, x: &[F::Elem]) -> Matrix<F::Elem> {
        let cols: Vec<Vec<F::Elem>> = (0..self.dim).map(|j| self.u(x, &self.basis(j))).collect();
        Matrix::from_cols(&cols)
    }

    pub fn gram(&self) -> &Matrix<F::Elem> {
        &self.gram
    }

    pub fn gram_inverse(&self) -> Option<&Matrix<F::Elem>> {
        self.gram_inv.as_ref()
    }

    pub fn is_nonsingular(&self) -> bool {
        self.gram_inv.is_some()
    }

    /// x^{-1} = N(x)^{-1} x^♯.
    pub fn inverse(&self, x: &[F::Elem]) -> Result<Vec<F::Elem>> {
        let f = &self.field;
        let n = self.norm(x);
        let ni = f.inv(&n).ok_or_else(|| Error::NotInvertible(format!("N(x) = 0 for x = {}", crate::field::fmt_vec(f, x))))?;
        Ok(self.sharp(x).iter().map(|s| f.mul(&ni, s)).collect())
    }

    /// The isotope X^(p): base point p^{-1}, adjoint N(p) U_p^{-1} x^♯, norm N(p) N.
    pub fn isotope(&self, p: &[F::Elem]) -> Result<Cns<F>> {
        let f = &self.field;
        let np = self.norm(p);
        if f.is_zero(&np) {
            return Err(Error::NotInvertible("isotope requires N(p) != 0".into()));
        }
        let up_inv = self
            .u_matrix(p)
            .inverse(f)
            .ok_or_else(|| Error::NotInvertible("U_p is singular".into()))?;
        let m = up_inv.scale(f, &np);
        let ring = self.ring();
        let sharp: Vec<Poly<F::Elem>> = (0..self.dim)
            .map(|i| {
                let items: Vec<(&F::Elem, &Poly<F::Elem>)> = m.row(i).iter().zip(&self.sharp).collect();
                ring.lincomb(&items)
            })
            .collect();
        let norm = ring.scale(&np, &self.norm);
        Cns::new(f, self.inverse(p)?, sharp, norm, format!("{}^(p)", self.label))
    }

    pub fn verify_axioms(&self, cfg: &IdentityConfig) -> AxiomReport {
        let f = &self.field;
        let mut results = Vec::new();
        let cs = self.sharp(&self.base);
        results.push(IdentityOutcome::exact(
            "base point adjoint c^# = c",
            cs == self.base,
            (cs != self.base).then(|| format!("c^# = {}", crate::field::fmt_vec(f, &cs))),
        ));
        let nc = self.norm(&self.base);
        results.push(IdentityOutcome::exact(
            "base point norm N(c) = 1",
            f.is_one(&nc),
            (!f.is_one(&nc)).then(|| format!("N(c) = {}", f.fmt_elem(&nc))),
        ));
        results.push(check_identity(f, &UnitIdentity(self), cfg));
        results.push(check_identity(f, &GradientIdentity(self), cfg));
        results.push(check_identity(f, &AdjointIdentity(self), cfg));
        AxiomReport { label: self.label.clone(), results, nondegenerate: self.is_nonsingular() }
    }

    pub fn to_json(&self) -> Value {
        let ring = self.ring();
        json!({
            "label": self.label,
            "field": self.field.desc().to_json(),
            "dim": self.dim,
            "base_point": vec_to_json(&self.field, &self.base),
            "adjoint": self.sharp.iter().map(|p| ring.to_json(p)).collect::<Vec<_>>(),
            "norm": ring.to_json(&self.norm),
        })
    }

    pub fn from_json(field: &F, v: &Value) -> Result<Cns<F>> {
        let obj = v.as_object().ok_or_else(|| Error::InvalidInput("cubic norm structure must be an object".into()))?;
        if let Some(fd) = obj.get("field") {
            if FieldDesc::from_json(fd)? != field.desc() {
                return Err(Error::InvalidInput("field of the serialized structure does not match".into()));
            }
        }
        let base = vec_from_json(field, obj.get("base_point").ok_or_else(|| Error::InvalidInput("missing base_point".into()))?)?;
        let ring = PolyRing::new(field, base.len())?;
        let sharp = obj
            .get("adjoint")
            .and_then(|a| a.as_array())
            .ok_or_else(|| Error::InvalidInput("missing adjoint".into()))?
            .iter()
            .map(|p| ring.from_json(p))
            .collect::<Result<Vec<_>>>()?;
        let norm = ring.from_json(obj.get("norm").ok_or_else(|| Error::InvalidInput("missing norm".into()))?)?;
        let label = obj.get("label").and_then(|l| l.as_str()).unwrap_or("cns");
        Cns::new(field, base, sharp, norm, label)
    }
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub label: String,
    pub results: Vec<IdentityOutcome>,
    pub nondegenerate: bool,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn first_failure(&self) -> Option<&IdentityOutcome> {
        self.results.iter().find(|r| !r.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "structure": self.label,
            "passed": self.passed(),
            "nondegenerate_trace": self.nondegenerate,
            "identities": self.results.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        })
    }
}

/// c × x = T(x)c - x.
pub struct UnitIdentity<'a, F: Field>(pub &'a Cns<F>);

impl<F: Field> Identity<F> for UnitIdentity<'_, F> {
    fn name(&self) -> String {
        "unit identity c x x = T(x)c - x".into()
    }
    fn groups(&self) -> Vec<(usize, usize)> {
        vec![(self.0.dim, 1)]
    }
    fn outputs(&self) -> usize {
        self.0.dim
    }
    fn residual<R: Algebra<F>>(&self, r: &R, a: &[Vec<R::Elem>]) -> Vec<R::Elem> {
        let x = &a[0];
        let c: Vec<R::Elem> = self.0.base.iter().map(|v| r.embed(v)).collect();
        let lhs = self.0.cross_in(r, &c, x);
        let t = self.0.lin_trace_in(r, x);
        lhs.iter()
            .zip(c.iter().zip(x))
            .map(|(l, (ci, xi))| r.sub(l, &r.sub(&r.mul(&t, ci), xi)))
            .collect()
    }
}

/// ∂_yN(x) = T(x^♯, y).
pub struct GradientIdentity<'a, F: Field>(pub &'a Cns<F>);

impl<F: Field> Identity<F> for GradientIdentity<'_, F> {
    fn name(&self) -> String {
        "gradient identity d_y N(x) = T(x^#, y)".into()
    }
    fn groups(&self) -> Vec<(usize, usize)> {
        vec![(self.0.dim, 2), (self.0.dim, 1)]
    }
    fn outputs(&self) -> usize {
        1
    }
    fn residual<R: Algebra<F>>(&self, r: &R, a: &[Vec<R::Elem>]) -> Vec<R::Elem> {
        let (x, y) = (&a[0], &a[1]);
        let g = self.0.grad_in(r, x);
        let prods: Vec<R::Elem> = g.iter().zip(y).map(|(gi, yi)| r.mul(gi, yi)).collect();
        let lhs = r.sum(prods.iter());
        let xs = self.0.sharp_in(r, x);
        vec![r.sub(&lhs, &self.0.trace_in(r, &xs, y))]
    }
}

/// x^♯♯ = N(x)x.
pub struct AdjointIdentity<'a, F: Field>(pub &'a Cns<F>);

impl<F: Field> Identity<F> for AdjointIdentity<'_, F> {
    fn name(&self) -> String {
        "adjoint identity x^## = N(x)x".into()
    }
    fn groups(&self) -> Vec<(usize, usize)> {
        vec![(self.0.dim, 4)]
    }
    fn outputs(&self) -> usize {
        self.0.dim
    }
    fn residual<R: Algebra<F>>(&self, r: &R, a: &[Vec<R::Elem>]) -> Vec<R::Elem> {
        let x = &a[0];
        let xss = self.0.sharp_in(r, &self.0.sharp_in(r, x));
        let n = self.0.norm_in(r, x);
        xss.iter().zip(x).map(|(s, xi)| r.sub(s, &r.mul(&n, xi))).collect()
    }
}

/// N(U_x y) = N(x)^2 N(y).
pub struct NormComposition<'a, F: Field>(pub &'a Cns<F>);

impl<F: Field> Identity<F> for NormComposition<'_, F> {
    fn name(&self) -> String {
        "norm composition N(U_x y) = N(x)^2 N(y)".into()
    }
    fn groups(&self) -> Vec<(usize, usize)> {
        vec![(self.0.dim, 6), (self.0.dim, 3)]
    }
    fn outputs(&self) -> usize {
        1
    }
    fn residual<R: Algebra<F>>(&self, r: &R, a: &[Vec<R::Elem>]) -> Vec<R::Elem> {
        let (x, y) = (&a[0], &a[1]);
        let lhs = self.0.norm_in(r, &self.0.u_in(r, x, y));
        let nx = self.0.norm_in(r, x);
        let rhs = r.mul(&r.mul(&nx, &nx), &self.0.norm_in(r, y));
        vec![r.sub(&lhs, &rhs)]
    }
}

/// N(U_x c) = N(x)^2.
pub struct NormCompositionAtUnit<'a, F: Field>(pub &'a Cns<F>);

impl<F: Field> Identity<F> for NormCompositionAtUnit<'_, F> {
    fn name(&self) -> String {
        "norm composition at the unit N(U_x c) = N(x)^2".into()
    }
    fn groups(&self) -> Vec<(usize, usize)> {
        vec![(self.0.dim, 6)]
    }
    fn outputs(&self) -> usize {
        1
    }
    fn residual<R: Algebra<F>>(&self, r: &R, a: &[Vec<R::Elem>]) -> Vec<R::Elem> {
        let x = &a[0];
        let c: Vec<R::Elem> = self.0.base.iter().map(|v| r.embed(v)).collect();
        let lhs = self.0.norm_in(r, &self.0.u_in(r, x, &c));
        let nx = self.0.norm_in(r, x);
        vec![r.sub(&lhs, &r.mul(&nx, &nx))]
    }
}
