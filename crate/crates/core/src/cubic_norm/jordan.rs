use std::sync::Arc;

use crate::algebra::StructAlgebra;
use crate::error::{Error, Result};
use crate::field::{Algebra, Field};
use crate::identity::{check_identity, Identity, IdentityConfig, IdentityOutcome};
use crate::linalg::Matrix;
use crate::poly::{Poly, PolyRing, QuadForm, QuadSystem};

use super::cns::{Cns, NormComposition, NormCompositionAtUnit};

/// A quadratic Jordan algebra on F^n: U_x is an n×n matrix whose entries are
/// quadratic forms in x; entry (i, j) is coordinate i of U_x e_j.
#[derive(Clone, Debug)]
pub struct QuadraticJordan<F: Field> {
    pub field: F,
    pub dim: usize,
    pub unit: Vec<F::Elem>,
    pub label: String,
    u_polys: Vec<Poly<F::Elem>>,
    u_forms: Vec<QuadForm<F::Elem>>,
    u_sys: QuadSystem<F::Elem>,
    pub cns: Option<Arc<Cns<F>>>,
}

impl<F: Field> QuadraticJordan<F> {
    fn from_polys(field: &F, dim: usize, unit: Vec<F::Elem>, u_polys: Vec<Poly<F::Elem>>, label: String) -> Result<Self> {
        let u_forms = u_polys.iter().map(|p| QuadForm::from_poly(field, p)).collect::<Result<Vec<_>>>()?;
        Ok(QuadraticJordan {
            field: field.clone(),
            dim,
            unit,
            label,
            u_sys: QuadSystem::new(dim, &u_forms),
            u_polys,
            u_forms,
            cns: None,
        })
    }

    /// The Jordan algebra of a cubic norm structure after checking its axioms.
    pub fn from_cns(cns: Arc<Cns<F>>, cfg: &IdentityConfig) -> Result<Self> {
        let rep = cns.verify_axioms(cfg);
        if let Some(bad) = rep.first_failure() {
            return Err(Error::AxiomFailure(bad.name.clone()));
        }
        Self::from_verified(cns)
    }

    /// U_x y = T(x,y)x - x^♯ × y for a structure already known to satisfy the
    /// axioms.
    pub fn from_verified(cns: Arc<Cns<F>>) -> Result<Self> {
        let n = cns.dim;
        let ring = cns.ring();
        let x = ring.vars(0, n);
        let xs = cns.sharp_in(&ring, &x);
        let mut u_polys = vec![Poly::zero(); n * n];
        for j in 0..n {
            let ej: Vec<Poly<F::Elem>> = cns.basis(j).iter().map(|c| ring.constant(c)).collect();
            let col = cns.u_in_with_sharp(&ring, &x, &xs, &ej);
            for (i, p) in col.into_iter().enumerate() {
                u_polys[i * n + j] = p;
            }
        }
        let mut j = Self::from_polys(&cns.field, n, cns.base.clone(), u_polys, cns.label.clone())?;
        j.cns = Some(cns);
        Ok(j)
    }

    /// A^+ for an associative algebra: U_x y = x y x.
    pub fn aplus(a: &StructAlgebra<F>, label: impl Into<String>) -> Result<Self> {
        if let Some((i, j, k)) = a.first_nonassociative_triple() {
            return Err(Error::NotAssociative(format!("(e{i} e{j}) e{k} != e{i} (e{j} e{k})")));
        }
        let n = a.dim;
        let ring = PolyRing::new(&a.field, n)?;
        let x = ring.vars(0, n);
        let mut u_polys = vec![Poly::zero(); n * n];
        for j in 0..n {
            let ej: Vec<Poly<F::Elem>> = a.basis(j).iter().map(|c| ring.constant(c)).collect();
            let col = a.mul_in(&ring, &a.mul_in(&ring, &x, &ej), &x);
            for (i, p) in col.into_iter().enumerate() {
                u_polys[i * n + j] = p;
            }
        }
        Self::from_polys(&a.field, n, a.unit.clone(), u_polys, label.into())
    }

    pub fn ring(&self) -> PolyRing<F> {
        PolyRing::new(&self.field, self.dim).expect("dimension validated at construction")
    }

    pub fn u_poly(&self, i: usize, j: usize) -> &Poly<F::Elem> {
        &self.u_polys[i * self.dim + j]
    }

    /// Row-major entries of U_x.
    pub fn u_op_in<R: Algebra<F>>(&self, r: &R, x: &[R::Elem]) -> Vec<R::Elem> {
        self.u_sys.eval_in(r, x)
    }

    pub fn apply_in<R: Algebra<F>>(&self, r: &R, op: &[R::Elem], y: &[R::Elem]) -> Vec<R::Elem> {
        let n = self.dim;
        (0..n)
            .map(|i| {
                let prods: Vec<R::Elem> = (0..n)
                    .filter(|&j| !r.is_zero(&op[i * n + j]) && !r.is_zero(&y[j]))
                    .map(|j| r.mul(&op[i * n + j], &y[j]))
                    .collect();
                r.sum(prods.iter())
            })
            .collect()
    }

    pub fn compose_in<R: Algebra<F>>(&self, r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        let n = self.dim;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let prods: Vec<R::Elem> = (0..n)
                    .filter(|&k| !r.is_zero(&a[i * n + k]) && !r.is_zero(&b[k * n + j]))
                    .map(|k| r.mul(&a[i * n + k], &b[k * n + j]))
                    .collect();
                out.push(r.sum(prods.iter()));
            }
        }
        out
    }

    pub fn u_in<R: Algebra<F>>(&self, r: &R, x: &[R::Elem], y: &[R::Elem]) -> Vec<R::Elem> {
        if let Some(cns) = &self.cns {
            return cns.u_in(r, x, y);
        }
        let op = self.u_op_in(r, x);
        self.apply_in(r, &op, y)
    }

    /// Row-major entries of V_{x,y}: z ↦ {x y z} = U_{x,z} y.
    pub fn v_op_in<R: Algebra<F>>(&self, r: &R, x: &[R::Elem], y: &[R::Elem]) -> Vec<R::Elem> {
        let n = self.dim;
        let mut buckets: Vec<Vec<(&F::Elem, R::Elem)>> = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in 0..n {
                if r.is_zero(&y[j]) {
                    continue;
                }
                for (a, b, c) in &self.u_forms[i * n + j].terms {
                    let (a, b) = (*a as usize, *b as usize);
                    // polar of c x_a x_b in direction e_k
                    if !r.is_zero(&x[a]) {
                        buckets[i * n + b].push((c, r.mul(&x[a], &y[j])));
                    }
                    if !r.is_zero(&x[b]) {
                        buckets[i * n + a].push((c, r.mul(&x[b], &y[j])));
                    }
                }
            }
        }
        buckets
            .iter()
            .map(|items| {
                let refs: Vec<(&F::Elem, &R::Elem)> = items.iter().map(|(c, p)| (*c, p)).collect();
                r.lincomb(&refs)
            })
            .collect()
    }

    /// {x y z}.
    pub fn triple_in<R: Algebra<F>>(&self, r: &R, x: &[R::Elem], y: &[R::Elem], z: &[R::Elem]) -> Vec<R::Elem> {
        if let Some(cns) = &self.cns {
            // T(x,y)z + T(z,y)x - (x × z) × y
            let (a, b) = (cns.trace_in(r, x, y), cns.trace_in(r, z, y));
            let c = cns.cross_in(r, &cns.cross_in(r, x, z), y);
            return (0..self.dim).map(|i| r.sub(&r.add(&r.mul(&a, &z[i]), &r.mul(&b, &x[i])), &c[i])).collect();
        }
        let v = self.v_op_in(r, x, y);
        self.apply_in(r, &v, z)
    }

    pub fn u(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        self.u_in(&self.field, x, y)
    }

    pub fn u_matrix(&self, x: &[F::Elem]) -> Matrix<F::Elem> {
        let e = self.u_op_in(&self.field, x);
        Matrix::from_rows(e.chunks(self.dim).map(|r| r.to_vec()).collect())
    }

    pub fn is_invertible(&self, x: &[F::Elem]) -> bool {
        !self.field.is_zero(&self.u_matrix(x).det(&self.field))
    }

    /// x^{-1} = U_x^{-1} x; for algebras coming from a cubic norm structure
    /// this is cross-checked against N(x)^{-1} x^♯.
    pub fn inverse(&self, x: &[F::Elem]) -> Result<Vec<F::Elem>> {
        let f = &self.field;
        if let Some(cns) = &self.cns {
            if f.is_zero(&cns.norm(x)) {
                return Err(Error::NotInvertible(format!("N(x) = 0 for x = {}", crate::field::fmt_vec(f, x))));
            }
        }
        let inv = self
            .u_matrix(x)
            .solve(f, x)
            .ok_or_else(|| Error::NotInvertible(format!("U_x is singular for x = {}", crate::field::fmt_vec(f, x))))?;
        if let Some(cns) = &self.cns {
            let other = cns.inverse(x)?;
            if other != inv {
                return Err(Error::Inconsistent("U_x^{-1} x differs from N(x)^{-1} x^#".into()));
            }
        }
        Ok(inv)
    }

    /// x^0 = 1, x^1 = x, x^{n+2} = U_x x^n; negative powers through x^{-1}.
    pub fn power(&self, x: &[F::Elem], n: i64) -> Result<Vec<F::Elem>> {
        if n < 0 {
            let inv = self.inverse(x)?;
            return self.power(&inv, -n);
        }
        let ux = self.u_matrix(x);
        let mut even = self.unit.clone();
        let mut odd = x.to_vec();
        let mut k = n;
        let f = &self.field;
        while k >= 2 {
            even = ux.apply(f, &even);
            odd = ux.apply(f, &odd);
            k -= 2;
        }
        Ok(if k == 0 { even } else { odd })
    }

    /// J^(p): U^(p)_x = U_x U_p, unit p^{-1}.
    pub fn isotope(&self, p: &[F::Elem]) -> Result<Self> {
        let f = &self.field;
        let n = self.dim;
        let up = self.u_matrix(p);
        let unit = self.inverse(p)?;
        let ring = self.ring();
        let mut u_polys = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let items: Vec<(&F::Elem, &Poly<F::Elem>)> =
                    (0..n).map(|k| (up.get(k, j), &self.u_polys[i * n + k])).collect();
                u_polys.push(ring.lincomb(&items));
            }
        }
        let mut out = Self::from_polys(f, n, unit, u_polys, format!("{}^(p)", self.label))?;
        if let Some(cns) = &self.cns {
            out.cns = Some(Arc::new(cns.isotope(p)?));
        }
        Ok(out)
    }

    pub fn unit_is_identity(&self) -> bool {
        self.u_matrix(&self.unit) == Matrix::identity(&self.field, self.dim)
    }

    /// Unit law, fundamental formula, third axiom and, for algebras coming from
    /// a cubic norm structure, norm composition.
    pub fn verify(&self, cfg: &IdentityConfig) -> Vec<IdentityOutcome> {
        let f = &self.field;
        let mut out = vec![IdentityOutcome::exact("unit law U_1 = Id", self.unit_is_identity(), None)];
        out.push(check_identity(f, &FundamentalFormula(self), cfg));
        out.push(check_identity(f, &ThirdAxiom(self), cfg));
        if let Some(cns) = &self.cns {
            out.push(check_identity(f, &NormCompositionAtUnit(cns), cfg));
            out.push(check_identity(f, &NormComposition(cns), cfg));
        }
        out
    }
}

impl<F: Field> Cns<F> {
    fn u_in_with_sharp<R: Algebra<F>>(&self, r: &R, x: &[R::Elem], xs: &[R::Elem], y: &[R::Elem]) -> Vec<R::Elem> {
        let t = self.trace_in(r, x, y);
        let cr = self.cross_in(r, xs, y);
        x.iter().zip(&cr).map(|(a, b)| r.sub(&r.mul(&t, a), b)).collect()
    }
}

/// U_{U_x y} = U_x U_y U_x, applied to a third variable z.
pub struct FundamentalFormula<'a, F: Field>(pub &'a QuadraticJordan<F>);

impl<F: Field> Identity<F> for FundamentalFormula<'_, F> {
    fn name(&self) -> String {
        "fundamental formula U_{U_x y} z = U_x U_y U_x z".into()
    }
    fn groups(&self) -> Vec<(usize, usize)> {
        vec![(self.0.dim, 4), (self.0.dim, 2), (self.0.dim, 1)]
    }
    fn outputs(&self) -> usize {
        self.0.dim
    }
    fn residual<R: Algebra<F>>(&self, r: &R, a: &[Vec<R::Elem>]) -> Vec<R::Elem> {
        let j = self.0;
        let (x, y, z) = (&a[0], &a[1], &a[2]);
        let lhs = j.u_in(r, &j.u_in(r, x, y), z);
        let rhs = j.u_in(r, x, &j.u_in(r, y, &j.u_in(r, x, z)));
        lhs.iter().zip(&rhs).map(|(l, rr)| r.sub(l, rr)).collect()
    }
}

/// U_x V_{y,x} = V_{x,y} U_x, applied to a third variable z.
pub struct ThirdAxiom<'a, F: Field>(pub &'a QuadraticJordan<F>);

impl<F: Field> Identity<F> for ThirdAxiom<'_, F> {
    fn name(&self) -> String {
        "U_x V_{y,x} z = V_{x,y} U_x z".into()
    }
    fn groups(&self) -> Vec<(usize, usize)> {
        vec![(self.0.dim, 3), (self.0.dim, 1), (self.0.dim, 1)]
    }
    fn outputs(&self) -> usize {
        self.0.dim
    }
    fn residual<R: Algebra<F>>(&self, r: &R, a: &[Vec<R::Elem>]) -> Vec<R::Elem> {
        let j = self.0;
        let (x, y, z) = (&a[0], &a[1], &a[2]);
        let lhs = j.u_in(r, x, &j.triple_in(r, y, x, z));
        let rhs = j.triple_in(r, x, y, &j.u_in(r, x, z));
        lhs.iter().zip(&rhs).map(|(l, rr)| r.sub(l, rr)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, Rationals, Ring};

    fn split3<F: Field>(f: &F) -> Arc<Cns<F>> {
        let r = PolyRing::new(f, 3).unwrap();
        let x = r.vars(0, 3);
        let sharp = vec![r.mul(&x[1], &x[2]), r.mul(&x[0], &x[2]), r.mul(&x[0], &x[1])];
        let norm = r.mul(&r.mul(&x[0], &x[1]), &x[2]);
        Arc::new(Cns::new(f, vec![f.one(); 3], sharp, norm, "split cubic").unwrap())
    }

    #[test]
    fn split_cubic_jordan_identities() {
        let q = Rationals;
        let j = QuadraticJordan::from_cns(split3(&q), &IdentityConfig::formal()).unwrap();
        for o in j.verify(&IdentityConfig::formal()) {
            assert!(o.passed, "{}: {:?}", o.name, o.failure);
        }
    }

    #[test]
    fn negative_power_inverts_componentwise() {
        let q = Rationals;
        let j = QuadraticJordan::from_verified(split3(&q)).unwrap();
        let x: Vec<_> = [1, 2, 3].iter().map(|&c| q.from_i64(c)).collect();
        let inv = j.power(&x, -1).unwrap();
        let want = vec![q.one(), q.from_ratio(1, 2).unwrap(), q.from_ratio(1, 3).unwrap()];
        assert_eq!(inv, want);
        assert_eq!(j.power(&x, 3).unwrap(), vec![q.from_i64(1), q.from_i64(8), q.from_i64(27)]);
        assert_eq!(j.power(&j.unit, 5).unwrap(), j.unit);
    }

    #[test]
    fn singular_elements_are_not_invertible() {
        let f = FiniteField::prime(7).unwrap();
        let j = QuadraticJordan::from_verified(split3(&f)).unwrap();
        assert!(matches!(j.inverse(&[1, 0, 2]), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn isotope_unit_and_operator() {
        let f = FiniteField::prime(7).unwrap();
        let j = QuadraticJordan::from_verified(split3(&f)).unwrap();
        let p = vec![2, 3, 5];
        let jp = j.isotope(&p).unwrap();
        assert!(jp.unit_is_identity());
        let x = vec![1, 4, 6];
        assert_eq!(jp.u_matrix(&x), j.u_matrix(&x).mul(&f, &j.u_matrix(&p)));
    }
}
