use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Algebra, Field};
use crate::identity::Identity;
use crate::linalg::Matrix;
use crate::poly::{mono_vars, Poly};

use super::cns::Cns;
use super::jordan::QuadraticJordan;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertKind {
    Isomorphism,
    Isotopy,
    Rejected,
}

impl CertKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CertKind::Isomorphism => "isomorphism",
            CertKind::Isotopy => "isotopy",
            CertKind::Rejected => "rejected",
        }
    }
}

/// Outcome of checking whether a linear map between two cubic norm
/// structures is a norm similarity (and then an isotopy) or an isomorphism.
#[derive(Clone, Debug)]
pub struct IsotopyCertificate<F: Field> {
    pub source: String,
    pub target: String,
    pub matrix: Matrix<F::Elem>,
    pub multiplier: Option<F::Elem>,
    pub kind: CertKind,
    pub reason: Option<String>,
    pub checks: Vec<String>,
}

impl<F: Field> IsotopyCertificate<F> {
    pub fn is_isomorphism(&self) -> bool {
        self.kind == CertKind::Isomorphism
    }

    /// Isomorphisms are isotopies too.
    pub fn is_isotopy(&self) -> bool {
        self.kind != CertKind::Rejected
    }

    pub fn to_json(&self, f: &F) -> Value {
        let mut v = json!({
            "source": self.source,
            "target": self.target,
            "kind": self.kind.as_str(),
            "matrix": self.matrix.to_json(f),
            "checks": self.checks,
        });
        if let Some(m) = &self.multiplier {
            v["multiplier"] = f.elem_to_json(m);
        }
        if let Some(r) = &self.reason {
            v["reason"] = json!(r);
        }
        v
    }
}

/// Sparse rows of a matrix.
fn sparse_rows<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Vec<Vec<(usize, F::Elem)>> {
    (0..m.rows)
        .map(|i| (0..m.cols).filter(|&j| !f.is_zero(m.get(i, j))).map(|j| (j, m.get(i, j).clone())).collect())
        .collect()
}

/// Quadratic forms stored densely over pairs a ≤ b.
struct DenseQuad<E> {
    n: usize,
    coef: Vec<E>,
}

impl<E: Clone + PartialEq> DenseQuad<E> {
    fn zero<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        DenseQuad { n, coef: vec![f.zero(); n * n] }
    }

    fn idx(&self, a: usize, b: usize) -> usize {
        if a <= b {
            a * self.n + b
        } else {
            b * self.n + a
        }
    }

    fn from_poly<F: Field<Elem = E>>(f: &F, n: usize, p: &Poly<E>) -> Self {
        let mut q = Self::zero(f, n);
        for (m, c) in &p.terms {
            let v = mono_vars(*m);
            let i = q.idx(v[0], v[1]);
            q.coef[i] = f.add(&q.coef[i], c);
        }
        q
    }

    /// q(Mx) where M is given by sparse rows.
    fn substitute<F: Field<Elem = E>>(f: &F, p: &Poly<E>, rows: &[Vec<(usize, E)>], n: usize) -> Self {
        let mut q = Self::zero(f, n);
        for (m, c) in &p.terms {
            let v = mono_vars(*m);
            for (i, mi) in &rows[v[0]] {
                let cm = f.mul(c, mi);
                for (j, mj) in &rows[v[1]] {
                    let k = q.idx(*i, *j);
                    let t = f.mul(&cm, mj);
                    f.add_assign(&mut q.coef[k], &t);
                }
            }
        }
        q
    }
}

/// N'(Mx) as dense coefficients over sorted index triples.
fn substitute_cubic<F: Field>(f: &F, p: &Poly<F::Elem>, rows: &[Vec<(usize, F::Elem)>], n: usize) -> Vec<F::Elem> {
    let mut acc = vec![f.zero(); n * n * n];
    for (m, c) in &p.terms {
        let v = mono_vars(*m);
        for (i, mi) in &rows[v[0]] {
            let ci = f.mul(c, mi);
            for (j, mj) in &rows[v[1]] {
                let cij = f.mul(&ci, mj);
                for (k, mk) in &rows[v[2]] {
                    let mut s = [*i, *j, *k];
                    s.sort_unstable();
                    let idx = (s[0] * n + s[1]) * n + s[2];
                    let t = f.mul(&cij, mk);
                    f.add_assign(&mut acc[idx], &t);
                }
            }
        }
    }
    acc
}

fn dense_cubic<F: Field>(f: &F, p: &Poly<F::Elem>, n: usize) -> Vec<F::Elem> {
    let mut acc = vec![f.zero(); n * n * n];
    for (m, c) in &p.terms {
        let v = mono_vars(*m);
        let idx = (v[0] * n + v[1]) * n + v[2];
        acc[idx] = f.add(&acc[idx], c);
    }
    acc
}

/// Checks L·(Q(Mx)) = μ·P(x) coordinatewise, where Q are the adjoint forms of
/// `outer` (substituted through M) and P those of `inner`.
fn adjoint_relation<F: Field>(
    f: &F,
    inner: &Cns<F>,
    outer: &Cns<F>,
    m: &Matrix<F::Elem>,
    l: &Matrix<F::Elem>,
    mu: &F::Elem,
) -> bool {
    let n = inner.dim;
    let rows = sparse_rows(f, m);
    let subst: Vec<DenseQuad<F::Elem>> = outer.sharp.iter().map(|p| DenseQuad::substitute(f, p, &rows, n)).collect();
    for k in 0..n {
        let want = DenseQuad::from_poly(f, n, &inner.sharp[k]);
        let lrow: Vec<(usize, &F::Elem)> = (0..n).filter(|&i| !f.is_zero(l.get(k, i))).map(|i| (i, l.get(k, i))).collect();
        for idx in 0..n * n {
            let got = lrow.iter().fold(f.zero(), |acc, (i, c)| {
                if f.is_zero(&subst[*i].coef[idx]) {
                    acc
                } else {
                    f.add(&acc, &f.mul(c, &subst[*i].coef[idx]))
                }
            });
            if got != f.mul(mu, &want.coef[idx]) {
                return false;
            }
        }
    }
    true
}

/// The trace adjoint M^♯ = G^{-1} M^T G', characterized by
/// T(x, M^♯ z) = T'(Mx, z).
pub fn trace_adjoint<F: Field>(src: &Cns<F>, dst: &Cns<F>, m: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    let f = &src.field;
    let gi = src.gram_inverse().ok_or(Error::SingularStructure)?;
    Ok(gi.mul(f, &m.transpose()).mul(f, dst.gram()))
}

/// Decides whether `m: src → dst` is a norm similarity N'∘M = μN, an
/// isomorphism (additionally M c = c'), or neither.
///
/// Isomorphisms are re-checked for adjoint compatibility M x^♯ = (Mx)^♯'.
/// For isotopies the structural identity U'_{Mx} = M U_x M^♯ is established
/// through the two quadratic identities
///   M^♯ (Mx)^♯' = μ x^♯  and  M (M^♯ a)^♯ = μ a^♯',
/// which together imply it via U_x y = T(x,y)x - x^♯ × y and polarization.
/// A failure of any of these after the norm check passed contradicts the
/// theory and is reported as an error.
pub fn certify_map<F: Field>(src: &Cns<F>, dst: &Cns<F>, m: &Matrix<F::Elem>) -> Result<IsotopyCertificate<F>> {
    let f = &src.field;
    let n = src.dim;
    let mut cert = IsotopyCertificate {
        source: src.label.clone(),
        target: dst.label.clone(),
        matrix: m.clone(),
        multiplier: None,
        kind: CertKind::Rejected,
        reason: None,
        checks: Vec::new(),
    };
    if m.rows != dst.dim || m.cols != n {
        cert.reason = Some(format!("matrix is {}x{}, expected {}x{}", m.rows, m.cols, dst.dim, n));
        return Ok(cert);
    }
    if !src.is_nonsingular() || !dst.is_nonsingular() {
        return Err(Error::SingularStructure);
    }
    if dst.dim != n {
        cert.reason = Some("dimensions differ".into());
        return Ok(cert);
    }
    if f.is_zero(&m.det(f)) {
        cert.reason = Some("map is not bijective".into());
        return Ok(cert);
    }
    let rows = sparse_rows(f, m);
    let got = substitute_cubic(f, &dst.norm, &rows, n);
    let want = dense_cubic(f, &src.norm, n);
    let Some(pos) = want.iter().position(|c| !f.is_zero(c)) else {
        cert.reason = Some("source norm vanishes".into());
        return Ok(cert);
    };
    let mu = f.div(&got[pos], &want[pos]).expect("nonzero coefficient");
    if f.is_zero(&mu) || got.iter().zip(&want).any(|(g, w)| *g != f.mul(&mu, w)) {
        cert.reason = Some("N' o M is not a scalar multiple of N".into());
        return Ok(cert);
    }
    cert.checks.push("norm similarity N' o M = mu N".into());
    cert.multiplier = Some(mu.clone());
    let mc = m.apply(f, &src.base);
    if mc == dst.base {
        if !f.is_one(&mu) {
            return Err(Error::Inconsistent("base points match but the multiplier is not 1".into()));
        }
        cert.checks.push("base point M c = c'".into());
        // M x^♯ = (Mx)^♯'
        if !adjoint_relation(f, src, dst, m, &m.inverse(f).expect("bijective"), &f.one()) {
            return Err(Error::Inconsistent(
                "norm- and unit-preserving map fails adjoint compatibility".into(),
            ));
        }
        cert.checks.push("adjoint compatibility M x^# = (Mx)^#'".into());
        cert.kind = CertKind::Isomorphism;
        return Ok(cert);
    }
    let ms = trace_adjoint(src, dst, m)?;
    if !adjoint_relation(f, src, dst, m, &ms, &mu) {
        return Err(Error::Inconsistent("norm similarity fails M^# (Mx)^#' = mu x^#".into()));
    }
    if !adjoint_relation(f, dst, src, &ms, m, &mu) {
        return Err(Error::Inconsistent("norm similarity fails M (M^# a)^# = mu a^#'".into()));
    }
    cert.checks.push("structural identity U'_{Mx} = M U_x M^#".into());
    cert.kind = CertKind::Isotopy;
    Ok(cert)
}

/// U'_{Mx} = M U_x M^♯ checked directly on the operators (quadratic in x).
pub struct StructuralIdentity<'a, F: Field> {
    pub src: &'a QuadraticJordan<F>,
    pub dst: &'a QuadraticJordan<F>,
    pub m: &'a Matrix<F::Elem>,
    pub m_sharp: &'a Matrix<F::Elem>,
}

impl<F: Field> Identity<F> for StructuralIdentity<'_, F> {
    fn name(&self) -> String {
        "structural identity U'_{Mx} = M U_x M^#".into()
    }
    fn groups(&self) -> Vec<(usize, usize)> {
        vec![(self.src.dim, 2)]
    }
    fn outputs(&self) -> usize {
        self.src.dim * self.src.dim
    }
    fn residual<R: Algebra<F>>(&self, r: &R, a: &[Vec<R::Elem>]) -> Vec<R::Elem> {
        let n = self.src.dim;
        let lift = |m: &Matrix<F::Elem>| -> Vec<R::Elem> {
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| r.embed(m.get(i, j))).collect()
        };
        let x = &a[0];
        let mx: Vec<R::Elem> = (0..n)
            .map(|i| {
                let items: Vec<(&F::Elem, &R::Elem)> = self.m.row(i).iter().zip(x.iter()).collect();
                r.lincomb(&items)
            })
            .collect();
        let lhs = self.dst.u_op_in(r, &mx);
        let ux = self.src.u_op_in(r, x);
        let rhs = self.src.compose_in(r, &self.src.compose_in(r, &lift(self.m), &ux), &lift(self.m_sharp));
        lhs.iter().zip(&rhs).map(|(l, rr)| r.sub(l, rr)).collect()
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::field::{FiniteField, Rationals, Ring};
    use crate::identity::{check_identity, IdentityConfig};
    use crate::poly::PolyRing;

    fn split3<F: Field>(f: &F) -> Cns<F> {
        let r = PolyRing::new(f, 3).unwrap();
        let x = r.vars(0, 3);
        let sharp = vec![r.mul(&x[1], &x[2]), r.mul(&x[0], &x[2]), r.mul(&x[0], &x[1])];
        let norm = r.mul(&r.mul(&x[0], &x[1]), &x[2]);
        Cns::new(f, vec![f.one(); 3], sharp, norm, "split cubic").unwrap()
    }

    #[test]
    fn identity_is_an_isomorphism() {
        let q = Rationals;
        let x = split3(&q);
        let c = certify_map(&x, &x, &Matrix::identity(&q, 3)).unwrap();
        assert_eq!(c.kind, CertKind::Isomorphism);
        assert_eq!(c.multiplier, Some(q.one()));
    }

    #[test]
    fn scalars_are_isotopies_with_cubed_multiplier() {
        let q = Rationals;
        let x = split3(&q);
        let lam = q.from_i64(3);
        let c = certify_map(&x, &x, &Matrix::scalar(&q, 3, &lam)).unwrap();
        assert_eq!(c.kind, CertKind::Isotopy);
        assert_eq!(c.multiplier, Some(q.from_i64(27)));
    }

    #[test]
    fn u_operators_have_multiplier_norm_squared() {
        let f = FiniteField::prime(7).unwrap();
        let x = split3(&f);
        let p = vec![2, 3, 4];
        let up = x.u_matrix(&p);
        let c = certify_map(&x, &x, &up).unwrap();
        let np = x.norm(&p);
        assert_eq!(c.kind, CertKind::Isotopy);
        assert_eq!(c.multiplier, Some(f.mul(&np, &np)));
    }

    #[test]
    fn permutations_are_automorphisms_and_projections_are_rejected() {
        let f = FiniteField::prime(5).unwrap();
        let x = split3(&f);
        let perm = Matrix::from_rows(vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]);
        assert!(certify_map(&x, &x, &perm).unwrap().is_isomorphism());
        let bad = Matrix::from_rows(vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(certify_map(&x, &x, &bad).unwrap().kind, CertKind::Rejected);
    }

    #[test]
    fn adjoint_reduction_agrees_with_the_operator_identity() {
        let f = FiniteField::prime(7).unwrap();
        let x = Arc::new(split3(&f));
        let j = QuadraticJordan::from_verified(x.clone()).unwrap();
        let m = x.u_matrix(&[2, 3, 4]).mul(&f, &Matrix::from_rows(vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]));
        let ms = trace_adjoint(&x, &x, &m).unwrap();
        let id = StructuralIdentity { src: &j, dst: &j, m: &m, m_sharp: &ms };
        assert!(check_identity(&f, &id, &IdentityConfig::formal()).passed);
        assert_eq!(certify_map(&x, &x, &m).unwrap().kind, CertKind::Isotopy);
    }
}
