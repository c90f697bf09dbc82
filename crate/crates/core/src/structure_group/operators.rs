//! Elements of Str(J) for J = Her₃(C, Γ) that normalize the diagonal
//! subalgebra E: permutations of the diagonal cells and the operators U_w.

use serde_json::{json, Value};

use crate::constructions::Her3;
use crate::cubic_norm::{certify_map, CertKind};
use crate::error::{Error, Result};
use crate::field::{fmt_vec, Field};
use crate::linalg::Matrix;

#[derive(Clone, Debug)]
pub struct GroupElementCertificate<F: Field> {
    pub label: String,
    pub matrix: Matrix<F::Elem>,
    /// μ with N(Mx) = μ N(x), when M is a norm similarity.
    pub multiplier: Option<F::Elem>,
    pub in_str: bool,
    pub fixes_norm: bool,
    pub normalizes_e: bool,
    pub fixes_unit: bool,
}

impl<F: Field> GroupElementCertificate<F> {
    pub fn certify(j: &Her3<F>, matrix: Matrix<F::Elem>, label: impl Into<String>) -> Result<Self> {
        let f = j.field();
        let cert = certify_map(&j.cns, &j.cns, &matrix)?;
        let in_str = cert.kind != CertKind::Rejected;
        let fixes_norm = in_str && cert.multiplier.as_ref().is_some_and(|m| f.is_one(m));
        let normalizes_e = (0..3).all(|i| {
            let img = matrix.apply(f, &j.cns.basis(j.diag_index(i)));
            img[3..].iter().all(|c| f.is_zero(c))
        });
        let fixes_unit = matrix.apply(f, &j.cns.base) == j.cns.base;
        Ok(GroupElementCertificate {
            label: label.into(),
            matrix,
            multiplier: cert.multiplier,
            in_str,
            fixes_norm,
            normalizes_e,
            fixes_unit,
        })
    }

    /// Unit-fixing elements of Str(J) are automorphisms.
    pub fn is_automorphism(&self) -> bool {
        self.in_str && self.fixes_unit
    }

    /// Membership in the subgroup of norm-preserving elements of Str(J)
    /// normalizing E.
    pub fn in_h(&self) -> bool {
        self.in_str && self.fixes_norm && self.normalizes_e
    }

    /// self ∘ other, certified afresh.
    pub fn compose(&self, j: &Her3<F>, other: &Self) -> Result<Self> {
        let m = self.matrix.mul(j.field(), &other.matrix);
        Self::certify(j, m, format!("{} * {}", self.label, other.label))
    }

    /// Smallest k ≥ 1 with M^k = 1, searched up to `limit`.
    pub fn order(&self, f: &F, limit: usize) -> Option<usize> {
        let id = Matrix::identity(f, self.matrix.rows);
        let mut p = self.matrix.clone();
        for k in 1..=limit {
            if p == id {
                return Some(k);
            }
            p = p.mul(f, &self.matrix);
        }
        None
    }

    pub fn to_json(&self, f: &F) -> Value {
        let mut v = json!({
            "label": self.label,
            "matrix": self.matrix.to_json(f),
            "in_str": self.in_str,
            "fixes_norm": self.fixes_norm,
            "normalizes_e": self.normalizes_e,
            "fixes_unit": self.fixes_unit,
            "in_h": self.in_h(),
            "automorphism": self.is_automorphism(),
        });
        if let Some(m) = &self.multiplier {
            v["multiplier"] = f.elem_to_json(m);
        }
        v
    }
}

fn require_unit_gamma<F: Field>(j: &Her3<F>) -> Result<()> {
    let f = j.field();
    if j.gamma.iter().all(|g| f.is_one(g)) {
        Ok(())
    } else {
        Err(Error::PreconditionViolation("the operator is defined for Gamma = 1".into()))
    }
}

/// Permutation of the diagonal cells by σ (0-based images of 0, 1, 2). The
/// slot [jl] goes to [σ(j)σ(l)] and is conjugated when (σ(j), σ(l)) is not in
/// cyclic order.
pub fn sym3_operator<F: Field>(j: &Her3<F>, sigma: [usize; 3]) -> Result<GroupElementCertificate<F>> {
    require_unit_gamma(j)?;
    let mut seen = [false; 3];
    for &s in &sigma {
        if s > 2 || seen[s] {
            return Err(Error::InvalidInput(format!("{sigma:?} is not a permutation of {{0, 1, 2}}")));
        }
        seen[s] = true;
    }
    let f = j.field();
    let comp = &j.comp;
    let m = Matrix::of_linear_map(f, j.dim(), |x| {
        let mut y = vec![f.zero(); x.len()];
        for i in 0..3 {
            y[sigma[i]] = x[i].clone();
            let (a, b) = ((i + 1) % 3, (i + 2) % 3);
            let (sa, sb) = (sigma[a], sigma[b]);
            let v = &x[j.slot(i)];
            let img = if sb == (sa + 1) % 3 { v.to_vec() } else { comp.conj(v) };
            let target = 3 - sa - sb;
            y[j.slot(target)].clone_from_slice(&img);
        }
        y
    });
    let label = format!("sym3({}{}{})", sigma[0] + 1, sigma[1] + 1, sigma[2] + 1);
    let cert = GroupElementCertificate::certify(j, m, label)?;
    if !(cert.is_automorphism() && cert.fixes_norm && cert.normalizes_e) {
        return Err(Error::ConventionFailure(format!(
            "{}: in_str = {}, fixes_norm = {}, normalizes_e = {}, fixes_unit = {}",
            cert.label, cert.in_str, cert.fixes_norm, cert.normalizes_e, cert.fixes_unit
        )));
    }
    Ok(cert)
}

/// U_w for w = diag(w₁, w₂, w₃) with w₁w₂w₃ = 1.
pub fn uw_operator<F: Field>(j: &Her3<F>, w: &[F::Elem]) -> Result<GroupElementCertificate<F>> {
    let f = j.field();
    if w.len() != 3 {
        return Err(Error::InvalidInput("w needs three entries".into()));
    }
    if !f.is_one(&f.mul(&f.mul(&w[0], &w[1]), &w[2])) {
        return Err(Error::ProductNotOne);
    }
    let x = j.diag(w);
    let m = j.cns.u_matrix(&x);
    GroupElementCertificate::certify(j, m, format!("U_w, w = {}", fmt_vec(f, w)))
}

/// All (w₁, w₂, w₃) over a finite field with w₁w₂w₃ = 1.
pub fn norm_one_triples<F: Field>(f: &F) -> Result<Vec<Vec<F::Elem>>> {
    let q = f.size().ok_or_else(|| Error::Unknown("norm-one triples are enumerated over finite fields".into()))?;
    let units: Vec<F::Elem> = (0..q).map(|i| f.element(i)).filter(|a| !f.is_zero(a)).collect();
    let mut out = Vec::new();
    for a in &units {
        for b in &units {
            let ab = f.mul(a, b);
            let c = f.inv(&ab).expect("units");
            out.push(vec![a.clone(), b.clone(), c]);
        }
    }
    Ok(out)
}
