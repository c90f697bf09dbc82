//! The map ψ ↦ (g ↦ ψ(g)⁻¹) from anti-automorphisms of (B, τ) to
//! automorphisms of SU(B, τ), checked on the enumerated group for
//! B = Mat_d(K) over a finite field.

use std::collections::HashMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, FiniteField, Ring};
use crate::linalg::Matrix;

/// Mat_d(K) with K = GF(q²) and τ(x) = Γ⁻¹ x̄ᵗ Γ, Γ = diag(γ) hermitian.
#[derive(Clone, Debug)]
pub struct UnitaryDatum {
    pub k: FiniteField,
    pub d: usize,
    pub gamma: Vec<u64>,
    /// |F| = q.
    pub q: u64,
}

impl UnitaryDatum {
    pub fn new(k: &FiniteField, d: usize, gamma: Vec<u64>) -> Result<Self> {
        if !k.degree().is_multiple_of(2) {
            return Err(Error::InvalidField(format!("{k:?} has no subfield of index 2")));
        }
        if d == 0 || gamma.len() != d {
            return Err(Error::InvalidInput(format!("Gamma needs {d} diagonal entries")));
        }
        let q = k.p().pow(k.degree() / 2);
        let datum = UnitaryDatum { k: k.clone(), d, gamma, q };
        if datum.gamma.iter().any(|g| k.is_zero(g) || datum.conj(g) != *g) {
            return Err(Error::InvalidGamma);
        }
        Ok(datum)
    }

    /// Γ = 1.
    pub fn standard(k: &FiniteField, d: usize) -> Result<Self> {
        Self::new(k, d, vec![k.one(); d])
    }

    /// a ↦ a^q.
    pub fn conj(&self, a: &u64) -> u64 {
        (0..self.k.degree() / 2).fold(*a, |x, _| self.k.frobenius(x))
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let (k, d) = (&self.k, self.d);
        let mut out = vec![0; d * d];
        for i in 0..d {
            for l in 0..d {
                let a_il = a[i * d + l];
                if k.is_zero(&a_il) {
                    continue;
                }
                for j in 0..d {
                    let t = k.mul(&a_il, &b[l * d + j]);
                    k.add_assign(&mut out[i * d + j], &t);
                }
            }
        }
        out
    }

    pub fn identity(&self) -> Vec<u64> {
        Matrix::identity(&self.k, self.d).data
    }

    pub fn tau(&self, x: &[u64]) -> Vec<u64> {
        let (k, d) = (&self.k, self.d);
        let mut out = vec![0; d * d];
        for i in 0..d {
            let gi = k.inv(&self.gamma[i]).expect("nonzero");
            for j in 0..d {
                out[i * d + j] = k.mul(&k.mul(&gi, &self.conj(&x[j * d + i])), &self.gamma[j]);
            }
        }
        out
    }

    pub fn det(&self, x: &[u64]) -> u64 {
        Matrix { rows: self.d, cols: self.d, data: x.to_vec() }.det(&self.k)
    }

    pub fn inverse(&self, x: &[u64]) -> Option<Vec<u64>> {
        Matrix { rows: self.d, cols: self.d, data: x.to_vec() }.inverse(&self.k).map(|m| m.data)
    }

    /// |SU_d(q)| = q^{d(d-1)/2} ∏_{i=2}^{d} (q^i - (-1)^i).
    pub fn su_order(&self) -> Option<u64> {
        let q = self.q as i128;
        let mut n: i128 = q.checked_pow((self.d * (self.d - 1) / 2) as u32)?;
        for i in 2..=self.d as u32 {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            n = n.checked_mul(q.checked_pow(i)? - sign)?;
        }
        u64::try_from(n).ok()
    }

    fn hermitian(&self, x: &[u64], y: &[u64]) -> u64 {
        let k = &self.k;
        (0..self.d).fold(0, |acc, i| k.add(&acc, &k.mul(&k.mul(&self.gamma[i], &self.conj(&x[i])), &y[i])))
    }

    /// {g : τ(g) g = 1, det g = 1}, built column by column: the columns of g
    /// are pairwise orthogonal with h(c_i, c_i) = γ_i.
    pub fn enumerate_su(&self, cap: u64) -> Result<Vec<Vec<u64>>> {
        let order = self.su_order().ok_or_else(|| Error::TooLarge("group order overflows".into()))?;
        let vectors = self.k.order().checked_pow(self.d as u32).unwrap_or(u64::MAX);
        if order > cap || vectors > cap {
            return Err(Error::TooLarge(format!("|SU| = {order} with {vectors} vectors exceeds the cap {cap}")));
        }
        let k = &self.k;
        let all: Vec<Vec<u64>> = (0..vectors)
            .map(|mut n| {
                (0..self.d)
                    .map(|_| {
                        let e = k.element(n % k.order());
                        n /= k.order();
                        e
                    })
                    .collect()
            })
            .collect();
        let buckets: Vec<Vec<&Vec<u64>>> =
            self.gamma.iter().map(|g| all.iter().filter(|v| self.hermitian(v, v) == *g).collect()).collect();
        let mut out = Vec::new();
        let mut cols: Vec<&Vec<u64>> = Vec::new();
        self.extend(&buckets, &mut cols, &mut out);
        if out.len() as u64 != order {
            return Err(Error::Inconsistent(format!("enumerated {} elements, expected {order}", out.len())));
        }
        Ok(out)
    }

    fn extend<'a>(&self, buckets: &[Vec<&'a Vec<u64>>], cols: &mut Vec<&'a Vec<u64>>, out: &mut Vec<Vec<u64>>) {
        let i = cols.len();
        if i == self.d {
            let g = Matrix::from_cols(&cols.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).data;
            if self.k.is_one(&self.det(&g)) {
                out.push(g);
            }
            return;
        }
        for v in &buckets[i] {
            if cols.iter().all(|c| self.k.is_zero(&self.hermitian(c, v))) {
                cols.push(v);
                self.extend(buckets, cols, out);
                cols.pop();
            }
        }
    }
}

/// A K-linear map of Mat_d(K) acting on row-major coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntiAutomorphism {
    pub matrix: Matrix<u64>,
}

impl AntiAutomorphism {
    pub fn transpose(datum: &UnitaryDatum) -> Self {
        let d = datum.d;
        let m = Matrix::of_linear_map(&datum.k, d * d, |x| (0..d * d).map(|n| x[(n % d) * d + n / d]).collect());
        AntiAutomorphism { matrix: m }
    }

    pub fn apply(&self, k: &FiniteField, x: &[u64]) -> Vec<u64> {
        self.matrix.apply(k, x)
    }

    /// Checks bijectivity, ψ(xy) = ψ(y)ψ(x) on matrix units and ψτ = τψ on
    /// matrix units; both sides of the last are semilinear, so units suffice.
    pub fn validate(&self, datum: &UnitaryDatum) -> Result<()> {
        let (k, d) = (&datum.k, datum.d);
        let n = d * d;
        if self.matrix.rows != n || self.matrix.cols != n {
            return Err(Error::PsiInvalid(format!("psi must be {n}x{n}")));
        }
        if k.is_zero(&self.matrix.det(k)) {
            return Err(Error::PsiInvalid("psi is not bijective".into()));
        }
        let unit = |i: usize| {
            let mut e = vec![0; n];
            e[i] = k.one();
            e
        };
        for a in 0..n {
            let ea = unit(a);
            let pa = self.apply(k, &ea);
            if self.apply(k, &datum.tau(&ea)) != datum.tau(&pa) {
                return Err(Error::PsiInvalid(format!("psi does not commute with tau on e_{}{}", a / d + 1, a % d + 1)));
            }
            for b in 0..n {
                let eb = unit(b);
                let lhs = self.apply(k, &datum.mul(&ea, &eb));
                let rhs = datum.mul(&self.apply(k, &eb), &pa);
                if lhs != rhs {
                    return Err(Error::PsiInvalid(format!(
                        "psi(xy) != psi(y)psi(x) for x = e_{}{}, y = e_{}{}",
                        a / d + 1,
                        a % d + 1,
                        b / d + 1,
                        b % d + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_involution(&self, k: &FiniteField) -> bool {
        self.matrix.mul(k, &self.matrix) == Matrix::identity(k, self.matrix.rows)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OuterVerdict {
    Outer,
    /// φ = conjugation by the given group element.
    Inner { conjugator: Vec<u64> },
    NotAutomorphism { reason: String },
}

impl OuterVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            OuterVerdict::Outer => "outer",
            OuterVerdict::Inner { .. } => "inner",
            OuterVerdict::NotAutomorphism { .. } => "not-automorphism",
        }
    }
}

#[derive(Clone, Debug)]
pub struct OuterReport {
    pub order: usize,
    pub center_order: usize,
    pub generators: Vec<Vec<u64>>,
    pub pairs_checked: u64,
    /// φ∘φ = id on the whole group, checked when ψ² = id.
    pub phi_involutive: Option<bool>,
    pub verdict: OuterVerdict,
}

impl OuterReport {
    /// Number of inner automorphisms, |G / Z(G)|.
    pub fn inner_count(&self) -> usize {
        self.order / self.center_order.max(1)
    }

    pub fn to_json(&self, k: &FiniteField) -> Value {
        let mat = |g: &[u64]| -> Value { g.iter().map(|a| k.elem_to_json(a)).collect() };
        let mut verdict = json!({"kind": self.verdict.as_str()});
        match &self.verdict {
            OuterVerdict::Inner { conjugator } => verdict["conjugator"] = mat(conjugator),
            OuterVerdict::NotAutomorphism { reason } => verdict["reason"] = json!(reason),
            OuterVerdict::Outer => {}
        }
        json!({
            "order": self.order,
            "center_order": self.center_order,
            "inner_automorphisms": self.inner_count(),
            "generators": self.generators.iter().map(|g| mat(g)).collect::<Vec<_>>(),
            "pairs_checked": self.pairs_checked,
            "phi_involutive": self.phi_involutive,
            "verdict": verdict,
        })
    }
}

/// Greedy generating set: each new generator is the first element outside
/// the subgroup generated so far.
pub fn generating_set(datum: &UnitaryDatum, group: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let index: HashMap<&Vec<u64>, usize> = group.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut inside = vec![false; group.len()];
    let mut gens: Vec<Vec<u64>> = Vec::new();
    let id = datum.identity();
    inside[index[&id]] = true;
    let mut members = vec![id];
    for (i, g) in group.iter().enumerate() {
        if inside[i] {
            continue;
        }
        gens.push(g.clone());
        let mut frontier = members.clone();
        while let Some(x) = frontier.pop() {
            for s in &gens {
                let y = datum.mul(&x, s);
                let j = index[&y];
                if !inside[j] {
                    inside[j] = true;
                    members.push(y.clone());
                    frontier.push(y);
                }
            }
        }
    }
    gens
}

/// Enumerates SU(B, τ), checks that φ(g) = ψ(g)⁻¹ is an automorphism on all
/// pairs and compares it with conjugation by every group element on a
/// generating set.
pub fn outer_from_antiauto(datum: &UnitaryDatum, psi: &AntiAutomorphism, cap: u64) -> Result<OuterReport> {
    psi.validate(datum)?;
    let k = &datum.k;
    let group = datum.enumerate_su(cap)?;
    let n = group.len();
    let pairs = (n as u64).saturating_mul(n as u64);
    if pairs > cap {
        return Err(Error::TooLarge(format!("{pairs} pairs exceed the cap {cap}")));
    }
    let index: HashMap<&Vec<u64>, usize> = group.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let generators = generating_set(datum, &group);
    let center_order = group.iter().filter(|z| generators.iter().all(|s| datum.mul(z, s) == datum.mul(s, z))).count();
    let report = |verdict, pairs_checked, phi_involutive| OuterReport {
        order: n,
        center_order,
        generators: generators.clone(),
        pairs_checked,
        phi_involutive,
        verdict,
    };
    let mut phi = Vec::with_capacity(n);
    let mut hit = vec![false; n];
    for g in &group {
        let img = datum.inverse(&psi.apply(k, g)).and_then(|x| index.get(&x).copied());
        let Some(i) = img else {
            let reason = "psi(g)^-1 leaves SU(B, tau)".to_string();
            return Ok(report(OuterVerdict::NotAutomorphism { reason }, 0, None));
        };
        if hit[i] {
            let reason = "phi is not injective".to_string();
            return Ok(report(OuterVerdict::NotAutomorphism { reason }, 0, None));
        }
        hit[i] = true;
        phi.push(i);
    }
    let mut checked = 0;
    for (a, g) in group.iter().enumerate() {
        for (b, h) in group.iter().enumerate() {
            checked += 1;
            let gh = index[&datum.mul(g, h)];
            if datum.mul(&group[phi[a]], &group[phi[b]]) != group[phi[gh]] {
                let reason = format!("phi(gh) != phi(g)phi(h) at pair ({a}, {b})");
                return Ok(report(OuterVerdict::NotAutomorphism { reason }, checked, None));
            }
        }
    }
    let phi_involutive = psi.is_involution(k).then(|| (0..n).all(|i| phi[phi[i]] == i));
    let phi_gens: Vec<&Vec<u64>> = generators.iter().map(|s| &group[phi[index[s]]]).collect();
    for h in &group {
        if generators.iter().zip(&phi_gens).all(|(s, ps)| datum.mul(ps, h) == datum.mul(h, s)) {
            return Ok(report(OuterVerdict::Inner { conjugator: h.clone() }, checked, phi_involutive));
        }
    }
    Ok(report(OuterVerdict::Outer, checked, phi_involutive))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn su3_2() -> UnitaryDatum {
        let k = FiniteField::new(2, 2, None).unwrap();
        UnitaryDatum::standard(&k, 3).unwrap()
    }

    #[test]
    fn group_orders() {
        let d = su3_2();
        assert_eq!(d.su_order(), Some(216));
        let k = FiniteField::new(3, 2, None).unwrap();
        assert_eq!(UnitaryDatum::standard(&k, 2).unwrap().su_order(), Some(24));
        assert_eq!(UnitaryDatum::standard(&k, 2).unwrap().enumerate_su(1000).unwrap().len(), 24);
    }

    #[test]
    fn transpose_inverts_the_center() {
        let d = su3_2();
        let psi = AntiAutomorphism::transpose(&d);
        psi.validate(&d).unwrap();
        let k = &d.k;
        for z in (0..4).map(|i| k.element(i)).filter(|z| k.is_one(&k.mul(&k.mul(z, z), z))) {
            let zi = Matrix::scalar(k, 3, &z).data;
            let img = d.inverse(&psi.apply(k, &zi)).unwrap();
            assert_eq!(img, Matrix::scalar(k, 3, &k.inv(&z).unwrap()).data);
        }
    }

    #[test]
    fn identity_map_is_rejected() {
        let d = su3_2();
        let id = AntiAutomorphism { matrix: Matrix::identity(&d.k, 9) };
        assert!(matches!(id.validate(&d), Err(Error::PsiInvalid(_))));
    }

    #[test]
    fn too_large_groups_are_refused() {
        let k = FiniteField::new(5, 2, None).unwrap();
        let d = UnitaryDatum::standard(&k, 3).unwrap();
        assert!(matches!(d.enumerate_su(1000), Err(Error::TooLarge(_))));
    }
}
