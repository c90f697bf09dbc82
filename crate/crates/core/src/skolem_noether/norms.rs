//! Norm classes, norm-equation witnesses and the criteria built on them.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::etale::{CubicEtale, EtaleTensor, QuadraticEtale};
use crate::field::{fmt_vec, vec_to_json, Field};

pub const ENUMERATION_CAP: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormDecision<E> {
    Trivial { witness: Vec<E> },
    NonTrivial { certificate: String },
    Unknown { reason: String },
}

/// The class of a norm-one w ∈ Eˣ in Eˣ / n_L((E⊗L)ˣ).
#[derive(Clone, Debug)]
pub struct NormClass<F: Field> {
    pub w: Vec<F::Elem>,
    pub decision: NormDecision<F::Elem>,
    pub scanned: u64,
}

impl<F: Field> NormClass<F> {
    pub fn is_trivial(&self) -> Option<bool> {
        match self.decision {
            NormDecision::Trivial { .. } => Some(true),
            NormDecision::NonTrivial { .. } => Some(false),
            NormDecision::Unknown { .. } => None,
        }
    }

    pub fn to_json(&self, f: &F) -> Value {
        let decision = match &self.decision {
            NormDecision::Trivial { witness } => json!({"trivial": {"witness": vec_to_json(f, witness)}}),
            NormDecision::NonTrivial { certificate } => json!({"nontrivial": {"certificate": certificate}}),
            NormDecision::Unknown { reason } => json!({"unknown": {"reason": reason}}),
        };
        json!({"w": vec_to_json(f, &self.w), "decision": decision, "scanned": self.scanned})
    }
}

fn check_cap<F: Field>(f: &F, cap: u64) -> Result<u64> {
    let q = f.size().ok_or_else(|| Error::Unknown("enumeration over an infinite field".into()))?;
    let total = q.checked_pow(6).unwrap_or(u64::MAX);
    if total > cap {
        return Err(Error::BudgetExceeded(format!("|E (x) L| = {total} exceeds the enumeration cap {cap}")));
    }
    Ok(total)
}

fn require_norm_one<F: Field>(e: &CubicEtale<F>, w: &[F::Elem]) -> Result<()> {
    let f = e.field();
    if !f.is_one(&e.norm(w)) {
        return Err(Error::PreconditionViolation(format!("N_E(w) = {} is not 1", f.fmt_elem(&e.norm(w)))));
    }
    Ok(())
}

/// Decides w ∈ n_L((E⊗L)ˣ): exhaustively over finite fields, through the
/// sign obstruction over ℚ for split E and definite L, otherwise Unknown.
pub fn norm_membership<F: Field>(
    e: &CubicEtale<F>,
    l: &QuadraticEtale<F>,
    w: &[F::Elem],
    cap: u64,
) -> Result<NormClass<F>> {
    require_norm_one(e, w)?;
    let f = e.field();
    if !f.is_finite() {
        return Ok(NormClass { w: w.to_vec(), decision: sign_obstruction(e, l, w), scanned: 0 });
    }
    check_cap(f, cap)?;
    let t = EtaleTensor::new(e, l);
    let mut scanned = 0;
    for y in t.units() {
        scanned += 1;
        if t.n_l(&y) == w {
            return Ok(NormClass { w: w.to_vec(), decision: NormDecision::Trivial { witness: y }, scanned });
        }
    }
    let certificate = format!("no unit of E (x) L among {scanned} has n_L(y) = {}", fmt_vec(f, w));
    Ok(NormClass { w: w.to_vec(), decision: NormDecision::NonTrivial { certificate }, scanned })
}

/// Over an ordered field with E = F × F × F and n_L positive definite, every
/// coordinate of a norm n_L(y) is a value of n_L and hence nonnegative.
fn sign_obstruction<F: Field>(e: &CubicEtale<F>, l: &QuadraticEtale<F>, w: &[F::Elem]) -> NormDecision<F::Elem> {
    let f = e.field();
    if f.characteristic() != 0 {
        return NormDecision::Unknown { reason: "no obstruction implemented for this field".into() };
    }
    if !e.is_diagonal() {
        return NormDecision::Unknown { reason: "E is not presented as F x F x F".into() };
    }
    // x² + t x y + n y² is definite iff t² − 4n < 0
    let disc = f.sub(&f.mul(&l.t, &l.t), &f.mul(&f.from_i64(4), &l.n));
    let negative = |x: &F::Elem| f.sign(x) == Some(-1);
    if !negative(&disc) {
        return NormDecision::Unknown { reason: "the norm form of L is indefinite".into() };
    }
    match w.iter().position(negative) {
        Some(i) => NormDecision::NonTrivial {
            certificate: format!("coordinate {i} of w is negative but n_L is positive definite"),
        },
        None => NormDecision::Unknown { reason: "no sign obstruction".into() },
    }
}

/// y′ ∈ E⊗L with N_E(y′) = N_E(y) and n_L(y′) = 1, for y with n_L(N_E(y)) = 1.
pub fn nornor_witness<F: Field>(
    e: &CubicEtale<F>,
    l: &QuadraticEtale<F>,
    y: &[F::Elem],
    cap: u64,
) -> Result<Vec<F::Elem>> {
    let f = e.field();
    let t = EtaleTensor::new(e, l);
    let c = t.norm_e(y);
    if !f.is_one(&l.norm(&c)) {
        return Err(Error::PreconditionViolation(format!("n_L(N_E(y)) = {} is not 1", f.fmt_elem(&l.norm(&c)))));
    }
    if !f.is_finite() {
        return Err(Error::Unknown("witness search needs a finite field".into()));
    }
    let one = t.one();
    if c == l.one() {
        return Ok(one);
    }
    check_cap(f, cap)?;
    let e_one = e.one();
    t.units()
        .into_iter()
        .find(|z| t.norm_e(z) == c && t.n_l(z) == e_one)
        .ok_or_else(|| Error::Inconsistent(format!("no y' with N_E(y') = {} and n_L(y') = 1", fmt_vec(f, &c))))
}

/// Precomputed (y, n_L(y), N_E(y)) over the units of E⊗L.
pub struct NormTable<F: Field> {
    pub rows: Vec<(Vec<F::Elem>, Vec<F::Elem>, Vec<F::Elem>)>,
}

impl<F: Field> NormTable<F> {
    pub fn new(e: &CubicEtale<F>, l: &QuadraticEtale<F>, cap: u64) -> Result<Self> {
        check_cap(e.field(), cap)?;
        let t = EtaleTensor::new(e, l);
        let rows = t
            .units()
            .into_iter()
            .map(|y| {
                let (nl, ne) = (t.n_l(&y), t.norm_e(&y));
                (y, nl, ne)
            })
            .collect();
        Ok(NormTable { rows })
    }
}

/// Both sides of the criterion: (∃y: n_L(y) = w, N_E(y) ∈ {1, b̄b⁻¹}) and
/// w ∈ n_L((E⊗L)ˣ), each by its own scan.
pub fn extri_sides<F: Field>(
    l: &QuadraticEtale<F>,
    table: &NormTable<F>,
    w: &[F::Elem],
    b: &[F::Elem],
) -> Result<(bool, bool)> {
    let bi = l.inverse(b).ok_or_else(|| Error::NotInvertible("b".into()))?;
    let ratio = l.mul(&l.conj(b), &bi);
    let one = l.one();
    let lhs = table.rows.iter().any(|(_, nl, ne)| nl == w && (*ne == one || *ne == ratio));
    let rhs = table.rows.iter().any(|(_, nl, _)| nl == w);
    Ok((lhs, rhs))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EtfimVerdict<E> {
    /// α ≡ α′^ε mod N_E(Eˣ), with x satisfying N_E(x) = α α′^{-ε}.
    Equivalent { epsilon: i8, witness: Vec<E> },
    NotEquivalent,
}

/// Whether α ≡ α′^{±1} modulo N_E(Eˣ), by enumeration over a finite field.
pub fn etfim_check<F: Field>(e: &CubicEtale<F>, alpha: &F::Elem, alpha2: &F::Elem) -> Result<EtfimVerdict<F::Elem>> {
    let f = e.field();
    if f.is_zero(alpha) {
        return Err(Error::InvalidMu);
    }
    let a2i = f.inv(alpha2).ok_or(Error::InvalidMu)?;
    if !f.is_finite() {
        return Err(Error::Unknown("norm groups are only enumerated over finite fields".into()));
    }
    let units = e.units();
    for (eps, target) in [(1i8, f.mul(alpha, &a2i)), (-1, f.mul(alpha, alpha2))] {
        if let Some(x) = units.iter().find(|x| e.norm(x) == target) {
            return Ok(EtfimVerdict::Equivalent { epsilon: eps, witness: x.clone() });
        }
    }
    Ok(EtfimVerdict::NotEquivalent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Ring;
    use crate::field::{FiniteField, Rationals};

    #[test]
    fn gf2_every_unit_is_a_norm() {
        let f = FiniteField::prime(2).unwrap();
        let e = CubicEtale::from_poly(&f, &[1, 1, 0]).unwrap();
        let l = QuadraticEtale::from_poly(&f, &[1, 1]).unwrap();
        for w in e.units() {
            let c = norm_membership(&e, &l, &w, ENUMERATION_CAP).unwrap();
            let NormDecision::Trivial { witness } = &c.decision else { panic!("{:?}", c.decision) };
            assert_eq!(EtaleTensor::new(&e, &l).n_l(witness), w);
        }
    }

    #[test]
    fn rational_sign_obstruction() {
        let q = Rationals;
        let e = CubicEtale::split(&q);
        let l = QuadraticEtale::new(&q, q.zero(), q.one()).unwrap();
        let w = vec![q.from_i64(-1), q.from_i64(-1), q.one()];
        let c = norm_membership(&e, &l, &w, ENUMERATION_CAP).unwrap();
        assert_eq!(c.is_trivial(), Some(false));
        let c = norm_membership(&e, &l, &e.one(), ENUMERATION_CAP).unwrap();
        assert_eq!(c.is_trivial(), None);
    }

    #[test]
    fn split_norm_group_is_everything() {
        let f = FiniteField::prime(5).unwrap();
        let e = CubicEtale::split(&f);
        for a in 1..5u64 {
            for b in 1..5u64 {
                assert!(matches!(etfim_check(&e, &a, &b).unwrap(), EtfimVerdict::Equivalent { .. }));
            }
        }
    }
}
