//! Exact scalar fields and the ring abstraction used for formal and
//! randomized evaluation.

mod ext;
mod finite;
mod rational;
pub mod upoly;

use std::fmt::Debug;
use std::hash::Hash;

use rand_chacha::ChaCha8Rng;
use serde_json::Value;

pub use ext::ExtRing;
pub use finite::{is_prime_u64, FiniteField};
pub use rational::Rationals;

use crate::error::{Error, Result};

/// A commutative ring with identity, given as a context object acting on
/// plain element values.
pub trait Ring: Clone + Send + Sync {
    type Elem: Clone + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        let mut acc = self.zero();
        for x in items {
            self.add_assign(&mut acc, x);
        }
        acc
    }
}

/// Exact fields: the rationals and finite fields GF(p^k).
pub trait Field: Ring + Debug + 'static {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// 0 for the rationals.
    fn characteristic(&self) -> u64;

    /// Number of elements, `None` for the rationals.
    fn size(&self) -> Option<u64>;

    /// Canonical enumeration. Finite fields: the element whose base-p digit
    /// vector is `idx`. Rationals: 0, 1, -1, 2, -2, ...
    fn element(&self, idx: u64) -> Self::Elem;

    /// Inverse of [`Field::element`] for finite fields; `None` over Q.
    fn index_of(&self, a: &Self::Elem) -> Option<u64>;

    fn random(&self, rng: &mut ChaCha8Rng) -> Self::Elem;

    fn desc(&self) -> FieldDesc;

    fn from_ratio(&self, num: i64, den: i64) -> Option<Self::Elem>;

    fn fmt_elem(&self, a: &Self::Elem) -> String;

    fn elem_to_json(&self, a: &Self::Elem) -> Value;

    fn elem_from_json(&self, v: &Value) -> Result<Self::Elem>;

    /// Whether `a` is a square; `None` when undecided.
    fn is_square(&self, a: &Self::Elem) -> Option<bool>;

    /// A square root of `a`, if one exists and can be found. Finite fields
    /// up to 2^22 elements are searched exhaustively.
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem> {
        match self.size() {
            Some(q) if q <= 1 << 22 => (0..q).map(|i| self.element(i)).find(|r| self.mul(r, r) == *a),
            _ => None,
        }
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn is_finite(&self) -> bool {
        self.size().is_some()
    }

    /// All elements in canonical order (finite fields only).
    fn elements(&self) -> Vec<Self::Elem> {
        let q = self.size().expect("enumeration of an infinite field");
        (0..q).map(|i| self.element(i)).collect()
    }

    /// Sign for ordered fields: -1, 0 or 1.
    fn sign(&self, _a: &Self::Elem) -> Option<i8> {
        None
    }

    /// Nonzero elements in canonical order (finite fields only).
    fn units(&self) -> Vec<Self::Elem> {
        let q = self.size().expect("enumeration of an infinite field");
        (1..q).map(|i| self.element(i)).collect()
    }
}

/// An associative commutative ring receiving the scalars of `F`.
pub trait Algebra<F: Field>: Ring {
    fn embed(&self, a: &F::Elem) -> Self::Elem;

    fn scale(&self, a: &F::Elem, x: &Self::Elem) -> Self::Elem {
        self.mul(&self.embed(a), x)
    }

    /// Σ c_i x_i.
    fn lincomb(&self, items: &[(&F::Elem, &Self::Elem)]) -> Self::Elem {
        let mut acc = self.zero();
        for (c, x) in items {
            let t = self.scale(c, x);
            self.add_assign(&mut acc, &t);
        }
        acc
    }
}

impl<F: Field> Algebra<F> for F {
    fn embed(&self, a: &F::Elem) -> F::Elem {
        a.clone()
    }

    fn scale(&self, a: &F::Elem, x: &F::Elem) -> F::Elem {
        self.mul(a, x)
    }
}

/// Serializable field descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldDesc {
    Rationals,
    Finite { p: u64, k: u32, modulus: Vec<u64> },
}

impl FieldDesc {
    pub fn to_json(&self) -> Value {
        match self {
            FieldDesc::Rationals => serde_json::json!({ "kind": "Q" }),
            FieldDesc::Finite { p, k, modulus } => {
                serde_json::json!({ "p": p, "k": k, "modulus": modulus })
            }
        }
    }

    /// Accepts `"Q"`, `{"kind": "Q"}`, `"GF(5)"`, `{"p": 5}`,
    /// `{"p": 2, "k": 2}` and `{"p": 2, "k": 2, "modulus": [1, 1, 1]}`.
    pub fn from_json(v: &Value) -> Result<FieldDesc> {
        match v {
            Value::String(s) => parse_field_name(s),
            Value::Object(map) => {
                for key in map.keys() {
                    if !matches!(key.as_str(), "kind" | "p" | "k" | "modulus") {
                        return Err(Error::InvalidField(format!("unknown key '{key}'")));
                    }
                }
                if let Some(kind) = map.get("kind") {
                    let kind = kind.as_str().unwrap_or_default();
                    if kind == "Q" || kind == "QQ" || kind == "rationals" {
                        return Ok(FieldDesc::Rationals);
                    }
                    if map.get("p").is_none() {
                        return Err(Error::InvalidField(format!("unknown kind '{kind}'")));
                    }
                }
                let p = map
                    .get("p")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| Error::InvalidField("missing prime 'p'".into()))?;
                let k = match map.get("k") {
                    None => 1,
                    Some(v) => v
                        .as_u64()
                        .filter(|&k| (1..=64).contains(&k))
                        .ok_or_else(|| Error::InvalidField("bad degree 'k'".into()))?
                        as u32,
                };
                let modulus = match map.get("modulus") {
                    None => Vec::new(),
                    Some(Value::Array(a)) => a
                        .iter()
                        .map(|c| c.as_u64().ok_or_else(|| Error::InvalidField("bad modulus".into())))
                        .collect::<Result<Vec<_>>>()?,
                    Some(_) => return Err(Error::InvalidField("bad modulus".into())),
                };
                Ok(FieldDesc::Finite { p, k, modulus })
            }
            _ => Err(Error::InvalidField(format!("unrecognized field {v}"))),
        }
    }

    pub fn build(&self) -> Result<AnyField> {
        match self {
            FieldDesc::Rationals => Ok(AnyField::Q(Rationals)),
            FieldDesc::Finite { p, k, modulus } => {
                let m = if modulus.is_empty() { None } else { Some(modulus.clone()) };
                Ok(AnyField::Fq(FiniteField::new(*p, *k, m)?))
            }
        }
    }
}

fn parse_field_name(s: &str) -> Result<FieldDesc> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if matches!(t.as_str(), "Q" | "QQ" | "rationals") {
        return Ok(FieldDesc::Rationals);
    }
    let inner = t
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::InvalidField(format!("unrecognized field '{s}'")))?;
    let bad = || Error::InvalidField(format!("unrecognized field '{s}'"));
    let (p, k) = match inner.split_once('^') {
        Some((p, k)) => (p.parse::<u64>().map_err(|_| bad())?, k.parse::<u32>().map_err(|_| bad())?),
        None => {
            let q = inner.parse::<u64>().map_err(|_| bad())?;
            prime_power(q).ok_or_else(bad)?
        }
    };
    Ok(FieldDesc::Finite { p, k, modulus: Vec::new() })
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1 && is_prime_u64(p)).then_some((p, k))
}

/// A field chosen at run time.
#[derive(Clone, Debug)]
pub enum AnyField {
    Q(Rationals),
    Fq(FiniteField),
}

/// Runs `$body` with `$f` bound to the concrete field inside an [`AnyField`].
#[macro_export]
macro_rules! with_field {
    ($any:expr, $f:ident => $body:expr) => {
        match $any {
            $crate::field::AnyField::Q($f) => $body,
            $crate::field::AnyField::Fq($f) => $body,
        }
    };
}

/// Parses a scalar given as a JSON number, an expression string such as
/// `"3/4"` or `"a^2+1"`, or a coefficient array.
pub fn parse_scalar<F: Field>(f: &F, v: &Value) -> Result<F::Elem> {
    f.elem_from_json(v)
}

/// Renders scalars for reports and error messages.
pub fn fmt_vec<F: Field>(f: &F, v: &[F::Elem]) -> String {
    let parts: Vec<String> = v.iter().map(|x| f.fmt_elem(x)).collect();
    format!("({})", parts.join(", "))
}

pub fn vec_to_json<F: Field>(f: &F, v: &[F::Elem]) -> Value {
    Value::Array(v.iter().map(|x| f.elem_to_json(x)).collect())
}

pub fn vec_from_json<F: Field>(f: &F, v: &Value) -> Result<Vec<F::Elem>> {
    match v {
        Value::Array(a) => a.iter().map(|x| f.elem_from_json(x)).collect(),
        _ => Err(Error::InvalidInput(format!("expected an array of scalars, got {v}"))),
    }
}
