use std::fmt;
use std::sync::Arc;

use rand::Rng as _;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use super::{upoly, Field, FieldDesc, Ring};
use crate::error::{Error, Result};
use crate::expr::Expr;

/// Largest field order for which log/antilog tables are built.
const TABLE_LIMIT: u64 = 1 << 20;
/// Largest odd-characteristic extension field with a full addition table.
const ADD_TABLE_LIMIT: u64 = 1 << 10;

/// GF(p^k). Elements are `u64` values whose base-p digits are the
/// coefficients of a polynomial in the generator `a` modulo `modulus`, so
/// the value is also the element's canonical enumeration index.
#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<Inner>,
}

struct Inner {
    p: u64,
    k: u32,
    q: u64,
    /// Monic modulus, low degree first, length k + 1.
    modulus: Vec<u64>,
    log: Vec<u32>,
    exp: Vec<u64>,
    add_table: Vec<u32>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.k == 1 {
            write!(f, "GF({})", self.inner.p)
        } else {
            write!(f, "GF({}^{})", self.inner.p, self.inner.k)
        }
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for FiniteField {}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FiniteField {
    /// The prime field GF(p).
    pub fn prime(p: u64) -> Result<FiniteField> {
        FiniteField::new(p, 1, None)
    }

    /// GF(p^k). Without an explicit modulus the monic irreducible polynomial
    /// of smallest enumeration index is used.
    pub fn new(p: u64, k: u32, modulus: Option<Vec<u64>>) -> Result<FiniteField> {
        if !is_prime_u64(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let q = (p as u128).checked_pow(k).filter(|&q| q < (1u128 << 62)).ok_or_else(|| {
            Error::InvalidField(format!("GF({p}^{k}) is too large"))
        })? as u64;
        let base = FiniteField::raw(p, 1, q.min(p), vec![0, 1]);
        let modulus = match modulus {
            Some(m) => {
                if m.len() != k as usize + 1 || m[k as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidField(format!(
                        "modulus must be monic of degree {k} with coefficients in [0, {p})"
                    )));
                }
                if !upoly::is_irreducible(&base, &m) {
                    return Err(Error::InvalidField("modulus is not irreducible".into()));
                }
                m
            }
            None if k == 1 => vec![0, 1],
            None => upoly::first_irreducible(&base, k as usize),
        };
        if k == 1 {
            return Ok(base_with_modulus(p, modulus));
        }
        let mut field = FiniteField::raw(p, k, q, modulus);
        if q <= TABLE_LIMIT {
            field.build_tables();
        }
        Ok(field)
    }

    fn raw(p: u64, k: u32, q: u64, modulus: Vec<u64>) -> FiniteField {
        FiniteField {
            inner: Arc::new(Inner { p, k, q, modulus, log: Vec::new(), exp: Vec::new(), add_table: Vec::new() }),
        }
    }

    fn build_tables(&mut self) {
        let q = self.inner.q;
        let p = self.inner.p;
        let factors = prime_factors(q - 1);
        let g = (2..q)
            .find(|&g| factors.iter().all(|&r| self.slow_pow(g, (q - 1) / r) != 1))
            .unwrap_or(1);
        let mut exp = vec![0u64; (q - 1) as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u64;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = x;
            log[x as usize] = i as u32;
            x = self.slow_mul(x, g);
        }
        let mut add_table = Vec::new();
        if p != 2 && q <= ADD_TABLE_LIMIT {
            add_table = Vec::with_capacity((q * q) as usize);
            for a in 0..q {
                for b in 0..q {
                    add_table.push(self.digit_add(a, b) as u32);
                }
            }
        }
        let inner = Arc::get_mut(&mut self.inner).expect("fresh field");
        inner.exp = exp;
        inner.log = log;
        inner.add_table = add_table;
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.k
    }

    pub fn order(&self) -> u64 {
        self.inner.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    /// The generator `a` of GF(p^k) over GF(p) (equal to `p` as an index).
    pub fn generator(&self) -> u64 {
        if self.inner.k == 1 {
            0
        } else {
            self.inner.p
        }
    }

    /// Digits of an element, low degree first.
    pub fn digits(&self, mut a: u64) -> Vec<u64> {
        let p = self.inner.p;
        (0..self.inner.k)
            .map(|_| {
                let d = a % p;
                a /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, d: &[u64]) -> u64 {
        let p = self.inner.p;
        d.iter().rev().fold(0u64, |acc, &c| acc * p + (c % p))
    }

    /// x ↦ x^p.
    pub fn frobenius(&self, a: u64) -> u64 {
        self.pow(&a, self.inner.p)
    }

    fn digit_add(&self, a: u64, b: u64) -> u64 {
        let p = self.inner.p;
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.inner.k {
            let s = (a % p + b % p) % p;
            out += s * place;
            place = place.wrapping_mul(p);
            a /= p;
            b /= p;
        }
        out
    }

    fn digit_neg(&self, a: u64) -> u64 {
        let p = self.inner.p;
        if p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.inner.k {
            let d = a % p;
            out += ((p - d) % p) * place;
            place = place.wrapping_mul(p);
            a /= p;
        }
        out
    }

    fn slow_mul(&self, a: u64, b: u64) -> u64 {
        let p = self.inner.p;
        let k = self.inner.k as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let m = &self.inner.modulus;
        for d in (k..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &mi) in m.iter().enumerate().take(k) {
                let idx = d - k + i;
                prod[idx] = (prod[idx] + (p - c) * mi % p) % p;
            }
        }
        self.from_digits(&prod[..k])
    }

    fn slow_pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Absolute trace to the prime field.
    pub fn absolute_trace(&self, a: u64) -> u64 {
        let mut acc = 0u64;
        let mut x = a;
        for _ in 0..self.inner.k {
            acc = self.add(&acc, &x);
            x = self.frobenius(x);
        }
        acc
    }

    /// The polynomial string of an element in the generator `a`.
    fn poly_string(&self, a: u64) -> String {
        if self.inner.k == 1 {
            return a.to_string();
        }
        let d = self.digits(a);
        let mut parts = Vec::new();
        for (i, &c) in d.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let var = match i {
                0 => String::new(),
                1 => "a".to_string(),
                _ => format!("a^{i}"),
            };
            parts.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => var,
                _ => format!("{c}*{var}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

fn base_with_modulus(p: u64, modulus: Vec<u64>) -> FiniteField {
    FiniteField::raw(p, 1, p, modulus)
}

impl Ring for FiniteField {
    type Elem = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let inner = &*self.inner;
        if inner.k == 1 {
            let s = a + b;
            if s >= inner.p {
                s - inner.p
            } else {
                s
            }
        } else if inner.p == 2 {
            a ^ b
        } else if !inner.add_table.is_empty() {
            inner.add_table[(*a * inner.q + *b) as usize] as u64
        } else {
            self.digit_add(*a, *b)
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        let inner = &*self.inner;
        if inner.k == 1 {
            if a >= b {
                a - b
            } else {
                a + inner.p - b
            }
        } else {
            self.add(a, &self.neg(b))
        }
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        let inner = &*self.inner;
        if inner.k == 1 {
            if *a == 0 {
                0
            } else {
                inner.p - a
            }
        } else {
            self.digit_neg(*a)
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        let inner = &*self.inner;
        if inner.k == 1 {
            if inner.p < (1 << 32) {
                a * b % inner.p
            } else {
                ((*a as u128 * *b as u128) % inner.p as u128) as u64
            }
        } else if !inner.exp.is_empty() {
            if *a == 0 || *b == 0 {
                0
            } else {
                let s = inner.log[*a as usize] as u64 + inner.log[*b as usize] as u64;
                let n = inner.q - 1;
                inner.exp[(if s >= n { s - n } else { s }) as usize]
            }
        } else {
            self.slow_mul(*a, *b)
        }
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_i64(&self, n: i64) -> u64 {
        let p = self.inner.p as i128;
        (((n as i128) % p + p) % p) as u64
    }
}

impl Field for FiniteField {
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let inner = &*self.inner;
        if inner.k == 1 {
            // Extended Euclid over the integers.
            let (mut r0, mut r1) = (inner.p as i128, *a as i128);
            let (mut t0, mut t1) = (0i128, 1i128);
            while r1 != 0 {
                let qt = r0 / r1;
                (r0, r1) = (r1, r0 - qt * r1);
                (t0, t1) = (t1, t0 - qt * t1);
            }
            let p = inner.p as i128;
            Some(((t0 % p + p) % p) as u64)
        } else if !inner.exp.is_empty() {
            let n = inner.q - 1;
            let l = inner.log[*a as usize] as u64;
            Some(inner.exp[((n - l) % n) as usize])
        } else {
            Some(self.pow(a, inner.q - 2))
        }
    }

    fn characteristic(&self) -> u64 {
        self.inner.p
    }

    fn size(&self) -> Option<u64> {
        Some(self.inner.q)
    }

    fn element(&self, idx: u64) -> u64 {
        idx % self.inner.q
    }

    fn index_of(&self, a: &u64) -> Option<u64> {
        Some(*a)
    }

    fn random(&self, rng: &mut ChaCha8Rng) -> u64 {
        rng.gen_range(0..self.inner.q)
    }

    fn desc(&self) -> FieldDesc {
        FieldDesc::Finite { p: self.inner.p, k: self.inner.k, modulus: self.inner.modulus.clone() }
    }

    fn from_ratio(&self, num: i64, den: i64) -> Option<u64> {
        let d = self.from_i64(den);
        self.inv(&d).map(|di| self.mul(&self.from_i64(num), &di))
    }

    fn fmt_elem(&self, a: &u64) -> String {
        self.poly_string(*a)
    }

    fn elem_to_json(&self, a: &u64) -> Value {
        Value::Array(self.digits(*a).into_iter().map(Value::from).collect())
    }

    fn elem_from_json(&self, v: &Value) -> Result<u64> {
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(|n| self.from_i64(n))
                .ok_or_else(|| Error::InvalidInput(format!("bad field element {n}"))),
            Value::Array(a) => {
                if a.len() > self.inner.k as usize {
                    return Err(Error::InvalidInput(format!("too many coefficients in {v}")));
                }
                let mut d = Vec::with_capacity(a.len());
                for c in a {
                    let c = c
                        .as_i64()
                        .ok_or_else(|| Error::InvalidInput(format!("bad coefficient in {v}")))?;
                    d.push(self.from_i64(c));
                }
                Ok(self.from_digits(&d))
            }
            Value::String(s) => {
                let e = Expr::parse(s)?;
                let gen = self.generator();
                let k = self.inner.k;
                e.eval_field(self, &|name| (name == "a" && k > 1).then_some(gen))
            }
            _ => Err(Error::InvalidInput(format!("expected a field element, got {v}"))),
        }
    }

    fn is_square(&self, a: &u64) -> Option<bool> {
        if *a == 0 || self.inner.p == 2 {
            return Some(true);
        }
        Some(self.pow(a, (self.inner.q - 1) / 2) == 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime_u64(2147483647));
        assert!(!is_prime_u64(2147483649));
        assert!(is_prime_u64(18446744073709551557));
        assert!(!is_prime_u64(1));
    }

    #[test]
    fn gf4_arithmetic() {
        let f = FiniteField::new(2, 2, None).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let a = f.generator();
        // a^2 = a + 1
        assert_eq!(f.mul(&a, &a), f.add(&a, &1));
        assert_eq!(f.pow(&a, 3), 1);
        for x in 1..4 {
            assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), 1);
        }
    }

    #[test]
    fn gf9_tables_agree_with_slow_path() {
        let f = FiniteField::new(3, 2, None).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        for a in 0..9 {
            for b in 0..9 {
                assert_eq!(f.mul(&a, &b), f.slow_mul(a, b));
                assert_eq!(f.add(&a, &b), f.digit_add(a, b));
            }
        }
    }

    #[test]
    fn large_prime_field() {
        let f = FiniteField::prime(2147483647).unwrap();
        let x = 123456789u64;
        assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), 1);
        assert_eq!(f.from_i64(-1), 2147483646);
    }

    #[test]
    fn rejects_reducible_modulus() {
        assert!(FiniteField::new(2, 2, Some(vec![1, 0, 1])).is_err());
        assert!(FiniteField::new(4, 1, None).is_err());
    }

    #[test]
    fn untabled_extension_matches_field_axioms() {
        let f = FiniteField::new(2, 31, None).unwrap();
        let a = f.generator();
        let b = f.add(&f.pow(&a, 17), &1);
        let bi = f.inv(&b).unwrap();
        assert_eq!(f.mul(&b, &bi), 1);
        assert_eq!(f.pow(&a, f.order() - 1), 1);
    }
}
