use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng as _;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use super::{Field, FieldDesc, Ring};
use crate::error::{Error, Result};
use crate::expr::Expr;

/// The field of rational numbers with arbitrary-precision fractions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Rationals {
    pub fn int(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn is_square_int(n: &BigInt) -> bool {
        if n.is_negative() {
            return false;
        }
        let r = n.sqrt();
        &r * &r == *n
    }

    pub fn parse_str(&self, s: &str) -> Result<BigRational> {
        let e = Expr::parse(s)?;
        e.eval_field(self, &|_| None)
    }
}

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        Self::int(n)
    }
    fn add_assign(&self, a: &mut BigRational, b: &BigRational) {
        *a += b;
    }
}

impl Field for Rationals {
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn size(&self) -> Option<u64> {
        None
    }

    fn element(&self, idx: u64) -> BigRational {
        let m = idx.div_ceil(2) as i64;
        if idx % 2 == 1 {
            Self::int(m)
        } else {
            Self::int(-m)
        }
    }

    fn index_of(&self, _a: &BigRational) -> Option<u64> {
        None
    }

    fn random(&self, rng: &mut ChaCha8Rng) -> BigRational {
        Self::int(rng.gen_range(0..(1i64 << 31)))
    }

    fn desc(&self) -> FieldDesc {
        FieldDesc::Rationals
    }

    fn from_ratio(&self, num: i64, den: i64) -> Option<BigRational> {
        (den != 0).then(|| BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn fmt_elem(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn elem_to_json(&self, a: &BigRational) -> Value {
        Value::String(format!("{}/{}", a.numer(), a.denom()))
    }

    fn elem_from_json(&self, v: &Value) -> Result<BigRational> {
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(Self::int)
                .ok_or_else(|| Error::InvalidInput(format!("non-integer JSON number {n}; use a \"num/den\" string"))),
            Value::String(s) => self.parse_str(s),
            _ => Err(Error::InvalidInput(format!("expected a rational, got {v}"))),
        }
    }

    fn sqrt(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_negative() {
            return None;
        }
        let (n, d) = (a.numer().sqrt(), a.denom().sqrt());
        let r = BigRational::new(n, d);
        (&r * &r == *a).then_some(r)
    }

    fn sign(&self, a: &BigRational) -> Option<i8> {
        Some(if a.is_negative() {
            -1
        } else if a.is_zero() {
            0
        } else {
            1
        })
    }

    fn is_square(&self, a: &BigRational) -> Option<bool> {
        Some(Self::is_square_int(a.numer()) && Self::is_square_int(a.denom()))
    }
}

