//! Dense univariate polynomials over a field, coefficients low degree first.

use super::Field;

pub fn trim<F: Field>(f: &F, mut a: Vec<F::Elem>) -> Vec<F::Elem> {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
    a
}

/// Degree, or `None` for the zero polynomial.
pub fn degree<F: Field>(f: &F, a: &[F::Elem]) -> Option<usize> {
    a.iter().rposition(|c| !f.is_zero(c))
}

pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n).map(|i| f.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect();
    trim(f, out)
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n).map(|i| f.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect();
    trim(f, out)
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = f.mul(x, y);
            f.add_assign(&mut out[i + j], &t);
        }
    }
    trim(f, out)
}

pub fn scale<F: Field>(f: &F, c: &F::Elem, a: &[F::Elem]) -> Vec<F::Elem> {
    trim(f, a.iter().map(|x| f.mul(c, x)).collect())
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let db = degree(f, b).expect("division by the zero polynomial");
    let lead_inv = f.inv(&b[db]).expect("nonzero leading coefficient");
    let mut r = trim(f, a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![f.zero(); r.len() - db];
    while let Some(dr) = degree(f, &r) {
        if dr < db {
            break;
        }
        let c = f.mul(&r[dr], &lead_inv);
        let shift = dr - db;
        for (i, bi) in b.iter().enumerate().take(db + 1) {
            let t = f.mul(&c, bi);
            r[shift + i] = f.sub(&r[shift + i], &t);
        }
        q[shift] = c;
        r = trim(f, r);
    }
    (trim(f, q), r)
}

pub fn rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    divrem(f, a, b).1
}

pub fn monic<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    match degree(f, a) {
        None => Vec::new(),
        Some(d) => {
            let inv = f.inv(&a[d]).expect("nonzero");
            scale(f, &inv, &a[..=d])
        }
    }
}

/// Monic greatest common divisor.
pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut x = trim(f, a.to_vec());
    let mut y = trim(f, b.to_vec());
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

pub fn mulmod<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem], m: &[F::Elem]) -> Vec<F::Elem> {
    rem(f, &mul(f, a, b), m)
}

pub fn powmod<F: Field>(f: &F, a: &[F::Elem], mut e: u64, m: &[F::Elem]) -> Vec<F::Elem> {
    let mut base = rem(f, a, m);
    let mut acc = rem(f, &[f.one()], m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(f, &acc, &base, m);
        }
        e >>= 1;
        if e > 0 {
            base = mulmod(f, &base, &base, m);
        }
    }
    acc
}

pub fn eval<F: Field>(f: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    a.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

pub fn derivative<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    let out = a.iter().enumerate().skip(1).map(|(i, c)| f.mul(&f.from_i64(i as i64), c)).collect();
    trim(f, out)
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
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

/// x^(q^i) mod m, computed by repeated q-th powering.
fn frobenius_power<F: Field>(f: &F, i: usize, m: &[F::Elem]) -> Vec<F::Elem> {
    let q = f.size().expect("finite field");
    let mut x = rem(f, &[f.zero(), f.one()], m);
    for _ in 0..i {
        x = powmod(f, &x, q, m);
    }
    x
}

/// Rabin's irreducibility test over a finite field.
pub fn is_irreducible<F: Field>(f: &F, m: &[F::Elem]) -> bool {
    let Some(n) = degree(f, m) else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let m = monic(f, m);
    let x = vec![f.zero(), f.one()];
    if frobenius_power(f, n, &m) != rem(f, &x, &m) {
        return false;
    }
    for r in prime_divisors(n) {
        let h = sub(f, &frobenius_power(f, n / r, &m), &x);
        if gcd(f, &h, &m).len() != 1 {
            return false;
        }
    }
    true
}

/// The monic irreducible polynomial of degree `n` over a finite field whose
/// lower coefficients have the smallest enumeration index.
pub fn first_irreducible<F: Field>(f: &F, n: usize) -> Vec<F::Elem> {
    let q = f.size().expect("finite field");
    let mut idx: u64 = 0;
    loop {
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut r = idx;
        for _ in 0..n {
            coeffs.push(f.element(r % q));
            r /= q;
        }
        coeffs.push(f.one());
        if is_irreducible(f, &coeffs) {
            return coeffs;
        }
        idx += 1;
    }
}

/// Roots in a finite field by exhaustive evaluation, in canonical order.
pub fn roots_exhaustive<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    f.elements().into_iter().filter(|x| f.is_zero(&eval(f, a, x))).collect()
}

/// Discriminant of the monic cubic t³ + a t² + b t + c.
pub fn cubic_discriminant<F: Field>(f: &F, a: &F::Elem, b: &F::Elem, c: &F::Elem) -> F::Elem {
    let i = |n: i64| f.from_i64(n);
    let a2 = f.mul(a, a);
    let b2 = f.mul(b, b);
    let terms = [
        f.mul(&a2, &b2),
        f.mul(&i(-4), &f.mul(&b2, b)),
        f.mul(&i(-4), &f.mul(&f.mul(&a2, a), c)),
        f.mul(&i(-27), &f.mul(c, c)),
        f.mul(&i(18), &f.mul(&f.mul(a, b), c)),
    ];
    f.sum(terms.iter())
}
