//! Sparse multivariate polynomials with exact coefficients.
//!
//! A monomial is a multiset of variable indices packed into a `u128`:
//! up to [`MAX_DEGREE`] slots of 7 bits, each holding `var + 1`, in
//! ascending order from the low end. Variables are limited to
//! [`MAX_VARS`].

use rustc_hash::FxHashMap;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{Algebra, Field, Ring};

pub type Mono = u128;

pub const MAX_VARS: usize = 127;
pub const MAX_DEGREE: usize = 18;
const SLOT: u32 = 7;
const MASK: u128 = 0x7f;

pub const ONE_MONO: Mono = 0;

#[inline]
pub fn mono_degree(m: Mono) -> usize {
    let bits = 128 - m.leading_zeros();
    bits.div_ceil(SLOT) as usize
}

#[inline]
pub fn mono_var(v: usize) -> Mono {
    (v as u128) + 1
}

/// Variable indices of a monomial in ascending order.
pub fn mono_vars(m: Mono) -> Vec<usize> {
    let mut out = Vec::with_capacity(mono_degree(m));
    let mut r = m;
    while r != 0 {
        out.push(((r & MASK) - 1) as usize);
        r >>= SLOT;
    }
    out
}

pub fn mono_from_vars(vars: &[usize]) -> Mono {
    let mut v: Vec<usize> = vars.to_vec();
    v.sort_unstable();
    assert!(v.len() <= MAX_DEGREE, "monomial degree exceeds {MAX_DEGREE}");
    v.iter().rev().fold(0u128, |acc, &x| {
        assert!(x < MAX_VARS, "variable index out of range");
        (acc << SLOT) | (x as u128 + 1)
    })
}

#[inline]
pub fn mono_mul(a: Mono, b: Mono) -> Mono {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let mut buf = [0u8; 2 * MAX_DEGREE];
    let mut n = 0;
    let (mut x, mut y) = (a, b);
    while x != 0 && y != 0 {
        let (xa, yb) = ((x & MASK) as u8, (y & MASK) as u8);
        if xa <= yb {
            buf[n] = xa;
            x >>= SLOT;
        } else {
            buf[n] = yb;
            y >>= SLOT;
        }
        n += 1;
    }
    let mut rest = if x != 0 { x } else { y };
    while rest != 0 {
        buf[n] = (rest & MASK) as u8;
        rest >>= SLOT;
        n += 1;
    }
    assert!(n <= MAX_DEGREE, "monomial degree exceeds {MAX_DEGREE}");
    buf[..n].iter().rev().fold(0u128, |acc, &s| (acc << SLOT) | s as u128)
}

/// Exponent of variable `v` in `m`.
pub fn mono_exponent(m: Mono, v: usize) -> usize {
    let target = v as u128 + 1;
    let mut r = m;
    let mut e = 0;
    while r != 0 {
        if r & MASK == target {
            e += 1;
        }
        r >>= SLOT;
    }
    e
}

/// Removes one occurrence of `v` from `m`.
pub fn mono_remove(m: Mono, v: usize) -> Option<Mono> {
    let vars = mono_vars(m);
    let pos = vars.iter().position(|&x| x == v)?;
    let mut rest = vars;
    rest.remove(pos);
    Some(mono_from_vars(&rest))
}

/// A polynomial: terms sorted by packed monomial, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    pub terms: Vec<(Mono, E)>,
}

impl<E> Poly<E> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.iter().map(|(m, _)| mono_degree(*m)).max()
    }

    /// Degree if every term has the same degree.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let d = self.degree()?;
        self.terms.iter().all(|(m, _)| mono_degree(*m) == d).then_some(d)
    }

    pub fn coeff(&self, m: Mono) -> Option<&E> {
        self.terms.binary_search_by_key(&m, |(x, _)| *x).ok().map(|i| &self.terms[i].1)
    }
}

/// The polynomial ring F[x_0, ..., x_{n-1}].
#[derive(Clone, Debug)]
pub struct PolyRing<F: Field> {
    pub field: F,
    pub nvars: usize,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: &F, nvars: usize) -> Result<Self> {
        if nvars > MAX_VARS {
            return Err(Error::TooLarge(format!("{nvars} variables exceed the limit of {MAX_VARS}")));
        }
        Ok(PolyRing { field: field.clone(), nvars })
    }

    pub fn var(&self, i: usize) -> Poly<F::Elem> {
        assert!(i < self.nvars);
        Poly { terms: vec![(mono_var(i), self.field.one())] }
    }

    /// Variables `start..start+count` as a vector.
    pub fn vars(&self, start: usize, count: usize) -> Vec<Poly<F::Elem>> {
        (start..start + count).map(|i| self.var(i)).collect()
    }

    pub fn constant(&self, c: &F::Elem) -> Poly<F::Elem> {
        if self.field.is_zero(c) {
            Poly::zero()
        } else {
            Poly { terms: vec![(ONE_MONO, c.clone())] }
        }
    }

    pub fn monomial(&self, vars: &[usize], c: &F::Elem) -> Poly<F::Elem> {
        if self.field.is_zero(c) {
            Poly::zero()
        } else {
            Poly { terms: vec![(mono_from_vars(vars), c.clone())] }
        }
    }

    fn collect_terms(&self, map: FxHashMap<Mono, F::Elem>) -> Poly<F::Elem> {
        let mut terms: Vec<(Mono, F::Elem)> =
            map.into_iter().filter(|(_, c)| !self.field.is_zero(c)).collect();
        terms.sort_unstable_by_key(|(m, _)| *m);
        Poly { terms }
    }

    /// Formal partial derivative with respect to variable `v`.
    pub fn derivative(&self, p: &Poly<F::Elem>, v: usize) -> Poly<F::Elem> {
        let f = &self.field;
        let mut map: FxHashMap<Mono, F::Elem> = FxHashMap::default();
        for (m, c) in &p.terms {
            let e = mono_exponent(*m, v);
            if e == 0 {
                continue;
            }
            let rest = mono_remove(*m, v).expect("variable present");
            let t = f.mul(&f.from_i64(e as i64), c);
            let slot = map.entry(rest).or_insert_with(|| f.zero());
            f.add_assign(slot, &t);
        }
        self.collect_terms(map)
    }

    /// Evaluates `p` at a point whose coordinates live in an F-algebra.
    pub fn eval_in<R: Algebra<F>>(&self, p: &Poly<F::Elem>, r: &R, x: &[R::Elem]) -> R::Elem {
        let mut acc = r.zero();
        for (m, c) in &p.terms {
            let mut t = r.embed(c);
            for v in mono_vars(*m) {
                t = r.mul(&t, &x[v]);
            }
            r.add_assign(&mut acc, &t);
        }
        acc
    }

    pub fn eval(&self, p: &Poly<F::Elem>, x: &[F::Elem]) -> F::Elem {
        self.eval_in(p, &self.field, x)
    }

    /// Sorted sparse monomial list: `[[[v0, v1, ...], coeff], ...]` ordered
    /// by degree, then variable list.
    pub fn to_json(&self, p: &Poly<F::Elem>) -> Value {
        let mut items: Vec<(Vec<usize>, &F::Elem)> = p.terms.iter().map(|(m, c)| (mono_vars(*m), c)).collect();
        items.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        Value::Array(
            items
                .into_iter()
                .map(|(vars, c)| serde_json::json!([vars, self.field.elem_to_json(c)]))
                .collect(),
        )
    }

    pub fn from_json(&self, v: &Value) -> Result<Poly<F::Elem>> {
        let bad = || Error::InvalidInput(format!("malformed polynomial {v}"));
        let items = v.as_array().ok_or_else(bad)?;
        let mut acc = Poly::zero();
        for item in items {
            let pair = item.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
            let vars: Vec<usize> = pair[0]
                .as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|x| x.as_u64().map(|x| x as usize).filter(|&x| x < self.nvars).ok_or_else(bad))
                .collect::<Result<_>>()?;
            if vars.len() > MAX_DEGREE {
                return Err(bad());
            }
            let c = self.field.elem_from_json(&pair[1])?;
            acc = self.add(&acc, &self.monomial(&vars, &c));
        }
        Ok(acc)
    }

    /// Human-readable rendering with variables `x0, x1, ...`.
    pub fn fmt(&self, p: &Poly<F::Elem>) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = p
            .terms
            .iter()
            .map(|(m, c)| {
                let vars = mono_vars(*m);
                let mut s = self.field.fmt_elem(c);
                for v in vars {
                    s.push_str(&format!("*x{v}"));
                }
                s
            })
            .collect();
        parts.join(" + ")
    }
}

impl<F: Field> Ring for PolyRing<F> {
    type Elem = Poly<F::Elem>;

    fn zero(&self) -> Self::Elem {
        Poly::zero()
    }

    fn one(&self) -> Self::Elem {
        self.constant(&self.field.one())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        let f = &self.field;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() && j < b.terms.len() {
            let (ma, ca) = &a.terms[i];
            let (mb, cb) = &b.terms[j];
            match ma.cmp(mb) {
                std::cmp::Ordering::Less => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((*mb, cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = f.add(ca, cb);
                    if !f.is_zero(&s) {
                        out.push((*ma, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a.terms[i..]);
        out.extend_from_slice(&b.terms[j..]);
        Poly { terms: out }
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Poly { terms: a.terms.iter().map(|(m, c)| (*m, self.field.neg(c))).collect() }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let f = &self.field;
        if a.len() == 1 || b.len() == 1 {
            let (single, other) = if a.len() == 1 { (a, b) } else { (b, a) };
            let (ms, cs) = &single.terms[0];
            let mut terms: Vec<(Mono, F::Elem)> = other
                .terms
                .iter()
                .map(|(m, c)| (mono_mul(*ms, *m), f.mul(cs, c)))
                .filter(|(_, c)| !f.is_zero(c))
                .collect();
            terms.sort_unstable_by_key(|(m, _)| *m);
            return Poly { terms };
        }
        let mut map: FxHashMap<Mono, F::Elem> = FxHashMap::default();
        map.reserve((a.len() * b.len()).min(1 << 16));
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let t = f.mul(ca, cb);
                match map.entry(mono_mul(*ma, *mb)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => f.add_assign(e.get_mut(), &t),
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(t);
                    }
                }
            }
        }
        self.collect_terms(map)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.constant(&self.field.from_i64(n))
    }
}

impl<F: Field> Algebra<F> for PolyRing<F> {
    fn embed(&self, a: &F::Elem) -> Self::Elem {
        self.constant(a)
    }

    fn scale(&self, a: &F::Elem, x: &Self::Elem) -> Self::Elem {
        let f = &self.field;
        if f.is_zero(a) {
            return Poly::zero();
        }
        Poly { terms: x.terms.iter().map(|(m, c)| (*m, f.mul(a, c))).filter(|(_, c)| !f.is_zero(c)).collect() }
    }

    fn lincomb(&self, items: &[(&F::Elem, &Self::Elem)]) -> Self::Elem {
        let f = &self.field;
        match items.len() {
            0 => return Poly::zero(),
            1 => return self.scale(items[0].0, items[0].1),
            _ => {}
        }
        let mut map: FxHashMap<Mono, F::Elem> = FxHashMap::default();
        for (c, p) in items {
            if f.is_zero(c) {
                continue;
            }
            for (m, pc) in &p.terms {
                let t = f.mul(c, pc);
                match map.entry(*m) {
                    std::collections::hash_map::Entry::Occupied(mut e) => f.add_assign(e.get_mut(), &t),
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(t);
                    }
                }
            }
        }
        self.collect_terms(map)
    }
}

/// A homogeneous quadratic form Σ c_ab x_a x_b (a ≤ b).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadForm<E> {
    pub terms: Vec<(u16, u16, E)>,
}

/// A homogeneous cubic form Σ c_abc x_a x_b x_c (a ≤ b ≤ c).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicForm<E> {
    pub terms: Vec<([u16; 3], E)>,
}

impl<E: Clone> QuadForm<E> {
    pub fn from_poly<F: Field<Elem = E>>(f: &F, p: &Poly<E>) -> Result<Self> {
        let mut terms = Vec::with_capacity(p.len());
        for (m, c) in &p.terms {
            let v = mono_vars(*m);
            if v.len() != 2 {
                return Err(Error::InvalidInput(format!(
                    "expected a quadratic form, found a term of degree {}",
                    v.len()
                )));
            }
            if !f.is_zero(c) {
                terms.push((v[0] as u16, v[1] as u16, c.clone()));
            }
        }
        Ok(QuadForm { terms })
    }
}

impl<E: Clone> CubicForm<E> {
    pub fn from_poly<F: Field<Elem = E>>(f: &F, p: &Poly<E>) -> Result<Self> {
        let mut terms = Vec::with_capacity(p.len());
        for (m, c) in &p.terms {
            let v = mono_vars(*m);
            if v.len() != 3 {
                return Err(Error::InvalidInput(format!(
                    "expected a cubic form, found a term of degree {}",
                    v.len()
                )));
            }
            if !f.is_zero(c) {
                terms.push(([v[0] as u16, v[1] as u16, v[2] as u16], c.clone()));
            }
        }
        Ok(CubicForm { terms })
    }
}

/// A family of quadratic forms evaluated together, sharing the products
/// x_a x_b across forms.
#[derive(Clone, Debug)]
pub struct QuadSystem<E> {
    pub nvars: usize,
    pub pairs: Vec<(u16, u16)>,
    pub forms: Vec<Vec<(u32, E)>>,
}

impl<E: Clone> QuadSystem<E> {
    pub fn new(nvars: usize, forms: &[QuadForm<E>]) -> Self {
        let mut index: FxHashMap<(u16, u16), u32> = FxHashMap::default();
        let mut pairs = Vec::new();
        let mut out = Vec::with_capacity(forms.len());
        for q in forms {
            let mut row = Vec::with_capacity(q.terms.len());
            for (a, b, c) in &q.terms {
                let id = *index.entry((*a, *b)).or_insert_with(|| {
                    pairs.push((*a, *b));
                    (pairs.len() - 1) as u32
                });
                row.push((id, c.clone()));
            }
            out.push(row);
        }
        QuadSystem { nvars, pairs, forms: out }
    }

    fn combine<F: Field<Elem = E>, R: Algebra<F>>(&self, r: &R, prods: &[Option<R::Elem>]) -> Vec<R::Elem> {
        self.forms
            .iter()
            .map(|row| {
                let items: Vec<(&E, &R::Elem)> =
                    row.iter().filter_map(|(id, c)| prods[*id as usize].as_ref().map(|p| (c, p))).collect();
                r.lincomb(&items)
            })
            .collect()
    }

    /// q_i(x) for every form.
    pub fn eval_in<F: Field<Elem = E>, R: Algebra<F>>(&self, r: &R, x: &[R::Elem]) -> Vec<R::Elem> {
        let prods: Vec<Option<R::Elem>> = self
            .pairs
            .iter()
            .map(|&(a, b)| {
                let (xa, xb) = (&x[a as usize], &x[b as usize]);
                (!r.is_zero(xa) && !r.is_zero(xb)).then(|| r.mul(xa, xb))
            })
            .collect();
        self.combine(r, &prods)
    }

    /// Polar forms q_i(x + y) - q_i(x) - q_i(y).
    pub fn polar_in<F: Field<Elem = E>, R: Algebra<F>>(&self, r: &R, x: &[R::Elem], y: &[R::Elem]) -> Vec<R::Elem> {
        let prods: Vec<Option<R::Elem>> = self
            .pairs
            .iter()
            .map(|&(a, b)| {
                let (a, b) = (a as usize, b as usize);
                let t1 = (!r.is_zero(&x[a]) && !r.is_zero(&y[b])).then(|| r.mul(&x[a], &y[b]));
                let t2 = (!r.is_zero(&x[b]) && !r.is_zero(&y[a])).then(|| r.mul(&x[b], &y[a]));
                match (t1, t2) {
                    (Some(u), Some(v)) => Some(r.add(&u, &v)),
                    (Some(u), None) | (None, Some(u)) => Some(u),
                    (None, None) => None,
                }
            })
            .collect();
        self.combine(r, &prods)
    }
}

impl<E: Clone> CubicForm<E> {
    pub fn eval_in<F: Field<Elem = E>, R: Algebra<F>>(&self, r: &R, x: &[R::Elem]) -> R::Elem {
        let mut pair_cache: FxHashMap<(u16, u16), R::Elem> = FxHashMap::default();
        let mut prods = Vec::with_capacity(self.terms.len());
        for ([a, b, c], _) in &self.terms {
            let (xa, xb, xc) = (&x[*a as usize], &x[*b as usize], &x[*c as usize]);
            if r.is_zero(xa) || r.is_zero(xb) || r.is_zero(xc) {
                prods.push(None);
                continue;
            }
            let ab = pair_cache.entry((*a, *b)).or_insert_with(|| r.mul(xa, xb)).clone();
            prods.push(Some(r.mul(&ab, xc)));
        }
        let items: Vec<(&E, &R::Elem)> =
            self.terms.iter().zip(&prods).filter_map(|((_, c), p)| p.as_ref().map(|p| (c, p))).collect();
        r.lincomb(&items)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, Rationals};

    #[test]
    fn monomial_packing_roundtrip() {
        let m = mono_from_vars(&[5, 1, 5, 100]);
        assert_eq!(mono_vars(m), vec![1, 5, 5, 100]);
        assert_eq!(mono_degree(m), 4);
        let n = mono_from_vars(&[0, 5]);
        assert_eq!(mono_vars(mono_mul(m, n)), vec![0, 1, 5, 5, 5, 100]);
        assert_eq!(mono_exponent(m, 5), 2);
        assert_eq!(mono_degree(ONE_MONO), 0);
    }

    #[test]
    fn binomial_square_over_gf2_and_q() {
        let f = FiniteField::prime(2).unwrap();
        let r = PolyRing::new(&f, 2).unwrap();
        let s = r.add(&r.var(0), &r.var(1));
        let sq = r.mul(&s, &s);
        assert_eq!(sq, r.add(&r.mul(&r.var(0), &r.var(0)), &r.mul(&r.var(1), &r.var(1))));

        let q = Rationals;
        let r = PolyRing::new(&q, 2).unwrap();
        let s = r.add(&r.var(0), &r.var(1));
        let d = r.sub(&r.mul(&s, &s), &r.add(&r.mul(&r.var(0), &r.var(0)), &r.mul(&r.var(1), &r.var(1))));
        assert_eq!(d, r.scale(&q.from_i64(2), &r.mul(&r.var(0), &r.var(1))));
    }

    #[test]
    fn derivative_of_cube() {
        let q = Rationals;
        let r = PolyRing::new(&q, 1).unwrap();
        let x = r.var(0);
        let c = r.mul(&r.mul(&x, &x), &x);
        assert_eq!(r.derivative(&c, 0), r.scale(&q.from_i64(3), &r.mul(&x, &x)));
    }

    #[test]
    fn polar_matches_difference() {
        let q = Rationals;
        let r = PolyRing::new(&q, 4).unwrap();
        let p = r.add(&r.mul(&r.var(0), &r.var(0)), &r.scale(&q.from_i64(3), &r.mul(&r.var(0), &r.var(1))));
        let form = QuadForm::from_poly(&q, &p).unwrap();
        let sys = QuadSystem::new(2, &[form]);
        let x = vec![q.from_i64(2), q.from_i64(5)];
        let y = vec![q.from_i64(-1), q.from_i64(7)];
        let s: Vec<_> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let lhs = sys.polar_in(&q, &x, &y)[0].clone();
        let rhs = &sys.eval_in(&q, &s)[0] - &sys.eval_in(&q, &x)[0] - &sys.eval_in(&q, &y)[0];
        assert_eq!(lhs, rhs);
    }
}
