use rand_chacha::ChaCha8Rng;

use super::{upoly, Algebra, Field, Ring};

/// The field F[t]/(g) for a monic irreducible g over a finite field F, used
/// as the sample space for randomized identity checks over small fields.
#[derive(Clone, Debug)]
pub struct ExtRing<F: Field> {
    base: F,
    modulus: Vec<F::Elem>,
    deg: usize,
}

impl<F: Field> ExtRing<F> {
    /// Picks the irreducible modulus of degree `deg` by seeded random search.
    pub fn random(base: &F, deg: usize, rng: &mut ChaCha8Rng) -> ExtRing<F> {
        loop {
            let mut g: Vec<F::Elem> = (0..deg).map(|_| base.random(rng)).collect();
            g.push(base.one());
            if upoly::is_irreducible(base, &g) {
                return ExtRing { base: base.clone(), modulus: g, deg };
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    pub fn modulus(&self) -> &[F::Elem] {
        &self.modulus
    }

    pub fn random_elem(&self, rng: &mut ChaCha8Rng) -> Vec<F::Elem> {
        (0..self.deg).map(|_| self.base.random(rng)).collect()
    }

    fn pad(&self, mut a: Vec<F::Elem>) -> Vec<F::Elem> {
        a.resize(self.deg, self.base.zero());
        a
    }
}

impl<F: Field> Ring for ExtRing<F> {
    type Elem = Vec<F::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.deg]
    }
    fn one(&self) -> Self::Elem {
        let mut v = self.zero();
        v[0] = self.base.one();
        v
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.pad(upoly::mulmod(&self.base, a, b, &self.modulus))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|x| self.base.is_zero(x))
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        let mut v = self.zero();
        v[0] = self.base.from_i64(n);
        v
    }
}

impl<F: Field> Algebra<F> for ExtRing<F> {
    fn embed(&self, a: &F::Elem) -> Self::Elem {
        let mut v = self.zero();
        v[0] = a.clone();
        v
    }

    fn scale(&self, a: &F::Elem, x: &Self::Elem) -> Self::Elem {
        x.iter().map(|c| self.base.mul(a, c)).collect()
    }
}
