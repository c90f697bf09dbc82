//! Finite-dimensional algebras given by structure constants.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Algebra, Field, Ring};
use crate::linalg::Matrix;

/// e_i e_j = Σ_k c_ijk e_k, stored sparsely.
#[derive(Clone, Debug)]
pub struct StructAlgebra<F: Field> {
    pub field: F,
    pub dim: usize,
    table: Vec<Vec<(usize, F::Elem)>>,
    pub unit: Vec<F::Elem>,
}

impl<F: Field> StructAlgebra<F> {
    /// Builds from a closure returning the coordinates of e_i e_j.
    pub fn from_fn(field: &F, dim: usize, unit: Vec<F::Elem>, prod: impl Fn(usize, usize) -> Vec<F::Elem>) -> Self {
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = prod(i, j);
                assert_eq!(v.len(), dim, "structure constant length");
                table.push(v.into_iter().enumerate().filter(|(_, c)| !field.is_zero(c)).collect());
            }
        }
        StructAlgebra { field: field.clone(), dim, table, unit }
    }

    /// Builds from a dense tensor c[i][j][k].
    pub fn from_tensor(field: &F, c: &[Vec<Vec<F::Elem>>], unit: Vec<F::Elem>) -> Result<Self> {
        let dim = c.len();
        if unit.len() != dim || c.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
            return Err(Error::InvalidInput("structure tensor has inconsistent dimensions".into()));
        }
        Ok(Self::from_fn(field, dim, unit, |i, j| c[i][j].clone()))
    }

    pub fn product(&self, i: usize, j: usize) -> &[(usize, F::Elem)] {
        &self.table[i * self.dim + j]
    }

    pub fn basis(&self, i: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    pub fn zero(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim]
    }

    pub fn one(&self) -> Vec<F::Elem> {
        self.unit.clone()
    }

    pub fn scalar(&self, c: &F::Elem) -> Vec<F::Elem> {
        self.unit.iter().map(|u| self.field.mul(c, u)).collect()
    }

    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        self.mul_in(&self.field, a, b)
    }

    /// Product of two elements whose coordinates live in an F-algebra R.
    pub fn mul_in<R: Algebra<F>>(&self, r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        let n = self.dim;
        let mut buckets: Vec<Vec<(&F::Elem, R::Elem)>> = vec![Vec::new(); n];
        let mut prods: Vec<(usize, R::Elem)> = Vec::new();
        for i in 0..n {
            if r.is_zero(&a[i]) {
                continue;
            }
            for j in 0..n {
                let entry = &self.table[i * n + j];
                if entry.is_empty() || r.is_zero(&b[j]) {
                    continue;
                }
                prods.push((i * n + j, r.mul(&a[i], &b[j])));
            }
        }
        for (ij, p) in &prods {
            for (k, c) in &self.table[*ij] {
                buckets[*k].push((c, p.clone()));
            }
        }
        buckets
            .iter()
            .map(|items| {
                let refs: Vec<(&F::Elem, &R::Elem)> = items.iter().map(|(c, p)| (*c, p)).collect();
                r.lincomb(&refs)
            })
            .collect()
    }

    pub fn add(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        a.iter().zip(b).map(|(x, y)| self.field.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        a.iter().zip(b).map(|(x, y)| self.field.sub(x, y)).collect()
    }

    pub fn scale(&self, c: &F::Elem, a: &[F::Elem]) -> Vec<F::Elem> {
        a.iter().map(|x| self.field.mul(c, x)).collect()
    }

    /// Matrix of y ↦ a y (columns are a e_j).
    pub fn left_mult(&self, a: &[F::Elem]) -> Matrix<F::Elem> {
        let cols: Vec<Vec<F::Elem>> = (0..self.dim).map(|j| self.mul(a, &self.basis(j))).collect();
        Matrix::from_cols(&cols)
    }

    /// Matrix of y ↦ y a.
    pub fn right_mult(&self, a: &[F::Elem]) -> Matrix<F::Elem> {
        let cols: Vec<Vec<F::Elem>> = (0..self.dim).map(|j| self.mul(&self.basis(j), a)).collect();
        Matrix::from_cols(&cols)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.table[i * self.dim + j] == self.table[j * self.dim + i]))
    }

    /// (e_i e_j) e_k = e_i (e_j e_k) on all basis triples.
    pub fn is_associative(&self) -> bool {
        self.first_nonassociative_triple().is_none()
    }

    pub fn first_nonassociative_triple(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        let basis: Vec<Vec<F::Elem>> = (0..n).map(|i| self.basis(i)).collect();
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul(&basis[i], &basis[j]);
                for k in 0..n {
                    let jk = self.mul(&basis[j], &basis[k]);
                    if self.mul(&ij, &basis[k]) != self.mul(&basis[i], &jk) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn unit_is_identity(&self) -> bool {
        (0..self.dim).all(|i| {
            let b = self.basis(i);
            self.mul(&self.unit, &b) == b && self.mul(&b, &self.unit) == b
        })
    }

    /// Two-sided inverse in an associative algebra.
    pub fn inverse(&self, a: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let x = self.left_mult(a).solve(&self.field, &self.unit)?;
        (self.mul(&x, a) == self.unit).then_some(x)
    }

    pub fn pow(&self, a: &[F::Elem], e: u32) -> Vec<F::Elem> {
        let mut acc = self.unit.clone();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Tensor product A ⊗ B with basis e_i ⊗ f_a at index i * dim(B) + a.
    pub fn tensor(&self, other: &StructAlgebra<F>) -> StructAlgebra<F> {
        let f = &self.field;
        let (n, m) = (self.dim, other.dim);
        let mut unit = vec![f.zero(); n * m];
        for i in 0..n {
            for a in 0..m {
                unit[i * m + a] = f.mul(&self.unit[i], &other.unit[a]);
            }
        }
        StructAlgebra::from_fn(f, n * m, unit, |x, y| {
            let (i, a) = (x / m, x % m);
            let (j, b) = (y / m, y % m);
            let mut v = vec![f.zero(); n * m];
            for (k, c1) in self.product(i, j) {
                for (l, c2) in other.product(a, b) {
                    v[k * m + l] = f.add(&v[k * m + l], &f.mul(c1, c2));
                }
            }
            v
        })
    }

    /// The opposite algebra (x ∘ y = y x).
    pub fn opposite(&self) -> StructAlgebra<F> {
        let n = self.dim;
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(self.table[j * n + i].clone());
            }
        }
        StructAlgebra { field: self.field.clone(), dim: n, table, unit: self.unit.clone() }
    }

    pub fn to_arc(self) -> Arc<Self> {
        Arc::new(self)
    }
}

/// The commutative ring R ⊗ A for a commutative F-algebra A given by
/// structure constants: coordinates in R, multiplication from A.
#[derive(Clone, Debug)]
pub struct TensorRing<F: Field, R: Algebra<F>> {
    pub base: R,
    pub alg: Arc<StructAlgebra<F>>,
}

impl<F: Field, R: Algebra<F>> TensorRing<F, R> {
    pub fn new(base: &R, alg: Arc<StructAlgebra<F>>) -> Self {
        TensorRing { base: base.clone(), alg }
    }

    /// Embeds an element of A with F-coordinates.
    pub fn from_alg(&self, a: &[F::Elem]) -> Vec<R::Elem> {
        a.iter().map(|c| self.base.embed(c)).collect()
    }

    /// Embeds an element of R as r·1_A.
    pub fn from_base(&self, x: &R::Elem) -> Vec<R::Elem> {
        self.alg.unit.iter().map(|u| self.base.scale(u, x)).collect()
    }
}

impl<F: Field, R: Algebra<F>> Ring for TensorRing<F, R> {
    type Elem = Vec<R::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.alg.dim]
    }
    fn one(&self) -> Self::Elem {
        self.from_alg(&self.alg.unit)
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
        self.alg.mul_in(&self.base, a, b)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|x| self.base.is_zero(x))
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        let c = self.base.from_i64(n);
        self.from_base(&c)
    }
}

impl<F: Field, R: Algebra<F>> Algebra<F> for TensorRing<F, R> {
    fn embed(&self, a: &F::Elem) -> Self::Elem {
        self.alg.unit.iter().map(|u| self.base.embed(&self.base_field_mul(a, u))).collect()
    }

    fn scale(&self, a: &F::Elem, x: &Self::Elem) -> Self::Elem {
        x.iter().map(|c| self.base.scale(a, c)).collect()
    }
}

impl<F: Field, R: Algebra<F>> TensorRing<F, R> {
    fn base_field_mul(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.alg.field.mul(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn gaussian() -> StructAlgebra<Rationals> {
        // Q(i) with basis {1, i}
        let q = Rationals;
        StructAlgebra::from_fn(&q, 2, vec![q.one(), q.zero()], |i, j| match (i, j) {
            (0, k) | (k, 0) => {
                let mut v = vec![q.zero(); 2];
                v[k] = q.one();
                v
            }
            _ => vec![q.from_i64(-1), q.zero()],
        })
    }

    #[test]
    fn gaussian_integers_are_a_field_extension() {
        let g = gaussian();
        assert!(g.is_commutative() && g.is_associative() && g.unit_is_identity());
        let q = Rationals;
        let z = vec![q.from_i64(3), q.from_i64(4)];
        let inv = g.inverse(&z).unwrap();
        assert_eq!(g.mul(&z, &inv), g.one());
    }

    #[test]
    fn tensor_ring_multiplies_in_the_algebra() {
        let q = Rationals;
        let t = TensorRing::new(&q, Arc::new(gaussian()));
        let i = vec![q.zero(), q.one()];
        assert_eq!(t.mul(&i, &i), t.from_i64(-1));
    }
}
