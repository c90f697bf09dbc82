//! Choosing y = u₀ + αj₁ in J(E₁, 1) with F[y] étale, and the span of the
//! nine elements generated by a pair (x, x′).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::constructions::{first_tits, FirstTits};
use crate::cubic_norm::Cns;
use crate::error::{Error, Result};
use crate::etale::CubicEtale;
use crate::field::{upoly, vec_to_json, Field};
use crate::linalg::{rank_of, Matrix};

#[derive(Clone, Debug)]
pub struct SplietResult<F: Field> {
    pub alpha: F::Elem,
    pub delta_u0: F::Elem,
    pub delta_y: F::Elem,
    /// y = u₀ + αj₁ in the coordinates of J(E₁, 1).
    pub y: Vec<F::Elem>,
    pub j: FirstTits<F>,
}

impl<F: Field> SplietResult<F> {
    pub fn to_json(&self) -> Value {
        let f = self.j.field();
        json!({
            "alpha": f.elem_to_json(&self.alpha),
            "delta_u0": f.elem_to_json(&self.delta_u0),
            "delta_y": f.elem_to_json(&self.delta_y),
            "y": vec_to_json(f, &self.y),
        })
    }
}

/// Δ_{u₀} − (4T³ + 54N − 18T·T(u₀^♯))α³ − 27α⁶.
pub fn spliet_delta<F: Field>(e: &CubicEtale<F>, u0: &[F::Elem], alpha: &F::Elem) -> F::Elem {
    let f = e.field();
    let c = e.char_poly(u0);
    let d0 = upoly::cubic_discriminant(f, &c[2], &c[1], &c[0]);
    let (t, n, s) = (e.trace(u0), e.norm(u0), e.trace(&e.sharp(u0)));
    let t3 = f.mul(&f.mul(&t, &t), &t);
    let coef = f.sub(
        &f.add(&f.mul(&f.from_i64(4), &t3), &f.mul(&f.from_i64(54), &n)),
        &f.mul(&f.from_i64(18), &f.mul(&t, &s)),
    );
    let a3 = f.mul(&f.mul(alpha, alpha), alpha);
    let a6 = f.mul(&a3, &a3);
    f.sub(&f.sub(&d0, &f.mul(&coef, &a3)), &f.mul(&f.from_i64(27), &a6))
}

/// The first α ≠ 0 in canonical field order with Δ_y(α) ≠ 0; at most
/// `limit` candidates are tried over infinite fields.
pub fn spliet_alpha<F: Field>(e: &CubicEtale<F>, u0: &[F::Elem], limit: u64) -> Result<SplietResult<F>> {
    let f = e.field();
    let c = e.char_poly(u0);
    let delta_u0 = upoly::cubic_discriminant(f, &c[2], &c[1], &c[0]);
    if f.is_zero(&delta_u0) {
        return Err(Error::NoGenerator);
    }
    let j = first_tits(&e.assoc, &f.one())?;
    let bound = f.size().unwrap_or(limit).min(limit.max(1));
    for idx in 0..bound {
        let alpha = f.element(idx);
        if f.is_zero(&alpha) {
            continue;
        }
        let delta_y = spliet_delta(e, u0, &alpha);
        if !f.is_zero(&delta_y) {
            let y = j.elem(u0, &e.scalar(&alpha), &[f.zero(), f.zero(), f.zero()]);
            return Ok(SplietResult { alpha, delta_u0, delta_y, y, j });
        }
    }
    Err(Error::Exhausted(format!("no alpha among the first {bound} field elements gives delta_y != 0")))
}

/// Basis {1, y, y²} of F[y] with y² = U_y 1, when it is 3-dimensional.
pub fn generated_cubic<F: Field>(j: &Cns<F>, y: &[F::Elem]) -> Option<Vec<Vec<F::Elem>>> {
    let one = j.base.clone();
    let y2 = j.u(y, &one);
    let basis = vec![one, y.to_vec(), y2];
    (rank_of(&j.field, &basis) == 3).then_some(basis)
}

/// F[y] is a 3-dimensional subalgebra on which the trace form of J is
/// nondegenerate.
pub fn is_etale_subalgebra<F: Field>(j: &Cns<F>, y: &[F::Elem]) -> bool {
    let Some(basis) = generated_cubic(j, y) else {
        return false;
    };
    !j.field.is_zero(&gram_det(j, &basis))
}

fn gram_det<F: Field>(j: &Cns<F>, xs: &[Vec<F::Elem>]) -> F::Elem {
    let rows = xs.iter().map(|a| xs.iter().map(|b| j.trace(a, b)).collect()).collect();
    Matrix::from_rows(rows).det(&j.field)
}

#[derive(Clone, Debug)]
pub struct SpanReport<F: Field> {
    pub elements: Vec<Vec<F::Elem>>,
    pub dim: usize,
    pub gram_det: F::Elem,
}

impl<F: Field> SpanReport<F> {
    pub fn is_full(&self, n: usize) -> bool {
        self.dim == n
    }
}

/// The nine elements 1, x, x^♯, x′, x′^♯, x×x′, x^♯×x′, x×x′^♯, x^♯×x′^♯,
/// their span dimension and the determinant of T(x_m, x_n).
pub fn generated_subalgebra<F: Field>(j: &Cns<F>, x: &[F::Elem], x2: &[F::Elem]) -> SpanReport<F> {
    let (xs, x2s) = (j.sharp(x), j.sharp(x2));
    let elements = vec![
        j.base.clone(),
        x.to_vec(),
        xs.clone(),
        x2.to_vec(),
        x2s.clone(),
        j.cross(x, x2),
        j.cross(&xs, x2),
        j.cross(x, &x2s),
        j.cross(&xs, &x2s),
    ];
    let dim = rank_of(&j.field, &elements);
    let gram_det = gram_det(j, &elements);
    SpanReport { elements, dim, gram_det }
}

/// Samples pairs with a seeded generator until the nine elements span a
/// 9-dimensional space with nonzero Gram determinant.
pub fn random_generating_pair<F: Field>(
    j: &Cns<F>,
    seed: u64,
    tries: usize,
) -> Option<(Vec<F::Elem>, Vec<F::Elem>, SpanReport<F>)> {
    let f = &j.field;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..tries {
        let x: Vec<F::Elem> = (0..j.dim).map(|_| f.random(&mut rng)).collect();
        let x2: Vec<F::Elem> = (0..j.dim).map(|_| f.random(&mut rng)).collect();
        let rep = generated_subalgebra(j, &x, &x2);
        if rep.dim == 9 && !f.is_zero(&rep.gram_det) {
            return Some((x, x2, rep));
        }
    }
    None
}
