//! Turning recipe values into algebras and elements over a concrete field.

use serde_json::Value;

use crate::algebra::TensorRing;
use crate::assoc::AssocCubic;
use crate::composition::CompositionAlgebra;
use crate::constructions::{Her3, InvolutionAlgebra};
use crate::error::{Error, Result};
use crate::etale::{CubicEtale, QuadraticEtale};
use crate::expr::Expr;
use crate::field::{vec_from_json, Field};

use super::spec::{AssocSpec, DatumSpec, Her3Spec};

/// Coefficients [c0, .., c_{n-1}] of a monic polynomial of degree n in x.
fn monic<F: Field>(f: &F, s: &str, n: usize) -> Result<Vec<F::Elem>> {
    let c = Expr::parse(s)?.univariate(f, "x")?;
    if c.len() != n + 1 || !f.is_one(&c[n]) {
        return Err(Error::InvalidInput(format!("'{s}' is not a monic polynomial of degree {n} in x")));
    }
    Ok(c[..n].to_vec())
}

pub fn cubic_etale<F: Field>(f: &F, v: &Value) -> Result<CubicEtale<F>> {
    match v.as_str() {
        Some("split") => Ok(CubicEtale::split(f)),
        Some(s) => CubicEtale::from_poly(f, &monic(f, s, 3)?),
        None => CubicEtale::from_json(f, v),
    }
}

pub fn quadratic_etale<F: Field>(f: &F, v: &Value) -> Result<QuadraticEtale<F>> {
    match v.as_str() {
        Some("split") => Ok(QuadraticEtale::split(f)),
        Some(s) => QuadraticEtale::from_poly(f, &monic(f, s, 2)?),
        None => QuadraticEtale::from_json(f, v),
    }
}

fn coords<F: Field>(f: &F, v: &Value, n: usize) -> Result<Vec<F::Elem>> {
    let x = vec_from_json(f, v)?;
    if x.len() != n {
        return Err(Error::InvalidInput(format!("expected {n} coordinates, got {}", x.len())));
    }
    Ok(x)
}

fn unit_vec<F: Field>(f: &F, n: usize, i: usize) -> Vec<F::Elem> {
    let mut v = vec![f.zero(); n];
    v[i] = f.one();
    v
}

/// An element of E: coordinates or an expression in `t` (E = F[t]/(f)) or
/// in `e1`, `e2`, `e3` (split E).
pub fn e_elem<F: Field>(f: &F, e: &CubicEtale<F>, v: &Value) -> Result<Vec<F::Elem>> {
    let Some(s) = v.as_str() else {
        return coords(f, v, 3);
    };
    let r = TensorRing::new(f, e.alg().clone());
    let split = e.poly.is_none();
    let var = |name: &str| -> Option<Vec<F::Elem>> {
        match (name, split) {
            ("t", false) => Some(unit_vec(f, 3, 1)),
            ("e1", true) => Some(unit_vec(f, 3, 0)),
            ("e2", true) => Some(unit_vec(f, 3, 1)),
            ("e3", true) => Some(unit_vec(f, 3, 2)),
            _ => None,
        }
    };
    Expr::parse(s)?.eval_algebra(f, &r, &var)
}

/// An element of L: coordinates or an expression in `s`.
pub fn l_elem<F: Field>(f: &F, l: &QuadraticEtale<F>, v: &Value) -> Result<Vec<F::Elem>> {
    let Some(s) = v.as_str() else {
        return coords(f, v, 2);
    };
    let r = TensorRing::new(f, l.alg.clone());
    let var = |name: &str| (name == "s").then(|| unit_vec(f, 2, 1));
    Expr::parse(s)?.eval_algebra(f, &r, &var)
}

pub fn scalar<F: Field>(f: &F, v: &Value) -> Result<F::Elem> {
    f.elem_from_json(v)
}

pub fn scalars<F: Field>(f: &F, v: &[Value]) -> Result<Vec<F::Elem>> {
    v.iter().map(|x| f.elem_from_json(x)).collect()
}

pub fn her3<F: Field>(f: &F, spec: &Her3Spec) -> Result<Her3<F>> {
    let (comp, gamma) = match spec {
        Her3Spec::Preset(name) => (CompositionAlgebra::preset(f, name)?, None),
        Her3Spec::Full(full) => (CompositionAlgebra::from_json(f, &full.composition)?, full.gamma.as_ref()),
    };
    let gamma = match gamma {
        Some(g) => scalars(f, g)?,
        None => vec![f.one(); 3],
    };
    Her3::new(&comp, &gamma)
}

pub fn assoc<F: Field>(f: &F, spec: &AssocSpec) -> Result<AssocCubic<F>> {
    match spec {
        AssocSpec::Mat3 => Ok(AssocCubic::mat3(f)),
        AssocSpec::Etale(e) => Ok(cubic_etale(f, e)?.assoc),
    }
}

pub fn datum<F: Field>(f: &F, spec: &DatumSpec) -> Result<InvolutionAlgebra<F>> {
    match spec {
        DatumSpec::Etale(p) => InvolutionAlgebra::etale(&cubic_etale(f, &p.e)?, &quadratic_etale(f, &p.l)?),
        DatumSpec::Mat3Unitary { l } => InvolutionAlgebra::mat3_unitary(&quadratic_etale(f, l)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FiniteField;

    #[test]
    fn polynomial_strings() {
        let f = FiniteField::prime(2).unwrap();
        let e = cubic_etale(&f, &Value::from("x^3+x+1")).unwrap();
        assert_eq!(e.poly, Some(vec![1, 1, 0]));
        assert_eq!(e_elem(&f, &e, &Value::from("t^3")).unwrap(), vec![1, 1, 0]);
        let l = quadratic_etale(&f, &Value::from("x^2+x+1")).unwrap();
        assert_eq!(l_elem(&f, &l, &Value::from("s^2")).unwrap(), vec![1, 1]);
        assert!(cubic_etale(&f, &Value::from("x^2+1")).is_err());
    }
}
