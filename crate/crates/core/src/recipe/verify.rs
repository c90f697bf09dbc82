//! Re-validating the witnesses stored in a report without repeating any
//! search.

use serde_json::{json, Value};

use crate::constructions::first_tits;
use crate::error::{Error, Result};
use crate::etale::{CubicEtale, EtaleTensor};
use crate::field::{vec_from_json, AnyField, Field, FieldDesc, FiniteField, Ring};
use crate::linalg::Matrix;
use crate::report::{Status, REPORT_VERSION};
use crate::skolem_noether::{
    generated_subalgebra, initial_embedding, is_etale_subalgebra, spliet_delta, weak_equivalence_check,
};
use crate::structure_group::GroupElementCertificate;
use crate::with_field;

use super::exec::{build, unitary_datum};
use super::parse;
use super::spec::{GroupOp, Her3Full, Her3Spec, Recipe, Search};

#[derive(Clone, Debug, Default)]
pub struct VerifyOutcome {
    pub verified: Vec<String>,
    pub skipped: Vec<String>,
    pub failures: Vec<String>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "verified": self.verified,
            "skipped": self.skipped,
            "failures": self.failures,
        })
    }

    fn check(&mut self, what: impl Into<String>, ok: bool) {
        let what = what.into();
        if ok {
            self.verified.push(what);
        } else {
            self.failures.push(what);
        }
    }
}

fn field_vec<F: Field>(f: &F, v: &Value, what: &str) -> Result<Vec<F::Elem>> {
    vec_from_json(f, v).map_err(|e| Error::InvalidInput(format!("{what}: {e}")))
}

pub fn verify_report(report: &Value) -> Result<VerifyOutcome> {
    if report["version"] != json!(REPORT_VERSION) {
        return Err(Error::InvalidInput(format!("not a {REPORT_VERSION} document")));
    }
    let recipe = Recipe::from_value(&report["recipe"])?;
    let mut out = VerifyOutcome::default();
    let status = report["status"].as_str().and_then(Status::parse);
    let Some(status) = status else {
        return Err(Error::InvalidInput("report has no valid status".into()));
    };
    out.check("exit code matches status", report["exit_code"] == json!(status.exit_code()));
    if status == Status::RecipeError || status == Status::BudgetExceeded {
        out.skipped.push(format!("the run ended with {}", status.as_str()));
        return Ok(out);
    }
    let any = FieldDesc::from_json(&recipe.field)?.build()?;
    if let (Some(GroupOp::OuterCheck(spec)), AnyField::Fq(k)) = (&recipe.group, &any) {
        verify_outer(&mut out, k, spec, &report["group"])?;
        return Ok(out);
    }
    with_field!(&any, f => verify_in(&mut out, f, &recipe, report, status))?;
    Ok(out)
}

fn verify_in<F: Field>(out: &mut VerifyOutcome, f: &F, recipe: &Recipe, report: &Value, status: Status) -> Result<()> {
    if let Some(c) = &recipe.construction {
        let built = build(f, c)?;
        let rec = &report["construction"];
        out.check("construction rebuilds with the recorded label and dimension", rec["label"] == json!(built.label()) && rec["dim"] == json!(built.dim()));
        let checks = report["checks"].as_array().cloned().unwrap_or_default();
        let all_passed = checks.iter().all(|c| c["passed"] == json!(true));
        out.check("status agrees with the check verdicts", all_passed == (status == Status::Pass));
        out.skipped.push(format!("{} identity verdicts (not witnesses; rerun `check` to recompute)", checks.len()));
    }
    if let Some(s) = &recipe.search {
        let failed = report["search"]["passed"] == json!(false);
        out.check("status agrees with the search verdict", failed == (status == Status::Fail));
        verify_search(out, f, s, &report["search"])?;
    }
    if let Some(g) = &recipe.group {
        let passed = report["group"]["passed"] == json!(true);
        out.check("status agrees with the group verdict", passed == (status == Status::Pass));
        verify_group(out, f, g, &report["group"])?;
    }
    Ok(())
}

fn verify_search<F: Field>(out: &mut VerifyOutcome, f: &F, s: &Search, rec: &Value) -> Result<()> {
    match s {
        Search::NormMembership { e, l, w } => {
            let e = parse::cubic_etale(f, e)?;
            let l = parse::quadratic_etale(f, l)?;
            let w = parse::e_elem(f, &e, w)?;
            match rec["decision"].get("trivial") {
                Some(t) => {
                    let y = field_vec(f, &t["witness"], "witness")?;
                    let tens = EtaleTensor::new(&e, &l);
                    out.check("norm witness: y is a unit with n_L(y) = w", tens.inverse(&y).is_some() && tens.n_l(&y) == w);
                }
                None => out.skipped.push("non-trivial or unknown norm class (no witness)".into()),
            }
        }
        Search::Nornor { e, l, .. } => {
            let e = parse::cubic_etale(f, e)?;
            let l = parse::quadratic_etale(f, l)?;
            let t = EtaleTensor::new(&e, &l);
            let cases = rec["cases"].as_array().cloned().unwrap_or_default();
            let mut bad = 0;
            for c in &cases {
                let y = field_vec(f, &c["y"], "y")?;
                let w = field_vec(f, &c["witness"], "witness")?;
                let ok = f.is_one(&l.norm(&t.norm_e(&y))) && t.norm_e(&w) == t.norm_e(&y) && t.n_l(&w) == e.one();
                bad += usize::from(!ok);
            }
            out.check(format!("{} witnesses y' with N_E(y') = N_E(y) and n_L(y') = 1", cases.len()), bad == 0);
        }
        Search::Etfim { e, alpha, alpha2 } => {
            let e = parse::cubic_etale(f, e)?;
            if rec["equivalent"] == json!(true) {
                let (a, a2) = (parse::scalar(f, alpha)?, parse::scalar(f, alpha2)?);
                let x = field_vec(f, &rec["witness"], "witness")?;
                let a2e = if rec["epsilon"] == json!(1) { f.inv(&a2) } else { Some(a2) };
                let ok = a2e.is_some_and(|a2e| e.norm(&x) == f.mul(&a, &a2e));
                out.check("N_E(x) = alpha alpha'^(-epsilon)", ok);
            } else {
                out.skipped.push("non-equivalence (exhaustive result)".into());
            }
        }
        Search::Spliet { u0, .. } => {
            let e = CubicEtale::split(f);
            let u0 = parse::e_elem(f, &e, u0)?;
            let alpha = f.elem_from_json(&rec["alpha"])?;
            let y = field_vec(f, &rec["y"], "y")?;
            let j = first_tits(&e.assoc, &f.one())?;
            let zero = [f.zero(), f.zero(), f.zero()];
            out.check("y = u0 + alpha j1", y == j.elem(&u0, &e.scalar(&alpha), &zero));
            let delta = spliet_delta(&e, &u0, &alpha);
            out.check("recorded delta_y matches and is nonzero", !f.is_zero(&delta) && rec["delta_y"] == f.elem_to_json(&delta));
            out.check("F[y] is etale", is_etale_subalgebra(&j.cns, &y));
            let span = generated_subalgebra(&j.cns, &j.elem(&u0, &zero, &zero), &y);
            out.check("u0 and y span dimension 9 with nonzero Gram determinant", span.dim == 9 && !f.is_zero(&span.gram_det));
        }
        Search::WeakEquivalence { e, l, u, b, w, matrix } => {
            let e = parse::cubic_etale(f, e)?;
            let l = parse::quadratic_etale(f, l)?;
            let (u, b, w) = (parse::e_elem(f, &e, u)?, parse::l_elem(f, &l, b)?, parse::e_elem(f, &e, w)?);
            let j = crate::constructions::etale_tits(&e, &l, &u, &b)?;
            let i = initial_embedding(&e, &j)?;
            let m = match matrix {
                Some(v) => Matrix::from_json(f, v)?,
                None => Matrix::identity(f, j.dim()),
            };
            let verdict = weak_equivalence_check(&i, &i.twist(&w)?, &w, &m);
            out.check("recorded equivalence verdict recomputes", rec["verdict"] == json!(verdict.as_str()));
            if let Some(t) = rec["norm_class"]["decision"].get("trivial") {
                let y = field_vec(f, &t["witness"], "witness")?;
                let tens = EtaleTensor::new(&e, &l);
                out.check("norm class witness: n_L(y) = w", tens.inverse(&y).is_some() && tens.n_l(&y) == w);
            }
        }
        Search::Extri { .. } | Search::Sweep { .. } => {
            out.skipped.push(format!("{} records exhaustive counts only", s.name()));
        }
    }
    Ok(())
}

fn verify_group<F: Field>(out: &mut VerifyOutcome, f: &F, g: &GroupOp, rec: &Value) -> Result<()> {
    let composition = match g {
        GroupOp::Sym3(s) => &s.composition,
        GroupOp::Uw(s) => &s.composition,
        GroupOp::OuterCheck(_) => return Err(Error::InvalidField("outer-check needs a finite field K".into())),
    };
    let h = parse::her3(f, &Her3Spec::Full(Her3Full { composition: composition.clone(), gamma: None }))?;
    let m = Matrix::from_json(f, &rec["matrix"])?;
    let c = GroupElementCertificate::certify(&h, m, "recorded")?;
    let flags = json!({
        "in_str": c.in_str,
        "fixes_norm": c.fixes_norm,
        "normalizes_e": c.normalizes_e,
        "fixes_unit": c.fixes_unit,
    });
    let recorded = json!({
        "in_str": rec["in_str"],
        "fixes_norm": rec["fixes_norm"],
        "normalizes_e": rec["normalizes_e"],
        "fixes_unit": rec["fixes_unit"],
    });
    out.check("recorded matrix re-certifies with the recorded flags", flags == recorded);
    Ok(())
}

fn verify_outer(out: &mut VerifyOutcome, k: &FiniteField, spec: &super::spec::OuterSpec, rec: &Value) -> Result<()> {
    let (datum, psi) = unitary_datum(k, spec)?;
    psi.validate(&datum)?;
    out.verified.push("psi is an anti-automorphism commuting with tau".into());
    let parse_mat = |v: &Value| -> Result<Vec<u64>> { vec_from_json(k, v) };
    let gens = rec["generators"].as_array().cloned().unwrap_or_default();
    let gens: Vec<Vec<u64>> = gens.iter().map(parse_mat).collect::<Result<_>>()?;
    let id = datum.identity();
    let in_su = |g: &[u64]| g.len() == datum.d * datum.d && datum.mul(&datum.tau(g), g) == id && k.is_one(&datum.det(g));
    out.check(format!("{} recorded generators lie in SU(B, tau)", gens.len()), gens.iter().all(|g| in_su(g)));
    match rec["verdict"]["kind"].as_str() {
        Some("inner") => {
            let h = parse_mat(&rec["verdict"]["conjugator"])?;
            let ok = in_su(&h)
                && gens.iter().all(|s| {
                    let phi = datum.inverse(&psi.apply(k, s));
                    phi.is_some_and(|p| datum.mul(&p, &h) == datum.mul(&h, s))
                });
            out.check("phi agrees with conjugation by the recorded element on the generators", ok);
        }
        _ => out.skipped.push("outerness (exhaustive comparison)".into()),
    }
    Ok(())
}
