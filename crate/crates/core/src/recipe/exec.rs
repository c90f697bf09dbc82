//! Executing a recipe over its field.

use std::sync::Arc;
use std::time::Instant;

use serde_json::{json, Map, Value};

use crate::constructions::{aplus, first_tits, h_b_tau, second_tits, FirstTits, SecondTits};
use crate::cubic_norm::jordan::FundamentalFormula;
use crate::cubic_norm::{Cns, QuadraticJordan};
use crate::error::{Error, Result};
use crate::etale::{EtaleTensor, QuadraticEtale};
use crate::field::{vec_to_json, AnyField, Field, FieldDesc, FiniteField};
use crate::identity::{check_identity, IdentityConfig, IdentityMode};
use crate::linalg::Matrix;
use crate::report::{Report, Status};
use crate::skolem_noether::exhaustive::{sweep_builders_jobs, sweep_setis, sweep_unet};
use crate::skolem_noether::{
    initial_embedding, weak_equivalence_check, Equivalence, etfim_check, extri_sides, generated_subalgebra, is_etale_subalgebra, norm_membership, nornor_witness, spliet_alpha,
    EtfimVerdict, NormTable,
};
use crate::structure_group::{outer_from_antiauto, sym3_operator, uw_operator, AntiAutomorphism, UnitaryDatum};
use crate::with_field;

use super::parse;
use super::spec::{Builder, CheckKind, Construction, GroupOp, Her3Full, Her3Spec, OuterSpec, Recipe, Search};

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub seed: u64,
    pub budget: u64,
    pub identity_mode: IdentityMode,
    pub jobs: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { seed: 0, budget: 10_000_000, identity_mode: IdentityMode::Auto, jobs: 1 }
    }
}

impl RunOptions {
    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "budget": self.budget,
            "identity_mode": self.identity_mode.as_str(),
            "jobs": self.jobs,
        })
    }

    pub fn identity_config(&self) -> IdentityConfig {
        IdentityConfig { mode: self.identity_mode, seed: self.seed, ..Default::default() }
    }
}

/// What a run selects from a recipe.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    All,
    Checks,
    Search,
    Group,
}

impl Part {
    pub fn as_str(&self) -> &'static str {
        match self {
            Part::All => "run",
            Part::Checks => "check",
            Part::Search => "search",
            Part::Group => "group",
        }
    }
}

pub(crate) enum Built<F: Field> {
    Cns(Arc<Cns<F>>),
    First(FirstTits<F>),
    Second(SecondTits<F>),
    Jordan(QuadraticJordan<F>),
}

impl<F: Field> Built<F> {
    pub(crate) fn cns(&self) -> Option<&Arc<Cns<F>>> {
        match self {
            Built::Cns(c) => Some(c),
            Built::First(t) => Some(&t.cns),
            Built::Second(t) => Some(&t.cns),
            Built::Jordan(j) => j.cns.as_ref(),
        }
    }

    pub(crate) fn label(&self) -> String {
        match (self, self.cns()) {
            (_, Some(c)) => c.label.clone(),
            (Built::Jordan(j), None) => j.label.clone(),
            _ => String::new(),
        }
    }

    pub(crate) fn dim(&self) -> usize {
        match (self, self.cns()) {
            (_, Some(c)) => c.dim,
            (Built::Jordan(j), None) => j.dim,
            _ => 0,
        }
    }
}

pub(crate) fn build<F: Field>(f: &F, c: &Construction) -> Result<Built<F>> {
    Ok(match c {
        Construction::Her3(spec) => Built::Cns(parse::her3(f, spec)?.cns),
        Construction::FirstTits { algebra, mu } => Built::First(first_tits(&parse::assoc(f, algebra)?, &parse::scalar(f, mu)?)?),
        Construction::SecondTits { datum, u, mu } => {
            let d = parse::datum(f, datum)?;
            let u = parse::scalars(f, u)?;
            let mu = parse::l_elem(f, d.k(), mu)?;
            Built::Second(second_tits(&d, &u, &mu)?)
        }
        Construction::EtaleTits { e, l, u, b } => {
            let e = parse::cubic_etale(f, e)?;
            let l = parse::quadratic_etale(f, l)?;
            let (u, b) = (parse::e_elem(f, &e, u)?, parse::l_elem(f, &l, b)?);
            Built::Second(crate::constructions::etale_tits(&e, &l, &u, &b)?)
        }
        Construction::Aplus { algebra } => Built::Jordan(aplus(&parse::assoc(f, algebra)?.alg)?),
        Construction::HBTau { datum } => Built::Cns(Arc::new(h_b_tau(&parse::datum(f, datum)?)?)),
    })
}

struct Runner<'a> {
    opts: &'a RunOptions,
    body: Map<String, Value>,
    timings: Map<String, Value>,
    failure: Option<String>,
}

impl Runner<'_> {
    fn time<T>(&mut self, name: &str, run: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = run();
        self.timings.insert(name.to_string(), json!(start.elapsed().as_secs_f64() * 1e3));
        out
    }

    fn fail(&mut self, what: String) {
        if self.failure.is_none() {
            self.failure = Some(what);
        }
    }
}

/// Runs the selected part of a recipe and assembles the report.
pub fn run_recipe(recipe: &Recipe, opts: &RunOptions, part: Part) -> Report {
    let mut opts = opts.clone();
    if let Some(s) = recipe.seed {
        opts.seed = s;
    }
    let mut runner = Runner { opts: &opts, body: Map::new(), timings: Map::new(), failure: None };
    let result = FieldDesc::from_json(&recipe.field).and_then(|d| {
        runner.body.insert("field".into(), d.to_json());
        d.build()
    });
    let result = result.and_then(|any| {
        let selected = match part {
            Part::All => true,
            Part::Checks => recipe.construction.is_some(),
            Part::Search => recipe.search.is_some(),
            Part::Group => recipe.group.is_some(),
        };
        if !selected {
            return Err(Error::InvalidInput(format!("the recipe has no clause for '{}'", part.as_str())));
        }
        match (&recipe.group, &any) {
            (Some(GroupOp::OuterCheck(spec)), AnyField::Fq(k)) => run_outer(&mut runner, k, spec),
            _ => with_field!(&any, f => run_in(&mut runner, f, recipe)),
        }
    });
    let status = match (&result, &runner.failure) {
        (Err(e), _) => Status::of_error(e),
        (Ok(()), Some(_)) => Status::Fail,
        (Ok(()), None) => Status::Pass,
    };
    let first_failure = match result {
        Err(e) => Some(e.to_string()),
        Ok(()) => runner.failure.clone(),
    };
    let recipe_json = serde_json::to_value(recipe).unwrap_or(Value::Null);
    Report::new(recipe_json, opts.to_json(), runner.body, status, first_failure, runner.timings)
}

fn run_in<F: Field>(runner: &mut Runner<'_>, f: &F, recipe: &Recipe) -> Result<()> {
    if let Some(c) = &recipe.construction {
        let built = runner.time("construction", || build(f, c))?;
        runner.body.insert(
            "construction".into(),
            json!({"name": c.name(), "label": built.label(), "dim": built.dim()}),
        );
        let cfg = runner.opts.identity_config();
        let mut out = Vec::new();
        for check in &recipe.checks {
            let v = runner.time(check.as_str(), || run_check(f, &built, *check, &cfg))?;
            if v["passed"] != json!(true) {
                runner.fail(format!("check {} failed: {}", check.as_str(), first_failed_identity(&v)));
            }
            out.push(v);
        }
        runner.body.insert("checks".into(), Value::Array(out));
    }
    if let Some(s) = &recipe.search {
        let v = runner.time(s.name(), || run_search(f, s, runner.opts))?;
        if v["passed"] == json!(false) {
            runner.fail(format!("search {} failed", s.name()));
        }
        runner.body.insert("search".into(), v);
    }
    if let Some(g) = &recipe.group {
        let v = runner.time(g.name(), || run_group(f, g))?;
        if v["passed"] != json!(true) {
            runner.fail(format!("group {} failed", g.name()));
        }
        runner.body.insert("group".into(), v);
    }
    Ok(())
}

fn first_failed_identity(v: &Value) -> String {
    v["identities"]
        .as_array()
        .and_then(|ids| ids.iter().find(|i| i["passed"] == json!(false)))
        .and_then(|i| i["name"].as_str())
        .unwrap_or("see report")
        .to_string()
}

fn jordan_of<F: Field>(built: &Built<F>) -> Result<QuadraticJordan<F>> {
    match (built, built.cns()) {
        (Built::Jordan(j), _) => Ok(j.clone()),
        (_, Some(c)) => QuadraticJordan::from_verified(Arc::clone(c)),
        _ => Err(Error::InvalidInput("no Jordan algebra".into())),
    }
}

fn run_check<F: Field>(f: &F, built: &Built<F>, check: CheckKind, cfg: &IdentityConfig) -> Result<Value> {
    let not_applicable = || Error::InvalidInput(format!("check {} does not apply to this construction", check.as_str()));
    let exact = |passed: bool| json!({"check": check.as_str(), "passed": passed});
    Ok(match check {
        CheckKind::CnsAxioms => {
            let rep = built.cns().ok_or_else(not_applicable)?.verify_axioms(cfg);
            let mut v = rep.to_json();
            v["check"] = json!(check.as_str());
            v
        }
        CheckKind::JordanAxioms => {
            let outs = jordan_of(built)?.verify(cfg);
            json!({
                "check": check.as_str(),
                "passed": outs.iter().all(|o| o.passed),
                "identities": outs.iter().map(|o| o.to_json()).collect::<Vec<_>>(),
            })
        }
        CheckKind::FundamentalFormula => {
            let j = jordan_of(built)?;
            let o = check_identity(f, &FundamentalFormula(&j), cfg);
            json!({"check": check.as_str(), "passed": o.passed, "identities": [o.to_json()]})
        }
        CheckKind::Nonsingular => exact(built.cns().ok_or_else(not_applicable)?.is_nonsingular()),
        CheckKind::TraceFormula => match built {
            Built::First(t) => exact(t.trace_formula_holds()),
            Built::Second(t) => exact(t.trace_formula_holds()),
            _ => return Err(not_applicable()),
        },
        CheckKind::InitialSummand => match built {
            Built::First(t) => exact(t.initial_summand_is_homomorphism()?),
            Built::Second(t) => exact(t.initial_summand_is_homomorphism()?),
            _ => return Err(not_applicable()),
        },
    })
}

fn require_budget<F: Field>(f: &F, size: impl FnOnce(u64) -> Option<u64>, budget: u64) -> Result<()> {
    let q = f.size().ok_or_else(|| Error::Unknown("exhaustive search over an infinite field".into()))?;
    match size(q) {
        Some(n) if n <= budget => Ok(()),
        _ => Err(Error::BudgetExceeded(format!("the search space exceeds the budget {budget}"))),
    }
}

fn run_search<F: Field>(f: &F, s: &Search, opts: &RunOptions) -> Result<Value> {
    let budget = opts.budget;
    Ok(match s {
        Search::NormMembership { e, l, w } => {
            let e = parse::cubic_etale(f, e)?;
            let l = parse::quadratic_etale(f, l)?;
            let w = parse::e_elem(f, &e, w)?;
            let class = norm_membership(&e, &l, &w, budget)?;
            let mut v = class.to_json(f);
            v["kind"] = json!(s.name());
            v["trivial"] = json!(class.is_trivial());
            v
        }
        Search::Nornor { e, l, y } => {
            let e = parse::cubic_etale(f, e)?;
            let l = parse::quadratic_etale(f, l)?;
            let t = EtaleTensor::new(&e, &l);
            let ys = match y {
                Some(y) => vec![parse::scalars(f, y)?],
                None => {
                    require_budget(f, |q| q.checked_pow(6), budget)?;
                    t.units().into_iter().filter(|y| f.is_one(&l.norm(&t.norm_e(y)))).collect()
                }
            };
            let mut cases = Vec::new();
            let mut misses = Vec::new();
            for y in &ys {
                match nornor_witness(&e, &l, y, budget) {
                    Ok(w) => cases.push(json!({"y": vec_to_json(f, y), "witness": vec_to_json(f, &w)})),
                    Err(err @ (Error::BudgetExceeded(_) | Error::PreconditionViolation(_))) => return Err(err),
                    Err(err) => misses.push(json!({"y": vec_to_json(f, y), "error": err.to_string()})),
                }
            }
            json!({"kind": s.name(), "passed": misses.is_empty(), "cases": cases, "misses": misses})
        }
        Search::Extri { e, l } => {
            let e = parse::cubic_etale(f, e)?;
            let l = parse::quadratic_etale(f, l)?;
            let table = NormTable::new(&e, &l, budget)?;
            let ws: Vec<_> = e.units().into_iter().filter(|w| f.is_one(&e.norm(w))).collect();
            let bs = l_units(&l);
            let (mut agree, mut trivial) = (0u64, 0u64);
            let mut disagreements = Vec::new();
            for w in &ws {
                for b in &bs {
                    let (lhs, rhs) = extri_sides(&l, &table, w, b)?;
                    if lhs == rhs {
                        agree += 1;
                        trivial += rhs as u64;
                    } else if disagreements.len() < 20 {
                        disagreements.push(json!({"w": vec_to_json(f, w), "b": vec_to_json(f, b), "lhs": lhs, "rhs": rhs}));
                    }
                }
            }
            json!({
                "kind": s.name(),
                "passed": disagreements.is_empty(),
                "norm_one_w": ws.len(),
                "b_values": bs.len(),
                "agreements": agree,
                "trivial_classes": trivial,
                "disagreements": disagreements,
            })
        }
        Search::Etfim { e, alpha, alpha2 } => {
            let e = parse::cubic_etale(f, e)?;
            let (a, a2) = (parse::scalar(f, alpha)?, parse::scalar(f, alpha2)?);
            match etfim_check(&e, &a, &a2)? {
                EtfimVerdict::Equivalent { epsilon, witness } => json!({
                    "kind": s.name(),
                    "equivalent": true,
                    "epsilon": epsilon,
                    "witness": vec_to_json(f, &witness),
                }),
                EtfimVerdict::NotEquivalent => json!({"kind": s.name(), "equivalent": false}),
            }
        }
        Search::Spliet { u0, limit } => {
            let e = crate::etale::CubicEtale::split(f);
            let u0 = parse::e_elem(f, &e, u0)?;
            let r = spliet_alpha(&e, &u0, limit.unwrap_or(1000))?;
            let x = r.j.elem(&u0, &[f.zero(), f.zero(), f.zero()], &[f.zero(), f.zero(), f.zero()]);
            let etale = is_etale_subalgebra(&r.j.cns, &r.y);
            let span = generated_subalgebra(&r.j.cns, &x, &r.y);
            let mut v = r.to_json();
            v["kind"] = json!(s.name());
            v["u0"] = vec_to_json(f, &u0);
            v["y_etale"] = json!(etale);
            v["span_dim"] = json!(span.dim);
            v["gram_det"] = f.elem_to_json(&span.gram_det);
            v["passed"] = json!(etale && span.dim == 9 && !f.is_zero(&span.gram_det));
            v
        }
        Search::Sweep { e, l, builders } => {
            let e = parse::cubic_etale(f, e)?;
            let l = parse::quadratic_etale(f, l)?;
            require_budget(f, |q| q.checked_pow(6), budget)?;
            let mut out = Map::new();
            let mut passed = true;
            for b in builders {
                let stats = match b {
                    Builder::Setis => sweep_setis(&e, &l)?,
                    Builder::Unet => sweep_unet(&e, &l)?,
                    Builder::Imcri => sweep_builders_jobs(&e, &l, false, opts.jobs)?,
                    Builder::Iscri => sweep_builders_jobs(&e, &l, true, opts.jobs)?,
                };
                passed &= stats.passed();
                out.insert(b.as_str().into(), stats.to_json());
            }
            json!({"kind": s.name(), "passed": passed, "builders": out})
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
            let i2 = i.twist(&w)?;
            let verdict = weak_equivalence_check(&i, &i2, &w, &m);
            let class = if f.is_finite() {
                norm_membership(&e, &l, &w, budget)?.to_json(f)
            } else {
                norm_membership(&e, &l, &w, budget).map(|c| c.to_json(f)).unwrap_or(Value::Null)
            };
            let reason = match &verdict {
                Equivalence::Rejected(r) => json!(r),
                _ => Value::Null,
            };
            json!({
                "kind": s.name(),
                "passed": !matches!(verdict, Equivalence::Rejected(_)),
                "verdict": verdict.as_str(),
                "reason": reason,
                "w": vec_to_json(f, &w),
                "twisted": i2.to_json(),
                "norm_class": class,
            })
        }
    })
}

fn l_units<F: Field>(l: &QuadraticEtale<F>) -> Vec<Vec<F::Elem>> {
    l.elements().into_iter().filter(|b| l.inverse(b).is_some()).collect()
}

fn unit_her3<F: Field>(f: &F, composition: &Value) -> Result<crate::constructions::Her3<F>> {
    parse::her3(f, &Her3Spec::Full(Her3Full { composition: composition.clone(), gamma: None }))
}

fn run_group<F: Field>(f: &F, g: &GroupOp) -> Result<Value> {
    Ok(match g {
        GroupOp::Sym3(spec) => {
            let h = unit_her3(f, &spec.composition)?;
            if spec.sigma.contains(&0) {
                return Err(Error::InvalidInput("sigma lists the images of 1, 2, 3".into()));
            }
            let sigma = [spec.sigma[0] - 1, spec.sigma[1] - 1, spec.sigma[2] - 1];
            let c = sym3_operator(&h, sigma)?;
            let mut v = c.to_json(f);
            v["kind"] = json!(g.name());
            v["order"] = json!(c.order(f, 6));
            v["passed"] = json!(c.in_h() && c.is_automorphism());
            v
        }
        GroupOp::Uw(spec) => {
            let h = unit_her3(f, &spec.composition)?;
            let w = parse::scalars(f, &spec.w)?;
            let c = uw_operator(&h, &w)?;
            let mut v = c.to_json(f);
            v["kind"] = json!(g.name());
            v["w"] = vec_to_json(f, &w);
            v["passed"] = json!(c.in_h());
            v
        }
        GroupOp::OuterCheck(_) => return Err(Error::InvalidField("outer-check needs a finite field K".into())),
    })
}

pub(crate) fn unitary_datum(k: &FiniteField, spec: &OuterSpec) -> Result<(UnitaryDatum, AntiAutomorphism)> {
    let datum = match &spec.gamma {
        Some(g) => UnitaryDatum::new(k, spec.d, parse::scalars(k, g)?)?,
        None => UnitaryDatum::standard(k, spec.d)?,
    };
    let psi = match spec.psi.as_str() {
        Some("transpose") => AntiAutomorphism::transpose(&datum),
        Some(other) => return Err(Error::PsiInvalid(format!("unknown anti-automorphism '{other}'"))),
        None => AntiAutomorphism { matrix: Matrix::from_json(k, &spec.psi)? },
    };
    Ok((datum, psi))
}

fn run_outer(runner: &mut Runner<'_>, k: &FiniteField, spec: &OuterSpec) -> Result<()> {
    let budget = runner.opts.budget;
    let (datum, psi) = unitary_datum(k, spec)?;
    let rep = runner.time("outer-check", || outer_from_antiauto(&datum, &psi, budget))?;
    let mut v = rep.to_json(k);
    v["kind"] = json!("outer-check");
    let passed = !matches!(rep.verdict, crate::structure_group::OuterVerdict::NotAutomorphism { .. });
    v["passed"] = json!(passed);
    if !passed {
        runner.fail("group outer-check: phi is not an automorphism".into());
    }
    runner.body.insert("group".into(), v);
    Ok(())
}
