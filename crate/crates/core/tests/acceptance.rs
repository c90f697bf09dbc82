#![allow(clippy::needless_range_loop, clippy::type_complexity)]

use std::sync::Arc;
use std::time::Instant;

use serde_json::{json, Value};

use cubic_jordan::assoc::AssocCubic;
use cubic_jordan::composition::CompositionAlgebra;
use cubic_jordan::constructions::{
    aplus, etale_admissible_pairs, etale_tits, first_tits, h_b_tau, Her3, InvolutionAlgebra,
};
use cubic_jordan::cubic_norm::jordan::FundamentalFormula;
use cubic_jordan::cubic_norm::{Cns, QuadraticJordan};
use cubic_jordan::etale::{CubicEtale, EtaleTensor, QuadraticEtale};
use cubic_jordan::field::{Field, FiniteField, Rationals, Ring};
use cubic_jordan::identity::{check_identity, CheckMode, IdentityConfig, IdentityOutcome};
use cubic_jordan::recipe::{run_recipe, Part, Recipe, RunOptions};
use cubic_jordan::skolem_noether::exhaustive::{sweep_builders_jobs, sweep_setis, sweep_unet, SweepStats};
use cubic_jordan::skolem_noether::{
    generated_subalgebra, norm_membership, nornor_witness, spliet_alpha, spliet_delta, ENUMERATION_CAP,
};
use cubic_jordan::structure_group::{
    norm_one_triples, outer_from_antiauto, sym3_operator, uw_operator, AntiAutomorphism, OuterVerdict, UnitaryDatum,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gf(q: u64) -> FiniteField {
    let (p, k) = (2..=q).find(|p| q.is_multiple_of(*p)).map(|p| (p, (q as f64).log(p as f64).round() as u32)).unwrap();
    FiniteField::new(p, k, None).unwrap()
}

/// E = GF(8), L = GF(4) over GF(2).
fn gf2_instance() -> (FiniteField, CubicEtale<FiniteField>, QuadraticEtale<FiniteField>) {
    let f = gf(2);
    let e = CubicEtale::from_poly(&f, &[1, 1, 0]).unwrap();
    let l = QuadraticEtale::from_poly(&f, &[1, 1]).unwrap();
    (f, e, l)
}

/// E split, L = GF(9) over GF(3).
fn gf3_instance() -> (FiniteField, CubicEtale<FiniteField>, QuadraticEtale<FiniteField>) {
    let f = gf(3);
    let e = CubicEtale::split(&f);
    let l = QuadraticEtale::from_poly(&f, &[1, 0]).unwrap();
    (f, e, l)
}

fn all_formal(outs: &[IdentityOutcome]) -> bool {
    outs.iter().all(|o| o.passed && o.mode == CheckMode::Formal)
}

fn describe_failure(outs: &[IdentityOutcome]) -> String {
    outs.iter()
        .find(|o| !o.passed || o.mode != CheckMode::Formal)
        .map(|o| format!("{}: passed = {}, mode = {:?}, {:?}", o.name, o.passed, o.mode, o.failure))
        .unwrap_or_default()
}

fn zorn_axioms<F: Field>(f: &F, name: &str) -> Outcome {
    let t = Instant::now();
    let j = Her3::new(&CompositionAlgebra::zorn(f), &[f.one(), f.one(), f.one()]).map_err(|e| e.to_string())?;
    ensure(j.cns.dim == 27, || format!("dim {}", j.cns.dim))?;
    let rep = j.cns.verify_axioms(&IdentityConfig::formal());
    ensure(all_formal(&rep.results), || format!("{name}: {}", describe_failure(&rep.results)))?;
    let secs = t.elapsed().as_secs_f64();
    ensure(secs <= 60.0, || format!("{name} took {secs:.1}s"))?;
    Ok(format!("{name} {secs:.1}s"))
}

fn criterion_1() -> Outcome {
    let parts = [zorn_axioms(&gf(2), "GF(2)")?, zorn_axioms(&gf(3), "GF(3)")?, zorn_axioms(&gf(5), "GF(5)")?, zorn_axioms(&Rationals, "Q")?];
    Ok(format!("5 axioms formal at dim 27: {}", parts.join(", ")))
}

fn formal_ff<F: Field>(j: &QuadraticJordan<F>) -> Result<(), String> {
    let o = check_identity(&j.field, &FundamentalFormula(j), &IdentityConfig::formal());
    ensure(o.passed && o.mode == CheckMode::Formal, || format!("{} (dim {}): {:?}", j.label, j.dim, o.failure))
}

fn jordan_of<F: Field>(cns: Cns<F>) -> QuadraticJordan<F> {
    QuadraticJordan::from_verified(Arc::new(cns)).unwrap()
}

fn criterion_2() -> Outcome {
    let mut small = 0;
    let (f3, f5) = (gf(3), gf(5));
    let her3_base = Her3::new(&CompositionAlgebra::base(&f3), &[1, 2, 1]).unwrap();
    let her3_bin = Her3::new(&CompositionAlgebra::split_binarion(&f5), &[1, 1, 3]).unwrap();
    let her3_q = Her3::new(&CompositionAlgebra::split_binarion(&Rationals), &[Rationals.one(), Rationals.one(), Rationals.one()]).unwrap();
    for j in [
        jordan_of((*her3_base.cns).clone()),
        jordan_of((*her3_bin.cns).clone()),
        jordan_of(AssocCubic::mat3(&f3).cns().unwrap()),
        aplus(&AssocCubic::mat3(&gf(2)).alg).unwrap(),
        jordan_of((*first_tits(&CubicEtale::split(&f5).assoc, &2).unwrap().cns).clone()),
        jordan_of(h_b_tau(&InvolutionAlgebra::etale(&CubicEtale::split(&f3), &QuadraticEtale::from_poly(&f3, &[1, 0]).unwrap()).unwrap()).unwrap()),
    ] {
        formal_ff(&j)?;
        small += 1;
    }
    formal_ff(&jordan_of((*her3_q.cns).clone()))?;
    small += 1;
    let (_, e, l) = gf2_instance();
    for (u, b) in etale_admissible_pairs(&e, &l) {
        formal_ff(&jordan_of((*etale_tits(&e, &l, &u, &b).unwrap().cns).clone()))?;
        small += 1;
    }

    let p = 4_294_967_291u64;
    let fp = FiniteField::prime(p).unwrap();
    let mut big = Vec::new();
    let zorn = Her3::new(&CompositionAlgebra::zorn(&fp), &[1, 1, 1]).unwrap();
    let ft = first_tits(&AssocCubic::mat3(&fp), &7).unwrap();
    for (name, cns) in [("her3(zorn)", zorn.cns.clone()), ("first_tits(Mat3, 7)", ft.cns.clone())] {
        let j = QuadraticJordan::from_verified(cns).unwrap();
        let o = check_identity(&fp, &FundamentalFormula(&j), &IdentityConfig::randomized(2024));
        let CheckMode::Randomized { points, ring, .. } = &o.mode else {
            return Err(format!("{name}: expected a randomized check"));
        };
        ensure(o.passed && *points >= 200 && j.dim == 27, || format!("{name}: {:?} at {points} points", o.failure))?;
        ensure(!ring.contains("irreducible"), || format!("{name}: sampled in {ring}"))?;
        big.push(format!("{name} {points} points"));
    }
    Ok(format!("{small} algebras of dim <= 9 formal; dim 27 over GF({p}): {}", big.join(", ")))
}

fn criterion_3() -> Outcome {
    let f = gf(3);
    let mat3 = AssocCubic::mat3(&f);
    for mu in [1u64, 2] {
        let j = first_tits(&mat3, &mu).map_err(|e| e.to_string())?;
        let rep = j.cns.verify_axioms(&IdentityConfig::default());
        ensure(rep.passed(), || format!("first_tits mu = {mu}: {:?}", rep.first_failure()))?;
        ensure(j.trace_formula_holds(), || format!("first_tits mu = {mu}: trace formula"))?;
        ensure(j.initial_summand_is_homomorphism().unwrap_or(false), || format!("first_tits mu = {mu}: initial summand"))?;
    }
    let (_, e, l) = gf2_instance();
    let pairs = etale_admissible_pairs(&e, &l);
    for (u, b) in &pairs {
        let j = etale_tits(&e, &l, u, b).map_err(|e| e.to_string())?;
        let rep = j.cns.verify_axioms(&IdentityConfig::formal());
        ensure(all_formal(&rep.results), || format!("J(E, L, {u:?}, {b:?}): {}", describe_failure(&rep.results)))?;
        ensure(j.trace_formula_holds(), || format!("J(E, L, {u:?}, {b:?}): trace formula"))?;
        ensure(j.cns.is_nonsingular(), || format!("J(E, L, {u:?}, {b:?}): singular trace form"))?;
    }
    Ok(format!("first_tits(Mat3(GF(3)), 1 and 2) dim 27; {} admissible (u, b) over GF(2) dim 9", pairs.len()))
}

fn sweeps(name: &str, e: &CubicEtale<FiniteField>, l: &QuadraticEtale<FiniteField>, jobs: usize) -> Result<String, String> {
    let runs: [(&str, SweepStats); 4] = [
        ("setis", sweep_setis(e, l).map_err(|e| e.to_string())?),
        ("unet", sweep_unet(e, l).map_err(|e| e.to_string())?),
        ("imcri", sweep_builders_jobs(e, l, false, jobs).map_err(|e| e.to_string())?),
        ("iscri", sweep_builders_jobs(e, l, true, jobs).map_err(|e| e.to_string())?),
    ];
    let mut parts = Vec::new();
    for (b, s) in &runs {
        ensure(s.passed(), || format!("{name} {b}: {} checked, failures {:?}", s.checked, s.failures))?;
        parts.push(format!("{b} {}", s.checked));
    }
    Ok(format!("{name}: {}", parts.join(" ")))
}

fn criterion_4() -> Outcome {
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let (_, e2, l2) = gf2_instance();
    let (_, e3, l3) = gf3_instance();
    Ok(format!("{}; {}", sweeps("GF(2)", &e2, &l2, jobs)?, sweeps("GF(3)", &e3, &l3, jobs)?))
}

fn extri(f: &FiniteField, e: &CubicEtale<FiniteField>, l: &QuadraticEtale<FiniteField>) -> Result<(usize, usize), String> {
    let t = EtaleTensor::new(e, l);
    let units = t.units();
    let ws: Vec<_> = e.units().into_iter().filter(|w| f.is_one(&e.norm(w))).collect();
    let bs: Vec<_> = l.elements().into_iter().filter(|b| l.inverse(b).is_some()).collect();
    let mut checked = 0;
    for w in &ws {
        let rhs = norm_membership(e, l, w, ENUMERATION_CAP).map_err(|e| e.to_string())?.is_trivial();
        for b in &bs {
            let ratio = l.mul(&l.conj(b), &l.inverse(b).unwrap());
            let lhs = units.iter().any(|y| t.n_l(y) == *w && (t.norm_e(y) == l.one() || t.norm_e(y) == ratio));
            ensure(Some(lhs) == rhs, || format!("w = {w:?}, b = {b:?}: lhs {lhs}, rhs {rhs:?}"))?;
            checked += 1;
        }
    }
    Ok((ws.len(), checked))
}

fn criterion_5() -> Outcome {
    let t = Instant::now();
    let (f2, e2, l2) = gf2_instance();
    let (w2, c2) = extri(&f2, &e2, &l2)?;
    let (f3, e3, l3) = gf3_instance();
    let (w3, c3) = extri(&f3, &e3, &l3)?;
    let secs = t.elapsed().as_secs_f64();
    ensure(secs <= 10.0, || format!("took {secs:.1}s"))?;
    Ok(format!("GF(2): {w2} norm-one w, {c2} (w, b) agree; GF(3): {w3} norm-one w, {c3} agree; {secs:.2}s"))
}

fn nornor(f: &FiniteField, e: &CubicEtale<FiniteField>, l: &QuadraticEtale<FiniteField>) -> Result<usize, String> {
    let t = EtaleTensor::new(e, l);
    let mut n = 0;
    for y in t.units() {
        let c = t.norm_e(&y);
        if !f.is_one(&l.norm(&c)) {
            continue;
        }
        let w = nornor_witness(e, l, &y, ENUMERATION_CAP).map_err(|err| format!("y = {y:?}: {err}"))?;
        ensure(t.norm_e(&w) == c && t.n_l(&w) == e.one(), || format!("bad witness {w:?} for y = {y:?}"))?;
        n += 1;
    }
    Ok(n)
}

fn criterion_6() -> Outcome {
    let (f2, e2, l2) = gf2_instance();
    let (f3, e3, l3) = gf3_instance();
    Ok(format!("witnesses for all {} valid y over GF(2) and all {} over GF(3)", nornor(&f2, &e2, &l2)?, nornor(&f3, &e3, &l3)?))
}

/// Discriminant of x³ − a x² + b x − c.
fn cubic_disc<F: Field>(f: &F, a: &F::Elem, b: &F::Elem, c: &F::Elem) -> F::Elem {
    let k = |n: i64| f.from_i64(n);
    let (a2, b2) = (f.mul(a, a), f.mul(b, b));
    let terms = [
        f.mul(&a2, &b2),
        f.mul(&k(-4), &f.mul(&b2, b)),
        f.mul(&k(-4), &f.mul(&f.mul(&a2, a), c)),
        f.mul(&k(18), &f.mul(&f.mul(a, b), c)),
        f.mul(&k(-27), &f.mul(c, c)),
    ];
    terms.iter().fold(f.zero(), |s, t| f.add(&s, t))
}

fn generic_disc<F: Field>(j: &Cns<F>, y: &[F::Elem]) -> F::Elem {
    let f = &j.field;
    cubic_disc(f, &j.lin_trace(y), &j.lin_trace(&j.sharp(y)), &j.norm(y))
}

fn det_mod_p(p: u64, mut m: Vec<Vec<u64>>) -> u64 {
    let n = m.len();
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut det = 1u64;
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| m[r][c] != 0) else { return 0 };
        if r != c {
            m.swap(r, c);
            det = (p - det) % p;
        }
        det = det * m[c][c] % p;
        let inv = pow(m[c][c], p - 2);
        for r in c + 1..n {
            let factor = m[r][c] * inv % p;
            for k in c..n {
                m[r][k] = (m[r][k] + p - factor * m[c][k] % p) % p;
            }
        }
    }
    det
}

/// F[y] is 3-dimensional and reduced: no nonzero a + b y + c y² cubes to 0.
fn reduced_by_enumeration(f: &FiniteField, j: &Cns<FiniteField>, y: &[u64]) -> bool {
    let one = j.base.clone();
    let y2 = j.u(y, &one);
    let q = f.size().unwrap();
    let mut seen = std::collections::HashSet::new();
    for idx in 0..q * q * q {
        let (a, b, c) = (f.element(idx % q), f.element(idx / q % q), f.element(idx / (q * q)));
        let z: Vec<u64> = (0..j.dim)
            .map(|i| f.add(&f.add(&f.mul(&a, &one[i]), &f.mul(&b, &y[i])), &f.mul(&c, &y2[i])))
            .collect();
        let zero = z.iter().all(|v| *v == 0);
        if !seen.insert(z.clone()) || (!zero && j.u(&z, &z).iter().all(|v| *v == 0)) {
            return false;
        }
    }
    true
}

fn criterion_7() -> Outcome {
    let q = Rationals;
    let e = CubicEtale::split(&q);
    let u0 = vec![q.zero(), q.one(), q.from_i64(2)];
    let j1 = first_tits(&e.assoc, &q.one()).unwrap();
    for a in [1i64, -1, 2, -2, 3] {
        let alpha = q.from_i64(a);
        let expect = q.sub(&q.from_i64(4), &q.from_i64(27 * a.pow(6)));
        let y = j1.elem(&u0, &e.scalar(&alpha), &[q.zero(), q.zero(), q.zero()]);
        ensure(spliet_delta(&e, &u0, &alpha) == expect, || format!("delta_y at alpha = {a}"))?;
        ensure(generic_disc(&j1.cns, &y) == expect, || format!("generic discriminant at alpha = {a}"))?;
    }
    let r = spliet_alpha(&e, &u0, 100).map_err(|e| e.to_string())?;
    ensure(r.alpha == q.one() && r.delta_y == q.from_i64(-23), || format!("alpha {:?}, delta {:?}", r.alpha, r.delta_y))?;

    let mut parts = vec!["Q: delta_y = 4 - 27 alpha^6, alpha = 1".to_string()];
    for p in [5u64, 7] {
        let f = FiniteField::prime(p).unwrap();
        let e = CubicEtale::split(&f);
        let u0 = vec![0, 1, 2];
        let r = spliet_alpha(&e, &u0, 1000).map_err(|e| e.to_string())?;
        let j = &r.j.cns;
        ensure(reduced_by_enumeration(&f, j, &r.y), || format!("GF({p}): F[y] is not etale"))?;
        let earlier = (1..r.alpha).find(|&a| generic_disc(j, &r.j.elem(&u0, &e.scalar(&a), &[0, 0, 0])) != 0);
        ensure(earlier.is_none(), || format!("GF({p}): alpha = {earlier:?} already works"))?;
        let x = r.j.elem(&u0, &[0, 0, 0], &[0, 0, 0]);
        let span = generated_subalgebra(j, &x, &r.y);
        let gram: Vec<Vec<u64>> =
            span.elements.iter().map(|a| span.elements.iter().map(|b| j.trace(a, b)).collect()).collect();
        let det = det_mod_p(p, gram);
        ensure(span.dim == 9 && det != 0 && det == span.gram_det, || {
            format!("GF({p}): span dim {}, Gram det {} (oracle {det})", span.dim, span.gram_det)
        })?;
        parts.push(format!("GF({p}): alpha = {}, span 9, Gram det {det}", r.alpha));
    }
    Ok(parts.join("; "))
}

fn criterion_8() -> Outcome {
    let f = gf(5);
    let j = Her3::new(&CompositionAlgebra::zorn(&f), &[1, 1, 1]).unwrap();
    let mut orders = Vec::new();
    for sigma in [[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2], [0, 2, 1], [2, 1, 0]] {
        let c = sym3_operator(&j, sigma).map_err(|e| e.to_string())?;
        ensure(c.in_h() && c.is_automorphism(), || format!("sym3 {sigma:?}"))?;
        orders.push(c.order(&f, 12).unwrap_or(0));
    }
    ensure(orders == [1, 3, 3, 2, 2, 2], || format!("orders {orders:?}"))?;
    let triples = norm_one_triples(&f).map_err(|e| e.to_string())?;
    let mut certs = Vec::new();
    for w in &triples {
        let c = uw_operator(&j, w).map_err(|e| e.to_string())?;
        ensure(c.in_h(), || format!("uw {w:?}"))?;
        let squares_one = w.iter().all(|x| f.is_one(&f.mul(x, x)));
        ensure(c.fixes_unit == squares_one, || format!("uw {w:?} fixes_unit {}", c.fixes_unit))?;
        certs.push(c);
    }
    let mut pairs = 0;
    for (a, w) in triples.iter().enumerate() {
        for (b, v) in triples.iter().enumerate() {
            let wv: Vec<u64> = w.iter().zip(v).map(|(x, y)| f.mul(x, y)).collect();
            let c = triples.iter().position(|t| *t == wv).ok_or("product left the norm-one triples")?;
            ensure(certs[a].matrix.mul(&f, &certs[b].matrix) == certs[c].matrix, || format!("uw {w:?} uw {v:?}"))?;
            pairs += 1;
        }
    }
    Ok(format!("6 sym3 operators in H with orders {orders:?}; {} uw operators in H; {pairs} products multiplicative", triples.len()))
}

fn criterion_9() -> Outcome {
    let t = Instant::now();
    let k = gf(4);
    let datum = UnitaryDatum::standard(&k, 3).map_err(|e| e.to_string())?;
    let psi = AntiAutomorphism::transpose(&datum);
    let rep = outer_from_antiauto(&datum, &psi, 1_000_000).map_err(|e| e.to_string())?;
    let q = 2usize;
    let expected = q.pow(3) * (q.pow(2) - 1) * (q.pow(3) + 1);
    ensure(rep.order == expected, || format!("|SU3(2)| = {} but expected {expected}", rep.order))?;
    ensure(rep.pairs_checked == (expected * expected) as u64, || format!("{} pairs checked", rep.pairs_checked))?;
    ensure(rep.phi_involutive == Some(true), || "phi o phi != id".into())?;
    ensure(rep.verdict == OuterVerdict::Outer, || format!("verdict {:?}", rep.verdict))?;
    let secs = t.elapsed().as_secs_f64();
    ensure(secs <= 300.0, || format!("took {secs:.1}s"))?;
    Ok(format!("|SU3(2)| = {}, automorphism on {} pairs, outer against all inner automorphisms, {secs:.1}s", rep.order, rep.pairs_checked))
}

fn recipes() -> Vec<Value> {
    let v = "cubic-jordan.recipe/1";
    vec![
        json!({"version": v, "field": "GF(5)", "construction": {"her3": "zorn"}, "checks": ["cns-axioms", "jordan-axioms"]}),
        json!({"version": v, "field": "GF(2)", "construction": {"etale_tits": {"E": "x^3+x+1", "L": "x^2+x+1", "u": "t", "b": "s"}},
               "checks": ["cns-axioms", "fundamental-formula", "trace-formula"]}),
        json!({"version": v, "field": "GF(2)", "search": {"kind": "norm-membership", "E": "x^3+x+1", "L": "x^2+x+1", "w": "t"}}),
        json!({"version": v, "field": "GF(3)", "search": {"kind": "nornor", "E": "split", "L": "x^2+1"}}),
        json!({"version": v, "field": "GF(2)", "search": {"kind": "extri", "E": "x^3+x+1", "L": "x^2+x+1"}}),
        json!({"version": v, "field": "GF(7)", "search": {"kind": "spliet", "u0": [0, 1, 2]}}),
        json!({"version": v, "field": "GF(2)", "search": {"kind": "sweep", "E": "x^3+x+1", "L": "x^2+x+1", "builders": ["setis", "unet", "imcri"]}}),
        json!({"version": v, "field": "GF(5)", "group": {"sym3": {"sigma": [2, 3, 1]}}}),
        json!({"version": v, "field": "GF(5)", "group": {"uw": {"w": [2, 3, 1]}}}),
        json!({"version": v, "field": "GF(4)", "group": {"outer-check": {"d": 3}}}),
    ]
}

fn criterion_10() -> Outcome {
    let mut n = 0;
    for (i, v) in recipes().into_iter().enumerate() {
        let recipe = Recipe::from_value(&v).map_err(|e| format!("recipe {i}: {e}"))?;
        for mode in ["auto", "randomized"] {
            let opts = RunOptions {
                seed: 99,
                identity_mode: cubic_jordan::identity::IdentityMode::parse(mode).unwrap(),
                ..RunOptions::default()
            };
            let a = run_recipe(&recipe, &opts, Part::All);
            ensure(a.status.exit_code() == 0, || format!("recipe {i}: {}", a.value["first_failure"]))?;
            let b = run_recipe(&recipe, &opts, Part::All);
            ensure(a.deterministic() == b.deterministic(), || format!("recipe {i} ({mode}) differs between runs"))?;
            let text = |r: &cubic_jordan::report::Report| serde_json::to_string(&r.deterministic()).unwrap();
            ensure(text(&a) == text(&b), || format!("recipe {i} ({mode}) serializes differently"))?;
            n += 1;
        }
    }
    let (_, e, l) = gf2_instance();
    let one = sweep_builders_jobs(&e, &l, false, 1).map_err(|e| e.to_string())?;
    let four = sweep_builders_jobs(&e, &l, false, 4).map_err(|e| e.to_string())?;
    ensure(one == four, || "sweep depends on the number of workers".into())?;
    Ok(format!("{n} reruns byte-identical outside the timestamp; sweep identical for 1 and 4 workers"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("her3(zorn) axiom suite", criterion_1),
        ("fundamental formula", criterion_2),
        ("Tits constructions", criterion_3),
        ("builder sweeps", criterion_4),
        ("EXTRI equivalence", criterion_5),
        ("NORNOR witnesses", criterion_6),
        ("SPLIET", criterion_7),
        ("sym3 and uw operators", criterion_8),
        ("SU3(2) outer automorphism", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} [{secs:.1}s]: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} [{secs:.1}s]: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
