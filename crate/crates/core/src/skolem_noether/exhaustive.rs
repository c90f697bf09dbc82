//! Exhaustive runs of the builders over a finite étale instance (E, L).

use std::collections::HashMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::constructions::{etale_admissible_pairs, etale_tits, setis_map, unet_map, InvolutionAlgebra, SecondTits};
use crate::error::{Error, Result};
use crate::etale::{CubicEtale, QuadraticEtale};
use crate::field::{fmt_vec, Field};

use super::builders::{etale_isotopies, imcri_build_in, iscri_build_in, iscri_target, EtaleContext};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepStats {
    pub checked: u64,
    pub isomorphisms: u64,
    pub isotopies: u64,
    pub failures: Vec<String>,
}

impl SweepStats {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }

    fn record(&mut self, what: impl FnOnce() -> String, r: Result<bool>) {
        self.checked += 1;
        match r {
            Ok(true) => self.isomorphisms += 1,
            Ok(false) => self.isotopies += 1,
            Err(e) => {
                if self.failures.len() < 20 {
                    self.failures.push(format!("{}: {e}", what()));
                }
            }
        }
    }

    pub fn merge(&mut self, other: SweepStats) {
        self.checked += other.checked;
        self.isomorphisms += other.isomorphisms;
        self.isotopies += other.isotopies;
        let room = 20usize.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
    }

    pub fn to_json(&self) -> Value {
        json!({
            "checked": self.checked,
            "isomorphisms": self.isomorphisms,
            "isotopies": self.isotopies,
            "failures": self.failures,
        })
    }
}

/// Second Tits algebras J(E, L, u, b) built once per (u, b).
pub struct TitsCache<'a, F: Field> {
    e: &'a CubicEtale<F>,
    l: &'a QuadraticEtale<F>,
    map: HashMap<(Vec<F::Elem>, Vec<F::Elem>), SecondTits<F>>,
}

impl<'a, F: Field> TitsCache<'a, F> {
    pub fn new(e: &'a CubicEtale<F>, l: &'a QuadraticEtale<F>) -> Self {
        TitsCache { e, l, map: HashMap::new() }
    }

    pub fn get(&mut self, u: &[F::Elem], b: &[F::Elem]) -> Result<&SecondTits<F>> {
        let key = (u.to_vec(), b.to_vec());
        if !self.map.contains_key(&key) {
            let j = etale_tits(self.e, self.l, u, b)?;
            self.map.insert(key.clone(), j);
        }
        Ok(&self.map[&key])
    }
}

/// R̂_p for every admissible (u, b) and every p ∈ Eˣ.
pub fn sweep_setis<F: Field>(e: &CubicEtale<F>, l: &QuadraticEtale<F>) -> Result<SweepStats> {
    let f = e.field();
    let d = InvolutionAlgebra::etale(e, l)?;
    let mut stats = SweepStats::default();
    for (u, b) in etale_admissible_pairs(e, l) {
        let ub = d.b.embed_a(&u);
        for p in e.units() {
            let r = setis_map(&d, &ub, &b, &d.b.embed_a(&p)).map(|c| c.is_isomorphism());
            stats.record(|| format!("setis u = {}, b = {}, p = {}", fmt_vec(f, &u), fmt_vec(f, &b), fmt_vec(f, &p)), r);
        }
    }
    Ok(stats)
}

/// R̂_w for every u, b with N_E(u) = n_L(b) = 1.
pub fn sweep_unet<F: Field>(e: &CubicEtale<F>, l: &QuadraticEtale<F>) -> Result<SweepStats> {
    let f = e.field();
    let mut stats = SweepStats::default();
    for (u, b) in etale_admissible_pairs(e, l) {
        if !f.is_one(&e.norm(&u)) {
            continue;
        }
        let r = unet_map(e, l, &u, &b).map(|c| c.is_isomorphism());
        stats.record(|| format!("unet u = {}, b = {}", fmt_vec(f, &u), fmt_vec(f, &b)), r);
    }
    Ok(stats)
}

/// Every source (u′, b′), automorphism φ of E (or isotopy when `isotopies`),
/// automorphism ψ of L and y ∈ (E⊗L)ˣ, with the target (u, b) they
/// determine.
pub fn sweep_builders<F: Field>(e: &CubicEtale<F>, l: &QuadraticEtale<F>, isotopies: bool) -> Result<SweepStats> {
    sweep_builders_jobs(e, l, isotopies, 1)
}

/// [`sweep_builders`] sharded over the source pairs on `jobs` threads; the
/// shards are merged in order, so the result does not depend on `jobs`.
pub fn sweep_builders_jobs<F: Field>(
    e: &CubicEtale<F>,
    l: &QuadraticEtale<F>,
    isotopies: bool,
    jobs: usize,
) -> Result<SweepStats> {
    let phis = if isotopies { etale_isotopies(e)? } else { e.automorphisms()? };
    let psis = l.automorphisms();
    let ctx = EtaleContext::new(e, l);
    let ys = ctx.t.units();
    let pairs = etale_admissible_pairs(e, l);
    let shard = |chunk: &[(Vec<F::Elem>, Vec<F::Elem>)]| -> Result<SweepStats> {
        let f = e.field();
        let mut cache = TitsCache::new(e, l);
        let mut stats = SweepStats::default();
        for (u1, b1) in chunk {
            let src = cache.get(u1, b1)?.clone();
            for phi in &phis {
                for psi in &psis {
                    for y in &ys {
                        let (u, b) = iscri_target(&ctx, u1, b1, phi, psi, y)?;
                        let dst = cache.get(&u, &b)?;
                        let r = if isotopies {
                            iscri_build_in(&ctx, &src, dst, phi, psi, y)
                        } else {
                            imcri_build_in(&ctx, &src, dst, phi, psi, y)
                        };
                        stats.record(
                            || format!("u' = {}, b' = {}, y = {}", fmt_vec(f, u1), fmt_vec(f, b1), fmt_vec(f, y)),
                            r.map(|c| c.is_isomorphism()),
                        );
                    }
                }
            }
        }
        Ok(stats)
    };
    let jobs = jobs.max(1);
    let parts: Vec<Result<SweepStats>> = if jobs == 1 {
        vec![shard(&pairs)]
    } else {
        let size = pairs.len().div_ceil(jobs * 4).max(1);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
        pool.install(|| pairs.par_chunks(size).map(shard).collect())
    };
    let mut total = SweepStats::default();
    for part in parts {
        total.merge(part?);
    }
    Ok(total)
}
