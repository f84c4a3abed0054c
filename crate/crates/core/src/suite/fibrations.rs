use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde_json::json;

use super::contiguity::map_json;
use super::{rng_for, Case, Context, Recorder, Tally};
use crate::contiguity::{class_partition, is_contiguous, Product, SimplicialMap};
use crate::error::{Error, Result};
use crate::fibration_es::{
    check_fibration_inequalities, fibers_equivalent, is_fibration_over, lifts, FibrationStatus, FibrationVerdict,
};
use crate::scomplex::Corpus;

struct Instance {
    p: SimplicialMap,
    projection: bool,
    verdict: Result<FibrationVerdict>,
}

impl Instance {
    fn verified(&self) -> bool {
        matches!(&self.verdict, Ok(v) if v.status == FibrationStatus::VerifiedOverUniverse)
    }

    /// Projections are fibrations outright; any other verdict only stands in
    /// for the lifting property when the universe reaches the size of `E`.
    fn trusted(&self, universe_vertices: usize) -> Option<Case> {
        (!self.projection && self.p.domain().n_vertices() > universe_vertices).then(|| {
            Case::NotApplicable(format!(
                "total space has {} vertices, the universe only {universe_vertices}",
                self.p.domain().n_vertices()
            ))
        })
    }
}

fn status_case(v: &Result<FibrationVerdict>) -> Option<Case> {
    match v {
        Err(e) if e.is_unknown() => Some(Case::Skip(e.to_string())),
        Err(e) => Some(Case::Fail(json!({ "error": e.to_string() }))),
        Ok(v) if v.status == FibrationStatus::ResourceLimited => {
            Some(Case::Skip(v.reason.clone().unwrap_or_else(|| "resource limited".into())))
        }
        Ok(_) => None,
    }
}

pub(super) fn run(ctx: &Context, rec: &mut Recorder) {
    let lim = &ctx.limits;
    let ks = &ctx.complexes;
    let cap = ctx.cfg.product_vertices;
    let universe = match ctx.universe(ctx.cfg.fibration_universe) {
        Ok(u) => u,
        Err(e) => {
            rec.theorem("fibration_universe", || {
                let mut t = Tally::default();
                t.add(super::settle(Err(e)));
                t
            });
            return;
        }
    };

    // first projections of small products, then a sample of enumerated maps
    let mut candidates: Vec<(SimplicialMap, bool)> = Vec::new();
    for &i in &ctx.small {
        for &j in &ctx.small {
            if ks[i].n_vertices() * ks[j].n_vertices() <= cap {
                if let Ok(p) = Product::new(&ks[i], &ks[j]) {
                    candidates.push((p.p1(), true));
                }
            }
        }
    }
    let mut rng = rng_for(ctx.cfg.seed, "fibration_sweep");
    for _ in 0..ctx.cfg.samples / 4 {
        let (b, m) = super::contiguity::pick_map(ctx, &mut rng);
        candidates.push((b.maps()[m].clone(), false));
    }
    let instances: Vec<Instance> = candidates
        .into_par_iter()
        .map(|(p, projection)| {
            let verdict = is_fibration_over(&p, &universe, lim);
            Instance { p, projection, verdict }
        })
        .collect();
    let projections: Vec<&Instance> = instances.iter().filter(|i| i.projection).collect();
    let verified: Vec<&Instance> = instances.iter().filter(|i| i.verified()).collect();

    rec.theorem_with_notes("projections_verified", || {
        let t = Tally::run(&projections, |inst| {
            if let Some(c) = status_case(&inst.verdict) {
                return Ok(c);
            }
            Ok(Case::check(inst.verified(), || json!({ "p": map_json(&inst.p) })))
        });
        (t, BTreeMap::from([("universe_members".to_string(), json!(universe.len()))]))
    });

    rec.theorem("projection_fibers_equivalent", || {
        Tally::run(&projections, |inst| {
            Ok(Case::check(fibers_equivalent(&inst.p, lim)?, || json!({ "p": map_json(&inst.p) })))
        })
    });

    rec.theorem("fibration_inequalities", || {
        let items: Vec<(&Instance, usize)> =
            verified.iter().flat_map(|&i| (0..i.p.codomain().n_vertices()).map(move |b| (i, b))).collect();
        Tally::run(&items, |&(inst, b)| {
            if let Some(c) = inst.trusted(ctx.cfg.fibration_universe) {
                return Ok(c);
            }
            let r = match check_fibration_inequalities(&inst.p, b, lim) {
                Err(Error::EmptyFiber(_)) => return Ok(Case::NotApplicable("empty fiber".into())),
                r => r?,
            };
            Ok(Case::check(r.map_bound_holds && r.space_bound_holds, || {
                json!({ "p": map_json(&inst.p), "report": r })
            }))
        })
    });

    rec.theorem("verdict_monotone_in_universe", || {
        let smaller = universe.restricted(ctx.cfg.fibration_universe.saturating_sub(1).max(1));
        let subs: Vec<Corpus> = std::iter::once(smaller)
            .chain(universe.complexes.iter().map(|k| Corpus {
                complexes: vec![k.clone()],
                bounds: universe.bounds,
                exhaustive: false,
            }))
            .collect();
        let mut rng = rng_for(ctx.cfg.seed, "verdict_monotone_in_universe");
        let mut picked: Vec<&Instance> = instances.iter().collect();
        picked.shuffle(&mut rng);
        picked.truncate((ctx.cfg.samples / 20).max(4));
        let items: Vec<(&Instance, &Corpus)> = picked.iter().flat_map(|&i| subs.iter().map(move |s| (i, s))).collect();
        Tally::run(&items, |&(inst, sub)| {
            if let Some(c) = status_case(&inst.verdict) {
                return Ok(c);
            }
            let big = inst.verdict.as_ref().map_err(Clone::clone)?;
            let small = is_fibration_over(&inst.p, sub, lim)?;
            if small.status == FibrationStatus::ResourceLimited {
                return Ok(Case::Skip(small.reason.unwrap_or_default()));
            }
            // a counterexample over the part is one over the whole
            let ok = match big.status {
                FibrationStatus::VerifiedOverUniverse => small.status == FibrationStatus::VerifiedOverUniverse,
                _ => small.status != FibrationStatus::Counterexample || big.status == FibrationStatus::Counterexample,
            };
            Ok(Case::check(ok, || json!({ "p": map_json(&inst.p), "universe": big.status, "part": small.status })))
        })
    });

    rec.theorem_with_notes("counterexamples_replay", || {
        let bad: Vec<&Instance> = instances
            .iter()
            .filter(|i| matches!(&i.verdict, Ok(v) if v.status == FibrationStatus::Counterexample))
            .collect();
        let t = Tally::run(&bad, |inst| {
            let v = inst.verdict.as_ref().map_err(Clone::clone)?;
            let Some(cx) = &v.counterexample else {
                return Ok(Case::Fail(json!({ "p": map_json(&inst.p), "reason": "counterexample status without data" })));
            };
            let k = Arc::clone(&cx.k);
            let replayed = lifts(&inst.p, &cx.g, lim)?;
            let part = class_partition(&k, inst.p.domain(), lim)?;
            let escaped = cx.g_lifts.iter().all(|l| part.same_class(l, &cx.f_hat) == Some(false));
            let same_lifts: Vec<&[usize]> = replayed.iter().map(|m| m.assignment()).collect();
            let claimed: Vec<&[usize]> = cx.g_lifts.iter().map(|m| m.assignment()).collect();
            let ok = crate::contiguity::compose(&inst.p, &cx.f_hat)? == cx.f
                && is_contiguous(&cx.f, &cx.g)?
                && same_lifts == claimed
                && escaped;
            Ok(Case::check(ok, || json!({ "p": map_json(&inst.p), "f": map_json(&cx.f), "g": map_json(&cx.g), "f_hat": map_json(&cx.f_hat) })))
        });
        (t, BTreeMap::from([("counterexamples".to_string(), json!(bad.len()))]))
    });

    rec.theorem("verified_maps_have_equivalent_fibers", || {
        Tally::run(&verified, |inst| {
            if let Some(c) = inst.trusted(ctx.cfg.fibration_universe) {
                return Ok(c);
            }
            match fibers_equivalent(&inst.p, lim) {
                Err(Error::DisconnectedComplex) => Ok(Case::NotApplicable("a fiber is disconnected".into())),
                Err(Error::EmptyFiber(b)) => Ok(Case::NotApplicable(format!("empty fiber over vertex {b}"))),
                r => Ok(Case::check(r?, || json!({ "p": map_json(&inst.p) }))),
            }
        })
    });
}
