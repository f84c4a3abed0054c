use std::collections::{BTreeMap, HashMap};

use rand::seq::IndexedRandom;
use rand::Rng;
use rayon::prelude::*;
use serde_json::json;

use super::context::certified;
use super::contiguity::map_json;
use super::{rng_for, settle, Case, Context, Recorder, Tally};
use crate::contiguity::{core, SimplicialMap};
use crate::error::Result;
use crate::fibration_es::{es_bounded_in, es_composition_in, es_crosscheck_with, test_maps, EsCrosscheck, EsValue, TestMaps};

/// One contiguity class: its block, least member and bounded Es in both universes.
struct ClassEs {
    block: usize,
    rep: usize,
    members: Vec<usize>,
    big: Result<EsValue>,
    small: Result<EsValue>,
}

pub(super) fn run(ctx: &Context, rec: &mut Recorder) {
    let lim = &ctx.limits;
    let n_max = ctx.cfg.es_n_max;
    let (big, small) = match ctx.es_universes() {
        Ok(u) => (&u.0, &u.1),
        Err(e) => {
            rec.theorem("es_universe", || {
                let mut t = Tally::default();
                t.add(settle(Err(e)));
                t
            });
            return;
        }
    };

    let mut classes: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for (bi, b) in ctx.blocks().iter().enumerate() {
        let Ok(p) = &b.partition else { continue };
        let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); p.n_classes];
        for (m, &c) in p.class_of.iter().enumerate() {
            by_class[c].push(m);
        }
        classes.extend(by_class.into_iter().map(|ms| (bi, ms[0], ms)));
    }
    let classes: Vec<ClassEs> = classes
        .into_par_iter()
        .map(|(block, rep, members)| {
            let (f, _, _) = ctx.map_at((block, rep));
            let big = es_bounded_in(f, big, n_max, lim).map(|r| r.value);
            let small = es_bounded_in(f, small, n_max, lim).map(|r| r.value);
            ClassEs { block, rep, members, big, small }
        })
        .collect();
    let value = |r: &Result<EsValue>| r.clone();

    rec.theorem("unbounded_iff_null_class", || {
        Tally::run(&classes, |c| {
            let (f, d, _) = ctx.map_at((c.block, c.rep));
            let null = d.null.clone()?;
            let es = value(&c.big)?;
            Ok(Case::check((es == EsValue::Unbounded) == null, || json!({ "f": map_json(f), "es": es, "null_class": null })))
        })
    });

    rec.theorem_with_notes("es_below_category_of_domain", || {
        let t = Tally::run(&classes, |c| {
            let (f, _, b) = ctx.map_at((c.block, c.rep));
            let EsValue::Finite(e) = value(&c.big)? else {
                return Ok(Case::NotApplicable("null-class map".into()));
            };
            if core(f.domain())?.core.n_vertices() > ctx.cfg.es_universe {
                return Ok(Case::NotApplicable("core of the domain lies outside the universe".into()));
            }
            let sk = certified(&ctx.complex_scat()[b.k])?;
            Ok(Case::check(e < sk && e <= n_max, || json!({ "f": map_json(f), "es": e, "scat_domain": sk })))
        });
        (t, BTreeMap::from([("classes".to_string(), json!(classes.len()))]))
    });

    rec.theorem("es_class_invariant", || {
        let mut rng = rng_for(ctx.cfg.seed, "es_class_invariant");
        let draws: Vec<(&ClassEs, usize)> =
            classes.iter().filter(|c| c.members.len() > 1).map(|c| (c, c.members[rng.random_range(1..c.members.len())])).collect();
        Tally::run(&draws, |&(c, m)| {
            let (f, _, _) = ctx.map_at((c.block, m));
            let es = es_bounded_in(f, big, n_max, lim)?.value;
            let rep = value(&c.big)?;
            Ok(Case::check(es == rep, || {
                json!({ "f": map_json(f), "representative": map_json(ctx.map_at((c.block, c.rep)).0), "es_f": es, "es_rep": rep })
            }))
        })
    });

    rec.theorem("es_antitone_in_universe", || {
        Tally::run(&classes, |c| {
            let (b, s) = (value(&c.big)?, value(&c.small)?);
            let ok = match (b, s) {
                (EsValue::Unbounded, EsValue::Unbounded) => true,
                (EsValue::Finite(x), EsValue::Finite(y)) => y >= x,
                (EsValue::Finite(_), EsValue::Unbounded) | (EsValue::Unbounded, EsValue::Finite(_)) => false,
            };
            Ok(Case::check(ok, || json!({ "f": map_json(ctx.map_at((c.block, c.rep)).0), "es_universe": b, "es_smaller": s })))
        })
    });

    rec.theorem_with_notes("es_characterizations_agree", || {
        let domains: Vec<usize> = ctx.small.clone();
        let tests: HashMap<usize, Result<TestMaps>> =
            domains.par_iter().map(|&k| (k, test_maps(big, &ctx.complexes[k], lim))).collect();
        // null flags of every small map are already in the blocks
        let member_index: Vec<Option<usize>> =
            big.members.iter().map(|m| ctx.complexes.iter().position(|k| **k == *m.complex)).collect();
        let known_null = |i: usize, fg: &SimplicialMap| -> Result<bool> {
            let lookup = member_index[i].and_then(|m| {
                let l = ctx.complexes.iter().position(|k| **k == **fg.codomain())?;
                let b = ctx.block(m, l)?;
                let at = b.partition.as_ref().ok()?.index_of(fg)?;
                Some(b.data[at].null.clone())
            });
            match lookup {
                Some(r) => r,
                None => Ok(crate::contiguity::is_null_class(fg, lim)?.is_some()),
            }
        };
        let levels: Vec<(&ClassEs, Result<Vec<EsCrosscheck>>)> = classes
            .par_iter()
            .map(|c| {
                let (f, _, b) = ctx.map_at((c.block, c.rep));
                let tm = tests[&b.k].as_ref().map_err(Clone::clone);
                (c, tm.and_then(|tm| es_crosscheck_with(f, big, tm, &[0, 1], |i, fg| known_null(i, fg))))
            })
            .collect();
        let items: Vec<(&ClassEs, Result<&EsCrosscheck>)> = levels
            .iter()
            .flat_map(|(c, r)| match r {
                Ok(xs) => xs.iter().map(|x| (*c, Ok(x))).collect::<Vec<_>>(),
                Err(e) => vec![(*c, Err(e.clone())); 2],
            })
            .collect();
        let unsettled = std::sync::atomic::AtomicUsize::new(0);
        let t = Tally::run(&items, |(c, x)| {
            let (f, _, _) = ctx.map_at((c.block, c.rep));
            let x = x.as_ref().map_err(Clone::clone)?;
            // unsettled geometric category leaves that form vacuously true
            let ok = if x.gscat_unsettled > 0 {
                unsettled.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                x.by_domain_category == x.by_map_category
            } else {
                x.agree
            };
            Ok(Case::check(ok, || json!({ "f": map_json(f), "crosscheck": x })))
        });
        (t, BTreeMap::from([("with_unsettled_gscat".to_string(), json!(unsettled.into_inner()))]))
    });

    rec.harness("es_composition_bound", || {
        let mut rng = rng_for(ctx.cfg.seed, "es_composition_bound");
        let pairs: Vec<(SimplicialMap, SimplicialMap)> = (0..ctx.cfg.samples / 4)
            .filter_map(|_| {
                let c = classes.choose(&mut rng)?;
                let (f, _, b) = ctx.map_at((c.block, c.rep));
                let next: Vec<&ClassEs> = classes.iter().filter(|d| ctx.blocks()[d.block].k == b.l).collect();
                let d = next.choose(&mut rng)?;
                Some((f.clone(), ctx.map_at((d.block, d.rep)).0.clone()))
            })
            .collect();
        let reports: Vec<Result<_>> = pairs.par_iter().map(|(f, g)| es_composition_in(f, g, big, n_max, lim)).collect();
        let mut t = Tally::default();
        let mut failures = 0;
        for ((f, g), r) in pairs.iter().zip(reports) {
            t.add(settle(r.map(|rep| {
                failures += rep.failures.len();
                Case::check(rep.failures.is_empty(), || {
                    json!({ "f": map_json(f), "g": map_json(g), "es_f": rep.es_f, "es_g": rep.es_g, "bound": rep.bound, "caveat": rep.caveat })
                })
            })));
        }
        (t, BTreeMap::from([("failing_tests".to_string(), json!(failures))]))
    });
}
