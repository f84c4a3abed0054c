use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::Rng;
use serde_json::{json, Value};

use super::context::certified;
use super::contiguity::map_json;
use super::factorization::round_trip;
use super::{rng_for, Case, Context, Recorder, Tally};
use crate::category::{scat_map, verify_map_cover};
use crate::certificate::Certificate;
use crate::contiguity::{is_null_class, same_contiguity_class, verify_chain_between, SimplicialMap};
use crate::error::Result;
use crate::finite_space::{
    cat_map, cat_space, chi_chain, chi_map, enumerate_posets, fence_to_chain, homotopic, is_null_homotopic, k_map,
    verify_fence_between, verify_space_cover, FiniteSpace, MonotoneMap,
};
use crate::io::SpaceMapFile;

fn space_map_json(f: &MonotoneMap) -> Value {
    serde_json::to_value(SpaceMapFile::from_map(f)).expect("map serializes")
}

/// Every monotone map `x -> y`, by brute force over all assignments.
fn monotone_maps(x: &Arc<FiniteSpace>, y: &Arc<FiniteSpace>) -> Vec<MonotoneMap> {
    let (n, m) = (x.len(), y.len());
    let total = m.pow(n as u32);
    (0..total)
        .filter_map(|mut code| {
            let a: Vec<usize> = (0..n)
                .map(|_| {
                    let d = code % m;
                    code /= m;
                    d
                })
                .collect();
            MonotoneMap::new(Arc::clone(x), Arc::clone(y), a).ok()
        })
        .collect()
}

pub(super) fn run(ctx: &Context, rec: &mut Recorder) {
    let lim = &ctx.limits;
    let seed = ctx.cfg.seed;
    let cap = ctx.cfg.face_poset_points;
    let simplices = |k: &SimplicialComplex| k.all_simplices(lim).map(<[_]>::len);
    let over_cap = |f: &SimplicialMap| -> Result<Option<Case>> {
        let n = simplices(f.domain())?.max(simplices(f.codomain())?);
        Ok((n > cap).then(|| Case::Skip(format!("face poset of {n} points, above the cap of {cap}"))))
    };

    let posets: Vec<Arc<FiniteSpace>> = match enumerate_posets(ctx.cfg.poset_points.max(ctx.cfg.space_points)) {
        Ok(ps) => ps.into_iter().map(Arc::new).collect(),
        Err(_) => Vec::new(),
    };
    let small_posets: Vec<&Arc<FiniteSpace>> = posets.iter().filter(|p| p.len() <= ctx.cfg.poset_points).collect();
    let monotone: Vec<MonotoneMap> = small_posets
        .iter()
        .flat_map(|x| small_posets.iter().flat_map(move |y| monotone_maps(x, y)))
        .collect();

    rec.theorem("chi_sends_chains_to_fences", || {
        let mut rng = rng_for(seed, "chi_sends_chains_to_fences");
        let draws: Vec<(SimplicialMap, SimplicialMap)> = (0..ctx.cfg.samples)
            .filter_map(|_| {
                let (b, m) = super::contiguity::pick_map(ctx, &mut rng);
                let p = b.partition.as_ref().ok()?;
                let same: Vec<usize> = (0..p.maps.len()).filter(|&j| p.class_of[j] == p.class_of[m]).collect();
                let g = *same.choose(&mut rng)?;
                Some((p.maps[m].clone(), p.maps[g].clone()))
            })
            .collect();
        Tally::run(&draws, |(f, g)| {
            if let Some(skip) = over_cap(f)? {
                return Ok(skip);
            }
            // null maps use the emitted null chain; others a class chain to g
            let chain = match is_null_class(f, lim)? {
                Some(c) if rng_free_parity(f) => c,
                _ => match same_contiguity_class(f, g, lim)? {
                    Some(c) => c,
                    None => return Ok(Case::Fail(json!({ "reason": "no chain inside a naive class", "f": map_json(f), "g": map_json(g) }))),
                },
            };
            let (cf, cg) = (chi_map(&chain.first(), lim)?, chi_map(&chain.last(), lim)?);
            let fence = chi_chain(&chain, lim)?;
            let ok = verify_fence_between(&fence, &cf, &cg)
                && homotopic(&cf, &cg, lim)?.is_some()
                && round_trip(&Certificate::fence(&fence))?;
            Ok(Case::check(ok, || json!({ "chain_from": map_json(&chain.first()), "chain_to": map_json(&chain.last()) })))
        })
    });

    rec.theorem_with_notes("order_complex_sends_fences_to_chains", || {
        let mut rng = rng_for(seed, "order_complex_sends_fences_to_chains");
        let mut pairs: Vec<(MonotoneMap, Option<MonotoneMap>)> = monotone.iter().map(|f| (f.clone(), None)).collect();
        let groups = group_by_spaces(&monotone);
        for _ in 0..ctx.cfg.samples {
            if let Some(g) = groups.choose(&mut rng) {
                let a = g[rng.random_range(0..g.len())].clone();
                let b = g[rng.random_range(0..g.len())].clone();
                pairs.push((a, Some(b)));
            }
        }
        let t = Tally::run(&pairs, |(f, g)| {
            let fence = match g {
                None => is_null_homotopic(f, lim)?,
                Some(g) => homotopic(f, g, lim)?,
            };
            let Some(fence) = fence else {
                return Ok(Case::NotApplicable("maps are not homotopic, no fence emitted".into()));
            };
            let (kf, kl) = (k_map(&fence.first())?, k_map(&fence.last())?);
            let chain = fence_to_chain(&fence)?;
            let ok = verify_chain_between(&chain, &kf, &kl) && same_contiguity_class(&kf, &kl, lim)?.is_some();
            Ok(Case::check(ok, || json!({ "fence_from": space_map_json(&fence.first()), "fence_to": space_map_json(&fence.last()) })))
        });
        (t, BTreeMap::from([("monotone_maps".to_string(), json!(monotone.len()))]))
    });

    // cat(χ(f)) depends only on the contiguity class of f, so one exact value
    // per class is compared with the scat of every member
    rec.theorem_with_notes("cat_of_chi_below_scat", || {
        let classes: Vec<(usize, usize)> = ctx
            .blocks()
            .iter()
            .enumerate()
            .flat_map(|(bi, b)| {
                let n = b.partition.as_ref().map(|p| p.n_classes).unwrap_or(0);
                (0..n).map(move |c| (bi, c))
            })
            .collect();
        let t = Tally::run(&classes, |&(bi, c)| {
            let b = &ctx.blocks()[bi];
            let p = b.partition.as_ref().map_err(Clone::clone)?;
            let members: Vec<usize> = (0..p.maps.len()).filter(|&i| p.class_of[i] == c).collect();
            let f = &p.maps[members[0]];
            if let Some(skip) = over_cap(f)? {
                return Ok(skip);
            }
            let sf = members.iter().map(|&i| certified(&b.data[i].scat)).collect::<Result<Vec<_>>>()?;
            let least = sf.iter().copied().min().expect("classes are non-empty");
            let x = chi_map(f, lim)?;
            let (c, cover) = cat_map(&x, lim)?;
            let ok = c <= least && verify_space_cover(&x, &cover);
            Ok(Case::check(ok, || json!({ "f": map_json(f), "cat_chi": c, "scat": least })))
        });
        (t, BTreeMap::from([("maps_covered".to_string(), json!(ctx.all_maps().len()))]))
    });

    rec.theorem("scat_of_order_complex_map_below_cat", || {
        Tally::run(&monotone, |f| {
            let (c, cover) = cat_map(f, lim)?;
            let kf = k_map(f)?;
            let (s, scover) = scat_map(&kf, lim)?;
            let ok = s <= c && verify_space_cover(f, &cover) && verify_map_cover(&kf, &scover).ok;
            Ok(Case::check(ok, || json!({ "f": space_map_json(f), "cat": c, "scat_k": s })))
        })
    });

    rec.theorem("cat_of_space_is_cat_of_identity", || {
        let spaces: Vec<&Arc<FiniteSpace>> = posets.iter().filter(|p| p.len() <= ctx.cfg.space_points).collect();
        Tally::run(&spaces, |x| {
            let id = MonotoneMap::identity(x);
            let (a, ca) = cat_space(x, lim)?;
            let (b, cb) = cat_map(&id, lim)?;
            let ok = a == b
                && verify_space_cover(&id, &ca)
                && verify_space_cover(&id, &cb)
                && round_trip(&Certificate::space_cover(&id, a, &ca))?;
            Ok(Case::check(ok, || json!({ "space": space_map_json(&id), "cat_space": a, "cat_identity": b })))
        })
    });
}

use crate::scomplex::SimplicialComplex;

/// Deterministic coin from the map itself, so the choice does not depend on run order.
fn rng_free_parity(f: &SimplicialMap) -> bool {
    f.assignment().iter().sum::<usize>() % 2 == 0
}

fn group_by_spaces(maps: &[MonotoneMap]) -> Vec<Vec<MonotoneMap>> {
    let mut groups: Vec<Vec<MonotoneMap>> = Vec::new();
    for f in maps {
        match groups.last_mut() {
            Some(g) if **g[0].domain() == **f.domain() && **g[0].codomain() == **f.codomain() => g.push(f.clone()),
            _ => groups.push(vec![f.clone()]),
        }
    }
    groups
}
