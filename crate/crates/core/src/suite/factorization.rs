use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::context::{certified, Certified};
use super::contiguity::{map_json, pick_map};
use super::{rng_for, Case, Context, Recorder, Tally};
use crate::category::{
    build_factorization, gscat_upper, is_categorical_for, maximal_good_sets, subspace_scat, verify_factorization,
    Cover,
};
use crate::certificate::Certificate;
use crate::contiguity::{is_null_class, SimplicialMap};
use crate::error::{Error, Result};
use crate::scomplex::Subcomplex;

/// Witnesses whose `K'` is at most this large also get `gscat_upper(K')` computed directly.
const DIRECT_GSCAT_VERTICES: usize = 8;

/// Serializes, parses back and re-checks a certificate.
pub(super) fn round_trip(cert: &Certificate) -> Result<bool> {
    let text = serde_json::to_string(cert).map_err(|e| Error::Parse(e.to_string()))?;
    let back: Certificate = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(back.verify()?.ok)
}

pub(super) fn run(ctx: &Context, rec: &mut Recorder) {
    let lim = &ctx.limits;
    let seed = ctx.cfg.seed;

    // identity maps of the whole corpus, then every enumerated map
    let mut subjects: Vec<(SimplicialMap, &Result<Certified>)> = ctx
        .complexes
        .iter()
        .zip(ctx.complex_scat())
        .map(|(k, c)| (SimplicialMap::identity(k), c))
        .collect();
    for at in ctx.all_maps() {
        let (f, d, _) = ctx.map_at(at);
        subjects.push((f.clone(), &d.scat));
    }

    rec.theorem_with_notes("factorization_round_trip", || {
        let direct = AtomicUsize::new(0);
        let t = Tally::run(&subjects, |(f, c)| {
            let n = certified(c)?;
            let cover = &c.as_ref().map_err(Clone::clone)?.cover;
            let w = build_factorization(f, cover)?;
            let mut ok = verify_factorization(&w, f, n) && round_trip(&Certificate::factorization(f, n, &w))?;
            if w.k_prime.n_vertices() <= DIRECT_GSCAT_VERTICES {
                let (g, _) = gscat_upper(&w.k_prime, lim)?;
                ok &= g <= n;
                direct.fetch_add(1, Ordering::Relaxed);
            }
            Ok(Case::check(ok, || json!({ "f": map_json(f), "level": n, "k_prime_vertices": w.k_prime.n_vertices() })))
        });
        let notes = BTreeMap::from([
            ("witnesses".to_string(), json!(subjects.len())),
            ("gscat_upper_recomputed".to_string(), json!(direct.into_inner())),
        ]);
        (t, notes)
    });

    rec.theorem("factorization_converse", || {
        let mut rng = rng_for(seed, "factorization_converse");
        let draws: Vec<((usize, usize), u64)> = (0..ctx.cfg.samples * 2)
            .map(|_| {
                let (b, m) = pick_map(ctx, &mut rng);
                let bi = ctx.blocks().iter().position(|x| std::ptr::eq(x, b)).expect("block is listed");
                ((bi, m), rng.random())
            })
            .collect();
        Tally::run_many(&draws, |&(at, s)| {
            let (f, d, _) = ctx.map_at(at);
            let computed = certified(&d.scat)?;
            let mut cases = Vec::new();
            for cover in [random_cover(f, s, lim)?, singleton_cover(f, lim)?] {
                let level = cover.len() - 1;
                let w = build_factorization(f, &cover)?;
                let verified = verify_factorization(&w, f, level);
                cases.push(Case::check(verified && computed <= level, || {
                    json!({ "f": map_json(f), "level": level, "computed": computed, "witness_verified": verified })
                }));
            }
            Ok(cases)
        })
    });

    rec.theorem_with_notes("certificates_revalidate", || {
        let mut t = Tally::run(&subjects, |(f, c)| {
            let cover = &c.as_ref().map_err(Clone::clone)?.cover;
            let n = c.as_ref().map_err(Clone::clone)?.value;
            Ok(Case::check(round_trip(&Certificate::map_cover(f, n, cover))?, || json!({ "map_cover_for": map_json(f) })))
        });
        let covers = t.checked;
        let idx: Vec<usize> = (0..ctx.complexes.len()).collect();
        t.extend(Tally::cases(&idx, |&i| {
            let k = &ctx.complexes[i];
            let (g, cover) = gscat_upper(k, lim)?;
            let ok = round_trip(&Certificate::collapsible_cover(k, g, &cover))?;
            Ok(Case::check(ok, || json!({ "collapsible_cover_for": k.facet_labels() })))
        }));
        let mut rng = rng_for(seed, "certificates_revalidate");
        let subs: Vec<(usize, u64)> = (0..ctx.cfg.samples)
            .map(|_| {
                let i = rng.random_range(0..ctx.complexes.len());
                (i, rng.random_range(1..1u64 << ctx.complexes[i].n_facets()))
            })
            .collect();
        t.extend(Tally::cases(&subs, |&(i, mask)| {
            let k = &ctx.complexes[i];
            let a = Subcomplex::from_facet_mask(k, mask);
            let (v, cover) = subspace_scat(k, &a, lim)?;
            let ok = round_trip(&Certificate::subspace_cover(&a, v, &cover))?;
            Ok(Case::check(ok, || json!({ "subspace_cover_for": k.facet_labels(), "mask": mask })))
        }));
        let chains: Vec<(usize, usize)> = (0..ctx.cfg.samples)
            .map(|_| {
                let (b, m) = pick_map(ctx, &mut rng);
                (ctx.blocks().iter().position(|x| std::ptr::eq(x, b)).expect("block is listed"), m)
            })
            .collect();
        t.extend(Tally::cases(&chains, |&at| {
            let (f, _, _) = ctx.map_at(at);
            match is_null_class(f, lim)? {
                Some(chain) => Ok(Case::check(round_trip(&Certificate::chain(&chain))?, || json!({ "chain_for": map_json(f) }))),
                None => Ok(Case::NotApplicable("map is not null-class, no chain emitted".into())),
            }
        }));
        let notes = BTreeMap::from([("map_covers".to_string(), json!(covers))]);
        (t, notes)
    });
}

/// Maximal good sets in random order, kept while they cover a new facet.
fn random_cover(f: &SimplicialMap, seed: u64, lim: &crate::SearchLimits) -> Result<Cover> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut masks = maximal_good_sets(f, lim)?.maximal_good;
    masks.shuffle(&mut rng);
    let mut covered = 0u64;
    let mut chosen = Vec::new();
    for m in masks {
        if m & !covered != 0 {
            covered |= m;
            chosen.push(m);
        }
    }
    cover_from(f, chosen.into_iter().map(|m| Subcomplex::from_facet_mask(f.domain(), m)), lim)
}

fn singleton_cover(f: &SimplicialMap, lim: &crate::SearchLimits) -> Result<Cover> {
    let k = f.domain();
    cover_from(f, (0..k.n_facets()).map(|i| Subcomplex::from_facet_indices(k, &[i])), lim)
}

fn cover_from(f: &SimplicialMap, parts: impl Iterator<Item = Subcomplex>, lim: &crate::SearchLimits) -> Result<Cover> {
    let mut cover = Cover { parts: Vec::new(), chains: Vec::new() };
    for p in parts {
        let chain = is_categorical_for(f, &p, lim)?
            .ok_or_else(|| Error::BadParameter("part offered as categorical is not".into()))?;
        cover.parts.push(p);
        cover.chains.push(chain);
    }
    Ok(cover)
}
