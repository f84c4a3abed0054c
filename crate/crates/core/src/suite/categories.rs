use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::Rng;
use serde_json::json;

use super::context::certified;
use super::contiguity::{map_json, pick_map};
use super::{rng_for, Case, Context, Recorder, Tally};
use crate::category::{
    gscat_exact, gscat_upper, scat, scat_map, subspace_scat, verify_collapsible_cover, verify_map_cover,
    verify_subspace_cover,
};
use crate::contiguity::{compose, strong_equivalence_inverse, verify_chain_between, SimplicialMap};
use crate::oracle::scat_oracle;
use crate::scomplex::{SimplicialComplex, Subcomplex};

pub(super) fn run(ctx: &Context, rec: &mut Recorder) {
    let lim = &ctx.limits;
    let seed = ctx.cfg.seed;
    let ks = &ctx.complexes;

    rec.theorem_with_notes("scat_of_identity_is_scat", || {
        let idx: Vec<usize> = (0..ks.len()).collect();
        let t = Tally::run(&idx, |&i| {
            let k = &ks[i];
            let id = SimplicialMap::identity(k);
            let (v, cover) = scat_map(&id, lim)?;
            let sk = certified(&ctx.complex_scat()[i])?;
            let mut ok = verify_map_cover(&id, &cover).ok && v == sk;
            let mut oracle = None;
            if k.n_vertices() <= ctx.cfg.map_vertices {
                let o = scat_oracle(k, lim)?;
                ok &= o == v;
                oracle = Some(o);
            }
            Ok(Case::check(ok, || json!({ "complex": k.facet_labels(), "scat_id": v, "scat": sk, "oracle": oracle })))
        });
        let oracle_checked = ks.iter().filter(|k| k.n_vertices() <= ctx.cfg.map_vertices).count();
        (t, BTreeMap::from([("oracle_compared".to_string(), json!(oracle_checked))]))
    });

    rec.theorem("composition_bound", || {
        let mut rng = rng_for(seed, "composition_bound");
        let triples: Vec<((usize, usize), (usize, usize))> = (0..ctx.cfg.samples * 10)
            .filter_map(|_| {
                let (b, m) = pick_map(ctx, &mut rng);
                let next: Vec<usize> = ctx
                    .blocks()
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| x.k == b.l && !x.maps().is_empty())
                    .map(|(i, _)| i)
                    .collect();
                let nb = *next.choose(&mut rng)?;
                let g = rng.random_range(0..ctx.blocks()[nb].maps().len());
                let fb = ctx.blocks().iter().position(|x| std::ptr::eq(x, b)).expect("block is listed");
                Some(((fb, m), (nb, g)))
            })
            .collect();
        Tally::run(&triples, |&(fi, gi)| {
            let (f, fd, _) = ctx.map_at(fi);
            let (g, gd, _) = ctx.map_at(gi);
            let gf = compose(g, f)?;
            let blk = ctx.block(fi_k(ctx, fi), gi_l(ctx, gi)).expect("composite lands in a block");
            let p = blk.partition.as_ref().map_err(Clone::clone)?;
            let at = p.index_of(&gf).expect("composite is enumerated");
            let (sf, sg, sgf) = (certified(&fd.scat)?, certified(&gd.scat)?, certified(&blk.data[at].scat)?);
            Ok(Case::check(sgf <= sf.min(sg), || {
                json!({ "f": map_json(f), "g": map_json(g), "scat_f": sf, "scat_g": sg, "scat_gf": sgf })
            }))
        })
    });

    rec.theorem("map_bounded_by_domain_and_codomain", || {
        let all = ctx.all_maps();
        Tally::run(&all, |&at| {
            let (f, d, b) = ctx.map_at(at);
            let sf = certified(&d.scat)?;
            let (sk, sl) = (certified(&ctx.complex_scat()[b.k])?, certified(&ctx.complex_scat()[b.l])?);
            Ok(Case::check(sf <= sk.min(sl), || json!({ "f": map_json(f), "scat_f": sf, "scat_k": sk, "scat_l": sl })))
        })
    });

    rec.theorem("contiguity_invariance", || {
        let classes: Vec<(usize, usize)> = ctx
            .blocks()
            .iter()
            .enumerate()
            .flat_map(|(bi, b)| {
                let n = b.partition.as_ref().map(|p| p.n_classes).unwrap_or(0);
                (0..n).map(move |c| (bi, c))
            })
            .collect();
        Tally::run(&classes, |&(bi, c)| {
            let b = &ctx.blocks()[bi];
            let p = b.partition.as_ref().map_err(Clone::clone)?;
            let members: Vec<usize> = (0..p.maps.len()).filter(|&i| p.class_of[i] == c).collect();
            let values = members.iter().map(|&i| certified(&b.data[i].scat)).collect::<crate::Result<Vec<_>>>()?;
            Ok(Case::check(values.windows(2).all(|w| w[0] == w[1]), || {
                let reps: Vec<_> = members.iter().map(|&i| map_json(&p.maps[i])).collect();
                json!({ "class_members": reps, "scat_values": values })
            }))
        })
    });

    rec.theorem("zero_iff_null_class", || {
        let all = ctx.all_maps();
        Tally::run(&all, |&at| {
            let (f, d, _) = ctx.map_at(at);
            let sf = certified(&d.scat)?;
            let null = d.null.clone()?;
            Ok(Case::check((sf == 0) == null, || json!({ "f": map_json(f), "scat_f": sf, "null_class": null })))
        })
    });

    rec.theorem("cone_has_category_zero", || {
        Tally::run(ks, |k| {
            let c = Arc::new(k.cone()?);
            let (v, cover) = scat(&c, lim)?;
            let ok = v == 0 && verify_map_cover(&SimplicialMap::identity(&c), &cover).ok;
            Ok(Case::check(ok, || json!({ "complex": k.facet_labels(), "scat_cone": v })))
        })
    });

    rec.theorem_with_notes("strong_equivalence_preserves_category", || {
        let all = ctx.all_maps();
        let t = Tally::run(&all, |&at| {
            let (f, d, b) = ctx.map_at(at);
            let Some(e) = strong_equivalence_inverse(f, lim)? else {
                return Ok(Case::NotApplicable("not a strong equivalence".into()));
            };
            let id_k = SimplicialMap::identity(f.domain());
            let id_l = SimplicialMap::identity(f.codomain());
            let chains_ok = verify_chain_between(&e.gf_chain, &compose(&e.g, f)?, &id_k)
                && verify_chain_between(&e.fg_chain, &compose(f, &e.g)?, &id_l);
            let sf = certified(&d.scat)?;
            let (sk, sl) = (certified(&ctx.complex_scat()[b.k])?, certified(&ctx.complex_scat()[b.l])?);
            Ok(Case::check(chains_ok && sf == sk && sk == sl, || {
                json!({ "f": map_json(f), "inverse": map_json(&e.g), "scat_f": sf, "scat_k": sk, "scat_l": sl })
            }))
        });
        let found = t.checked;
        (t, BTreeMap::from([("strong_equivalences".to_string(), json!(found))]))
    });

    rec.theorem_with_notes("subspace_category_is_inclusion_category", || {
        let mut rng = rng_for(seed, "subspace_category_is_inclusion_category");
        let mut items: Vec<(usize, u64)> = Vec::new();
        for (i, k) in ks.iter().enumerate() {
            let all = (1u64 << k.n_facets()) - 1;
            if k.n_vertices() <= ctx.cfg.map_vertices {
                items.extend((1..=all).map(|m| (i, m)));
            }
        }
        let big: Vec<usize> = (0..ks.len()).filter(|&i| ks[i].n_vertices() > ctx.cfg.map_vertices).collect();
        let exhaustive = items.len();
        for _ in 0..ctx.cfg.samples {
            if let Some(&i) = big.choose(&mut rng) {
                items.push((i, rng.random_range(1..1u64 << ks[i].n_facets())));
            }
        }
        let t = Tally::run(&items, |&(i, mask)| subspace_case(&ks[i], mask, lim));
        let notes = BTreeMap::from([
            ("exhaustive_subsets".to_string(), json!(exhaustive)),
            ("sampled_subsets".to_string(), json!(items.len() - exhaustive)),
        ]);
        (t, notes)
    });

    rec.theorem("scat_below_gscat", || {
        let idx: Vec<usize> = (0..ks.len()).collect();
        Tally::run(&idx, |&i| {
            let k = &ks[i];
            let sk = certified(&ctx.complex_scat()[i])?;
            let (upper, cover) = gscat_upper(k, lim)?;
            if !verify_collapsible_cover(k, &cover).ok {
                return Ok(Case::Fail(json!({ "complex": k.facet_labels(), "reason": "gscat cover fails" })));
            }
            let exact = gscat_exact(k, lim)?;
            Ok(Case::check(sk <= exact && exact <= upper, || {
                json!({ "complex": k.facet_labels(), "scat": sk, "gscat_exact": exact, "gscat_upper": upper })
            }))
        })
    });
}

fn fi_k(ctx: &Context, (b, _): (usize, usize)) -> usize {
    ctx.blocks()[b].k
}

fn gi_l(ctx: &Context, (b, _): (usize, usize)) -> usize {
    ctx.blocks()[b].l
}

fn subspace_case(k: &Arc<SimplicialComplex>, mask: u64, lim: &crate::SearchLimits) -> crate::Result<Case> {
    let a = Subcomplex::from_facet_mask(k, mask);
    if !a.standalone()?.0.is_connected() {
        return Ok(Case::NotApplicable("subcomplex is disconnected".into()));
    }
    let (v, cover) = subspace_scat(k, &a, lim)?;
    let inc = SimplicialMap::inclusion(&a)?.map;
    let (w, inc_cover) = scat_map(&inc, lim)?;
    let ok = v == w && verify_subspace_cover(k, &a, &cover).ok && verify_map_cover(&inc, &inc_cover).ok;
    Ok(Case::check(ok, || {
        json!({ "complex": k.facet_labels(), "subcomplex_facets": a.facet_indices(), "subspace_scat": v, "scat_inclusion": w })
    }))
}
