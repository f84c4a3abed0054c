use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::Rng;
use serde_json::json;

use super::context::certified;
use super::contiguity::map_json;
use super::{rng_for, Case, Context, Recorder, Tally};
use crate::category::{scat_map, verify_map_cover};
use crate::contiguity::{diagonal, product_map, Product, SimplicialMap};
use crate::error::Result;
use crate::scomplex::SimplicialComplex;

fn over_cap(a: usize, b: usize, cap: usize) -> Option<Case> {
    (a * b > cap).then(|| {
        Case::Skip(format!("product of {a}- and {b}-vertex complexes has {} vertices, above the cap of {cap}", a * b))
    })
}

/// `scat` of a map with its cover checked independently.
fn certified_scat_map(f: &SimplicialMap, lim: &crate::SearchLimits) -> Result<usize> {
    let (v, cover) = scat_map(f, lim)?;
    certified(&Ok(super::context::Certified { value: v, cover_ok: verify_map_cover(f, &cover).ok, cover }))
}

fn certified_scat(k: &Arc<SimplicialComplex>, lim: &crate::SearchLimits) -> Result<usize> {
    certified_scat_map(&SimplicialMap::identity(k), lim)
}

pub(super) fn run(ctx: &Context, rec: &mut Recorder) {
    let lim = &ctx.limits;
    let ks = &ctx.complexes;
    let cap = ctx.cfg.product_vertices;
    let pairs: Vec<(usize, usize)> =
        ctx.small.iter().flat_map(|&i| ctx.small.iter().map(move |&j| (i, j))).collect();

    rec.theorem("diagonal_has_category_of_space", || {
        let idx: Vec<usize> = (0..ks.len()).collect();
        Tally::run(&idx, |&i| {
            let k = &ks[i];
            if let Some(skip) = over_cap(k.n_vertices(), k.n_vertices(), cap) {
                return Ok(skip);
            }
            let (_, d) = diagonal(k)?;
            let sd = certified_scat_map(&d, lim)?;
            let sk = certified(&ctx.complex_scat()[i])?;
            Ok(Case::check(sd == sk, || json!({ "complex": k.facet_labels(), "scat_diagonal": sd, "scat": sk })))
        })
    });

    rec.theorem("projection_has_category_of_factor", || {
        Tally::run(&pairs, |&(i, j)| {
            if let Some(skip) = over_cap(ks[i].n_vertices(), ks[j].n_vertices(), cap) {
                return Ok(skip);
            }
            let p = Product::new(&ks[i], &ks[j])?;
            let (s1, s2) = (certified_scat_map(&p.p1(), lim)?, certified_scat_map(&p.p2(), lim)?);
            let (sk, sl) = (certified(&ctx.complex_scat()[i])?, certified(&ctx.complex_scat()[j])?);
            Ok(Case::check(s1 == sk && s2 == sl, || {
                json!({ "k": ks[i].facet_labels(), "l": ks[j].facet_labels(), "scat_p1": s1, "scat_p2": s2, "scat_k": sk, "scat_l": sl })
            }))
        })
    });

    rec.theorem("product_complex_bound", || {
        Tally::run(&pairs, |&(i, j)| {
            if let Some(skip) = over_cap(ks[i].n_vertices(), ks[j].n_vertices(), cap) {
                return Ok(skip);
            }
            let p = Product::new(&ks[i], &ks[j])?;
            let sp = certified_scat(&p.complex, lim)?;
            let (sk, sl) = (certified(&ctx.complex_scat()[i])?, certified(&ctx.complex_scat()[j])?);
            Ok(Case::check(sp + 1 <= (sk + 1) * (sl + 1), || {
                json!({ "k": ks[i].facet_labels(), "l": ks[j].facet_labels(), "scat_product": sp, "scat_k": sk, "scat_l": sl })
            }))
        })
    });

    rec.theorem("product_map_bound", || {
        let mut rng = rng_for(ctx.cfg.seed, "product_map_bound");
        let blocks = ctx.blocks();
        let fits = |i: usize, j: usize| {
            let (x, y) = (&blocks[i], &blocks[j]);
            let n = |c: usize| ks[c].n_vertices();
            !x.maps().is_empty() && !y.maps().is_empty() && n(x.k) * n(y.k) <= cap && n(x.l) * n(y.l) <= cap
        };
        let block_pairs: Vec<(usize, usize)> =
            (0..blocks.len()).flat_map(|i| (0..blocks.len()).map(move |j| (i, j))).filter(|&(i, j)| fits(i, j)).collect();
        let draws: Vec<((usize, usize), (usize, usize))> = (0..ctx.cfg.samples)
            .filter_map(|_| {
                let &(i, j) = block_pairs.choose(&mut rng)?;
                let m1 = rng.random_range(0..blocks[i].maps().len());
                let m2 = rng.random_range(0..blocks[j].maps().len());
                Some(((i, m1), (j, m2)))
            })
            .collect();
        Tally::run(&draws, |&(a, b)| {
            let (f, fd, _) = ctx.map_at(a);
            let (g, gd, _) = ctx.map_at(b);
            let dom = (f.domain().n_vertices(), g.domain().n_vertices());
            let cod = (f.codomain().n_vertices(), g.codomain().n_vertices());
            if let Some(skip) = over_cap(dom.0, dom.1, cap).or_else(|| over_cap(cod.0, cod.1, cap)) {
                return Ok(skip);
            }
            let (_, _, fg) = product_map(f, g)?;
            let s = certified_scat_map(&fg, lim)?;
            let (sf, sg) = (certified(&fd.scat)?, certified(&gd.scat)?);
            Ok(Case::check(s + 1 <= (sf + 1) * (sg + 1), || {
                json!({ "f": map_json(f), "g": map_json(g), "scat_product_map": s, "scat_f": sf, "scat_g": sg })
            }))
        })
    });
}
