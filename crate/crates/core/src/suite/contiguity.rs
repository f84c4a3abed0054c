use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::context::Block;
use super::{rng_for, Case, Context, Recorder, Tally};
use crate::contiguity::{
    class_partition, compose, contiguity_neighbors, core, enumerate_maps, is_contiguous, paste_maps,
    same_contiguity_class, verify_chain_between, Restriction, SimplicialMap,
};
use crate::error::Result;
use crate::io::MapFile;
use crate::scomplex::{SimplicialComplex, Subcomplex};

pub(super) fn map_json(f: &SimplicialMap) -> Value {
    serde_json::to_value(MapFile::from_map(f)).expect("map serializes")
}

/// A uniformly chosen non-empty block and map index.
pub(super) fn pick_map<'a>(ctx: &'a Context, rng: &mut ChaCha8Rng) -> (&'a Block, usize) {
    let blocks: Vec<&Block> = ctx.blocks().iter().filter(|b| !b.maps().is_empty()).collect();
    let b = blocks.choose(rng).expect("some block has maps");
    (b, rng.random_range(0..b.maps().len()))
}

/// A random map out of corpus member `k` into a small member, if any block has one.
pub(super) fn pick_from<'a>(ctx: &'a Context, k: usize, rng: &mut ChaCha8Rng) -> Option<&'a SimplicialMap> {
    let blocks: Vec<&Block> = ctx.blocks().iter().filter(|b| b.k == k && !b.maps().is_empty()).collect();
    let b = blocks.choose(rng)?;
    b.maps().choose(rng)
}

/// A random map into corpus member `l` from a small member.
fn pick_into<'a>(ctx: &'a Context, l: usize, rng: &mut ChaCha8Rng) -> Option<&'a SimplicialMap> {
    let blocks: Vec<&Block> = ctx.blocks().iter().filter(|b| b.l == l && !b.maps().is_empty()).collect();
    let b = blocks.choose(rng)?;
    b.maps().choose(rng)
}

pub(super) fn run(ctx: &Context, rec: &mut Recorder) {
    let seed = ctx.cfg.seed;
    let lim = &ctx.limits;
    let samples = ctx.cfg.samples;

    rec.theorem("contiguity_reflexive_symmetric", || {
        let mut rng = rng_for(seed, "contiguity_reflexive_symmetric");
        let pairs: Vec<(SimplicialMap, SimplicialMap, bool)> = (0..samples * 4)
            .filter_map(|i| {
                let (b, m) = pick_map(ctx, &mut rng);
                let f = b.maps()[m].clone();
                // half the draws take a neighbour, so positive instances occur
                let g = if i % 2 == 0 {
                    let n = contiguity_neighbors(&f, lim).ok()?;
                    return Some((f, n.choose(&mut rng)?.clone(), true));
                } else {
                    b.maps().choose(&mut rng)?.clone()
                };
                Some((f, g, false))
            })
            .collect();
        Tally::run(&pairs, |(f, g, neighbour)| {
            let fg = is_contiguous(f, g)?;
            let ok = is_contiguous(f, f)? && fg == is_contiguous(g, f)? && (fg || !neighbour);
            Ok(Case::check(ok, || json!({ "f": map_json(f), "g": map_json(g), "claimed_neighbour": neighbour })))
        })
    });

    rec.theorem("constants_form_one_class", || {
        let mut items: Vec<(usize, usize)> = ctx.blocks().iter().map(|b| (b.k, b.l)).collect();
        if let Some(pt) = ctx.complexes.iter().position(|k| k.n_vertices() == 1) {
            items.extend((0..ctx.complexes.len()).filter(|&l| !ctx.small.contains(&l)).map(|l| (pt, l)));
        }
        Tally::run_many(&items, |&(k, l)| {
            let (k, l) = (&ctx.complexes[k], &ctx.complexes[l]);
            let c0 = SimplicialMap::constant(k, l, 0)?;
            let mut cases = Vec::new();
            for b in 1..l.n_vertices() {
                let cb = SimplicialMap::constant(k, l, b)?;
                let ok = match same_contiguity_class(&c0, &cb, lim)? {
                    Some(chain) => verify_chain_between(&chain, &c0, &cb),
                    None => false,
                };
                cases.push(Case::check(ok, || json!({ "from": map_json(&c0), "to": map_json(&cb) })));
            }
            Ok(cases)
        })
    });

    rec.theorem("composition_respects_classes", || {
        let mut rng = rng_for(seed, "composition_respects_classes");
        let draws: Vec<(SimplicialMap, SimplicialMap, SimplicialMap, SimplicialMap)> = (0..samples)
            .filter_map(|_| {
                let (b, m) = pick_map(ctx, &mut rng);
                let p = b.partition.as_ref().ok()?;
                let f = &p.maps[m];
                let same: Vec<&SimplicialMap> =
                    p.maps.iter().zip(&p.class_of).filter(|(_, &c)| c == p.class_of[m]).map(|(g, _)| g).collect();
                let g = *same.choose(&mut rng)?;
                let post = pick_from(ctx, b.l, &mut rng)?.clone();
                let pre = pick_into(ctx, b.k, &mut rng)?.clone();
                Some((f.clone(), g.clone(), post, pre))
            })
            .collect();
        Tally::run(&draws, |(f, g, h, k)| {
            let cx = || json!({ "f": map_json(f), "g": map_json(g), "post": map_json(h), "pre": map_json(k) });
            let Some(chain) = same_contiguity_class(f, g, lim)? else {
                return Ok(Case::Fail(json!({ "reason": "naive classes agree but no chain was found", "case": cx() })));
            };
            let post = chain.post_compose(h)?;
            let pre = chain.pre_compose(k)?;
            let ok = verify_chain_between(&post, &compose(h, f)?, &compose(h, g)?)
                && verify_chain_between(&pre, &compose(f, k)?, &compose(g, k)?);
            Ok(Case::check(ok, cx))
        })
    });

    rec.theorem("core_is_idempotent", || {
        Tally::run(&ctx.complexes, |k| {
            let c = core(k)?;
            let cc = core(&c.core)?;
            let ok = cc.removal_order.is_empty()
                && crate::scomplex::are_isomorphic(&cc.core, &c.core, lim)?.is_some();
            Ok(Case::check(ok, || json!({ "complex": k.facet_labels() })))
        })
    });

    rec.theorem("core_chain_and_retraction", || {
        Tally::run(&ctx.complexes, |k| {
            let c = core(k)?;
            let id = SimplicialMap::identity(k);
            let ir = compose(&c.inclusion, &c.retraction)?;
            let ri = compose(&c.retraction, &c.inclusion)?;
            let ok = verify_chain_between(&c.idr_chain, &id, &ir) && ri == SimplicialMap::identity(&c.core);
            Ok(Case::check(ok, || json!({ "complex": k.facet_labels() })))
        })
    });

    rec.theorem("null_decision_matches_naive", || {
        let all = ctx.all_maps();
        Tally::run(&all, |&at| {
            let (f, data, blk) = ctx.map_at(at);
            let p = blk.partition.as_ref().map_err(Clone::clone)?;
            let c0 = SimplicialMap::constant(f.domain(), f.codomain(), 0)?;
            let naive = p.same_class(f, &c0).expect("constant is a map");
            let cored = data.null.clone()?;
            Ok(Case::check(naive == cored, || json!({ "f": map_json(f), "naive": naive, "core_reduced": cored })))
        })
    });

    rec.theorem_with_notes("class_decision_matches_naive", || {
        let blocks = ctx.blocks();
        let mut t = Tally::run(blocks, |b| {
            let p = b.partition.as_ref().map_err(Clone::clone)?;
            let (k, l) = (&ctx.complexes[b.k], &ctx.complexes[b.l]);
            let (ck, cl) = (core(k)?, core(l)?);
            let q = class_partition(&ck.core, &cl.core, lim)?;
            let mut forward: HashMap<usize, usize> = HashMap::new();
            let mut backward: HashMap<usize, usize> = HashMap::new();
            for (f, &c) in p.maps.iter().zip(&p.class_of) {
                let squeezed = compose(&cl.retraction, &compose(f, &ck.inclusion)?)?;
                let d = q.class(&squeezed).expect("squeezed map is a core map");
                let agrees = *forward.entry(c).or_insert(d) == d && *backward.entry(d).or_insert(c) == c;
                if !agrees {
                    return Ok(Case::Fail(json!({ "k": k.facet_labels(), "l": l.facet_labels(), "f": map_json(f) })));
                }
            }
            Ok(Case::Pass)
        });
        let pairs: usize = blocks.iter().map(|b| b.maps().len() * b.maps().len()).sum();
        let mut rng = rng_for(seed, "class_decision_matches_naive");
        let direct: Vec<(SimplicialMap, SimplicialMap, bool)> = (0..samples * 5)
            .filter_map(|i| {
                let (b, m) = pick_map(ctx, &mut rng);
                let p = b.partition.as_ref().ok()?;
                let g = if i % 2 == 0 {
                    let same: Vec<usize> = (0..p.maps.len()).filter(|&j| p.class_of[j] == p.class_of[m]).collect();
                    *same.choose(&mut rng)?
                } else {
                    rng.random_range(0..p.maps.len())
                };
                Some((p.maps[m].clone(), p.maps[g].clone(), p.class_of[m] == p.class_of[g]))
            })
            .collect();
        t.extend(Tally::cases(&direct, |(f, g, naive)| {
            let cored = match same_contiguity_class(f, g, lim)? {
                Some(chain) => {
                    if !verify_chain_between(&chain, f, g) {
                        return Ok(Case::Fail(json!({ "reason": "emitted chain fails", "f": map_json(f), "g": map_json(g) })));
                    }
                    true
                }
                None => false,
            };
            Ok(Case::check(cored == *naive, || json!({ "f": map_json(f), "g": map_json(g), "naive": naive })))
        }));
        let notes = BTreeMap::from([
            ("pairs_compared_by_partition".to_string(), json!(pairs)),
            ("direct_pair_calls".to_string(), json!(direct.len())),
        ]);
        (t, notes)
    });

    rec.theorem("paste_lemma_stepwise", || {
        let mut rng = rng_for(seed, "paste_lemma_stepwise");
        let draws: Vec<PasteDraw> = (0..samples).filter_map(|_| PasteDraw::new(ctx, &mut rng)).collect();
        Tally::run(&draws, |d| d.stepwise(lim))
    });

    rec.harness("paste_lemma_as_stated", || {
        let mut rng = rng_for(seed, "paste_lemma_as_stated");
        let draws: Vec<PasteDraw> = (0..samples).filter_map(|_| PasteDraw::new(ctx, &mut rng)).collect();
        let t = Tally::run(&draws, |d| d.as_stated(lim));
        let notes = BTreeMap::from([(
            "reading".to_string(),
            json!("f1~f2 on U and g1~g2 on V with both pairs pasteable; violations show the class-level version needs stepwise agreement"),
        )]);
        (t, notes)
    });
}

/// A complex split into two facet sets, a target, and a map to restrict.
struct PasteDraw {
    k: Arc<SimplicialComplex>,
    u: Subcomplex,
    v: Subcomplex,
    h: SimplicialMap,
    seed: u64,
}

impl PasteDraw {
    fn new(ctx: &Context, rng: &mut ChaCha8Rng) -> Option<PasteDraw> {
        let candidates: Vec<&Arc<SimplicialComplex>> = ctx.complexes.iter().filter(|k| k.n_facets() >= 2).collect();
        let k = Arc::clone(candidates.choose(rng)?);
        let m = k.n_facets();
        let mask: u64 = rng.random_range(1..(1u64 << m) - 1);
        let extra: u64 = if rng.random_bool(0.3) { rng.random_range(0..1u64 << m) & mask } else { 0 };
        let all = (1u64 << m) - 1;
        let u = Subcomplex::from_facet_mask(&k, mask);
        let v = Subcomplex::from_facet_mask(&k, (all & !mask) | extra);
        let l = ctx.small.choose(rng)?;
        let maps = enumerate_maps(&k, &ctx.complexes[*l], &ctx.limits).ok()?;
        let h = maps.choose(rng)?.clone();
        Some(PasteDraw { k, u, v, h, seed: rng.random() })
    }

    fn cx(&self) -> Value {
        json!({
            "complex": self.k.facet_labels(),
            "u_facets": self.u.facet_indices(),
            "v_facets": self.v.facet_indices(),
            "h": map_json(&self.h),
        })
    }

    /// Moves both halves one contiguity step at a time, keeping them pasteable.
    fn stepwise(&self, lim: &crate::SearchLimits) -> Result<Case> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut f = self.h.restrict(&self.u)?;
        let mut g = self.h.restrict(&self.v)?;
        let mut pasted = vec![paste_maps(&f, &g)?];
        for _ in 0..3 {
            let Some(f_next) = contiguity_neighbors(&f.map, lim)?.choose(&mut rng).cloned() else { break };
            let f_next = Restriction { part: f.part.clone(), map: f_next, embedding: f.embedding.clone() };
            let agree: Vec<SimplicialMap> = contiguity_neighbors(&g.map, lim)?
                .into_iter()
                .filter(|cand| {
                    g.embedding.iter().enumerate().all(|(i, &pv)| {
                        match f_next.embedding.iter().position(|&q| q == pv) {
                            Some(j) => f_next.map.apply(j) == cand.apply(i),
                            None => true,
                        }
                    })
                })
                .collect();
            let Some(g_next) = agree.choose(&mut rng).cloned() else { break };
            let g_next = Restriction { part: g.part.clone(), map: g_next, embedding: g.embedding.clone() };
            pasted.push(paste_maps(&f_next, &g_next)?);
            f = f_next;
            g = g_next;
        }
        let steps_contiguous = pasted.windows(2).map(|w| is_contiguous(&w[0].map, &w[1].map)).collect::<Result<Vec<_>>>()?;
        let (first, last) = (&pasted[0].map, &pasted[pasted.len() - 1].map);
        let chained = match same_contiguity_class(first, last, lim)? {
            Some(c) => verify_chain_between(&c, first, last),
            None => false,
        };
        let ok = steps_contiguous.iter().all(|&b| b) && chained;
        Ok(Case::check(ok, || json!({ "draw": self.cx(), "seed": self.seed })))
    }

    /// Picks `h'` with `h'|U ~ h|U` and `h'|V ~ h|V`, then asks whether `h ~ h'`.
    fn as_stated(&self, lim: &crate::SearchLimits) -> Result<Case> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let l = self.h.codomain();
        let (fu, gv) = (self.h.restrict(&self.u)?, self.h.restrict(&self.v)?);
        let pu = class_partition(fu.map.domain(), l, lim)?;
        let pv = class_partition(gv.map.domain(), l, lim)?;
        let (cu, cv) = (pu.class(&fu.map), pv.class(&gv.map));
        let mut partners = Vec::new();
        for h2 in enumerate_maps(&self.k, l, lim)? {
            let (a, b) = (h2.restrict(&self.u)?, h2.restrict(&self.v)?);
            if pu.class(&a.map) == cu && pv.class(&b.map) == cv {
                partners.push(h2);
            }
        }
        let h2 = partners.choose(&mut rng).expect("h itself qualifies");
        let ok = same_contiguity_class(&self.h, h2, lim)?.is_some();
        Ok(Case::check(ok, || json!({ "draw": self.cx(), "h_prime": map_json(h2) })))
    }
}
