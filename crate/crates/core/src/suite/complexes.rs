use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use serde_json::json;

use super::{rng_for, Case, Context, Recorder, Tally};
use crate::contiguity::{core, Product};
use crate::error::Result;
use crate::oracle::{corpus_count_oracle, simplex_count_oracle};
use crate::scomplex::{are_isomorphic, Simplex, SimplicialComplex, VertexId};

fn facet_lists(k: &SimplicialComplex) -> Vec<Vec<VertexId>> {
    k.facets().iter().map(|f| f.to_vec()).collect()
}

fn relabelled(k: &SimplicialComplex, perm: &[VertexId]) -> Result<SimplicialComplex> {
    let facets: Vec<Vec<VertexId>> = k.facets().iter().map(|f| f.image(perm).to_vec()).collect();
    SimplicialComplex::from_facets(&facets)
}

pub(super) fn run(ctx: &Context, rec: &mut Recorder) {
    let ks = &ctx.complexes;
    let seed = ctx.cfg.seed;

    rec.theorem("normalization_idempotence", || {
        let inputs: Vec<(usize, Vec<Vec<VertexId>>)> = {
            let mut rng = rng_for(seed, "normalization_idempotence");
            ks.iter()
                .enumerate()
                .map(|(i, k)| {
                    // shuffled facets plus redundant faces and duplicates
                    let mut noisy = facet_lists(k);
                    for f in k.facets() {
                        let faces: Vec<Simplex> = f.faces().filter(|s| !s.is_empty()).collect();
                        noisy.push(faces.choose(&mut rng).expect("facet has faces").to_vec());
                        if rng.random_bool(0.3) {
                            noisy.push(f.to_vec());
                        }
                    }
                    noisy.shuffle(&mut rng);
                    (i, noisy)
                })
                .collect()
        };
        Tally::run(&inputs, |(i, noisy)| {
            let k = &ks[*i];
            let again = SimplicialComplex::with_labels(k.labels().to_vec(), &facet_lists(k))?;
            let from_noise = SimplicialComplex::with_labels(k.labels().to_vec(), noisy)?;
            Ok(Case::check(again == **k && from_noise == **k, || {
                json!({ "complex": k.facet_labels(), "noisy_facets": noisy })
            }))
        })
    });

    rec.theorem("product_projection_law", || {
        let cap = ctx.cfg.product_vertices;
        let pairs: Vec<(usize, usize)> = (0..ks.len())
            .flat_map(|i| (0..ks.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| ks[i].n_vertices() * ks[j].n_vertices() <= cap)
            .collect();
        Tally::run(&pairs, |&(i, j)| {
            let p = Product::new(&ks[i], &ks[j])?;
            let (p1, p2) = (p.p1(), p.p2());
            let projections_are_facets = p.complex.facets().iter().all(|&f| {
                ks[i].facets().contains(&p1.image(f)) && ks[j].facets().contains(&p2.image(f))
            });
            let pr = &p;
            let pairs_are_facets = ks[i].facets().iter().all(|s| {
                ks[j].facets().iter().all(|t| {
                    let st = Simplex::from_vertices(
                        s.vertices().flat_map(|x| t.vertices().map(move |y| pr.pair(x, y))),
                    )
                    .expect("product ids fit");
                    p.complex.facets().contains(&st)
                })
            });
            let count = p.complex.n_facets() == ks[i].n_facets() * ks[j].n_facets();
            Ok(Case::check(projections_are_facets && pairs_are_facets && count, || {
                json!({ "k": ks[i].facet_labels(), "l": ks[j].facet_labels() })
            }))
        })
    });

    rec.theorem("cone_collapses_to_point", || {
        Tally::run(ks, |k| {
            let c = std::sync::Arc::new(k.cone()?);
            let ok = c.is_connected() && core(&c)?.is_point();
            Ok(Case::check(ok, || json!({ "complex": k.facet_labels() })))
        })
    });

    rec.theorem("isomorphism_is_equivalence", || {
        let perms: Vec<(usize, Vec<VertexId>, Vec<VertexId>)> = {
            let mut rng = rng_for(seed, "isomorphism_is_equivalence");
            (0..ks.len())
                .map(|i| {
                    let n = ks[i].n_vertices();
                    let mut a: Vec<VertexId> = (0..n).collect();
                    let mut b = a.clone();
                    a.shuffle(&mut rng);
                    b.shuffle(&mut rng);
                    (i, a, b)
                })
                .collect()
        };
        Tally::run(&perms, |(i, a, b)| {
            let k = &*ks[*i];
            let k1 = relabelled(k, a)?;
            let k2 = relabelled(&k1, b)?;
            let lim = &ctx.limits;
            let iso = |x: &SimplicialComplex, y: &SimplicialComplex| -> Result<bool> {
                Ok(match are_isomorphic(x, y, lim)? {
                    Some(w) => w.verify(x, y),
                    None => false,
                })
            };
            let ok = iso(k, k)? && iso(k, &k1)? && iso(&k1, k)? && iso(&k1, &k2)? && iso(k, &k2)?;
            Ok(Case::check(ok, || json!({ "complex": k.facet_labels(), "perm_a": a, "perm_b": b })))
        })
    });

    rec.theorem("corpus_pairwise_non_isomorphic", || {
        let pairs: Vec<(usize, usize)> =
            (0..ks.len()).flat_map(|i| (i + 1..ks.len()).map(move |j| (i, j))).collect();
        Tally::run(&pairs, |&(i, j)| {
            let iso = are_isomorphic(&ks[i], &ks[j], &ctx.limits)?;
            Ok(Case::check(iso.is_none(), || {
                json!({ "k": ks[i].facet_labels(), "l": ks[j].facet_labels() })
            }))
        })
    });

    rec.theorem("simplex_count_matches_subset_enumeration", || {
        Tally::run(ks, |k| {
            let ours = k.all_simplices(&ctx.limits)?.len();
            let oracle = simplex_count_oracle(k);
            Ok(Case::check(ours == oracle, || {
                json!({ "complex": k.facet_labels(), "all_simplices": ours, "oracle": oracle })
            }))
        })
    });

    rec.theorem("corpus_size_matches_oracle", || {
        let ns: Vec<usize> = (1..=ctx.cfg.corpus_vertices.min(4)).collect();
        let mut t = Tally::run(&ns, |&n| {
            let ours = ks.iter().filter(|k| k.n_vertices() == n).count();
            let oracle = corpus_count_oracle(n);
            Ok(Case::check(ours == oracle, || json!({ "vertices": n, "corpus": ours, "oracle": oracle })))
        });
        if !ctx.corpus.exhaustive {
            t.add(Case::Fail(json!({ "error": "corpus enumeration was not exhaustive" })));
        }
        t
    });
}
