use std::sync::Arc;

use proptest::prelude::*;

use scat_core::category::{scat, scat_map, verify_map_cover};
use scat_core::certificate::Certificate;
use scat_core::contiguity::{
    class_partition, compose, is_contiguous, same_contiguity_class, same_contiguity_class_naive, verify_chain_between,
    SimplicialMap,
};
use scat_core::finite_space::face_poset;
use scat_core::oracle::{scat_oracle, simplex_count_oracle};
use scat_core::{SearchLimits, SimplicialComplex};

/// Connected complexes on `1..=max_vertices` vertices, as random facet families.
fn complex(max_vertices: usize) -> impl Strategy<Value = Arc<SimplicialComplex>> {
    (1..=max_vertices)
        .prop_flat_map(|n| {
            let full = (1u64 << n) - 1;
            (Just(n), prop::collection::vec(1..=full, 1..6))
        })
        .prop_filter_map("disconnected", |(n, masks)| {
            let mut facets: Vec<Vec<usize>> =
                masks.iter().map(|m| (0..n).filter(|v| m >> v & 1 == 1).collect()).collect();
            // every vertex shows up somewhere
            for v in 0..n {
                if !facets.iter().any(|f| f.contains(&v)) {
                    facets.push(vec![v]);
                }
            }
            let k = SimplicialComplex::from_facets(&facets).ok()?;
            k.is_connected().then(|| Arc::new(k))
        })
}

/// A simplicial map between two small complexes, found by trying assignments.
fn map(max_vertices: usize) -> impl Strategy<Value = SimplicialMap> {
    (complex(max_vertices), complex(max_vertices), any::<u64>()).prop_filter_map("no simplicial map", |(k, l, seed)| {
        let n = k.n_vertices();
        let m = l.n_vertices();
        let total = (m as u64).pow(n as u32);
        (0..total.min(4096)).find_map(|step| {
            let mut code = seed.wrapping_add(step) % total;
            let a: Vec<usize> = (0..n)
                .map(|_| {
                    let d = (code % m as u64) as usize;
                    code /= m as u64;
                    d
                })
                .collect();
            SimplicialMap::new(Arc::clone(&k), Arc::clone(&l), a).ok()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalizing_twice_changes_nothing(k in complex(6)) {
        let facets: Vec<Vec<usize>> = k.facets().iter().map(|f| f.to_vec()).collect();
        let again = SimplicialComplex::from_facets(&facets).unwrap();
        prop_assert_eq!(&again, &*k);
    }

    #[test]
    fn face_poset_counts_every_simplex(k in complex(6)) {
        let fp = face_poset(&k, &SearchLimits::default()).unwrap();
        prop_assert_eq!(fp.space.len(), simplex_count_oracle(&k));
    }

    #[test]
    fn category_matches_oracle_and_cover_checks(k in complex(4)) {
        let lim = SearchLimits::default();
        let (v, cover) = scat(&k, &lim).unwrap();
        prop_assert_eq!(v, scat_oracle(&k, &lim).unwrap());
        let id = SimplicialMap::identity(&k);
        prop_assert!(verify_map_cover(&id, &cover).ok);
        let cert = Certificate::map_cover(&id, v, &cover);
        let text = serde_json::to_string(&cert).unwrap();
        let back: Certificate = serde_json::from_str(&text).unwrap();
        prop_assert!(back.verify().unwrap().ok);
    }

    #[test]
    fn cones_have_category_zero(k in complex(5)) {
        let c = Arc::new(k.cone().unwrap());
        prop_assert_eq!(scat(&c, &SearchLimits::default()).unwrap().0, 0);
    }

    #[test]
    fn map_category_is_below_both_ends(f in map(4)) {
        let lim = SearchLimits::default();
        let (v, cover) = scat_map(&f, &lim).unwrap();
        prop_assert!(verify_map_cover(&f, &cover).ok);
        prop_assert!(v <= scat(f.domain(), &lim).unwrap().0);
        prop_assert!(v <= scat(f.codomain(), &lim).unwrap().0);
    }

    #[test]
    fn composing_with_identity_keeps_the_map(f in map(4)) {
        let left = compose(&SimplicialMap::identity(f.codomain()), &f).unwrap();
        let right = compose(&f, &SimplicialMap::identity(f.domain())).unwrap();
        prop_assert_eq!(&left, &f);
        prop_assert_eq!(&right, &f);
        prop_assert!(is_contiguous(&f, &f).unwrap());
    }

    #[test]
    fn class_decisions_agree_with_naive_search(f in map(3), pick in any::<prop::sample::Index>()) {
        let lim = SearchLimits::default();
        let p = class_partition(f.domain(), f.codomain(), &lim).unwrap();
        let g = &p.maps[pick.index(p.maps.len())];
        let fast = same_contiguity_class(&f, g, &lim).unwrap();
        let naive = same_contiguity_class_naive(&f, g, &lim).unwrap();
        prop_assert_eq!(fast.is_some(), naive.is_some());
        prop_assert_eq!(fast.is_some(), p.same_class(&f, g).unwrap());
        if let Some(chain) = fast {
            prop_assert!(verify_chain_between(&chain, &f, g));
        }
    }
}
