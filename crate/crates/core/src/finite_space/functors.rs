use std::collections::HashMap;
use std::sync::Arc;

use super::{Fence, FiniteSpace, MonotoneMap, Point};
use crate::contiguity::{ContiguityChain, SimplicialMap};
use crate::error::{Error, Result};
use crate::limits::SearchLimits;
use crate::scomplex::{Simplex, SimplicialComplex, VertexId};

/// The face poset of a complex with its element/simplex correspondence.
#[derive(Debug, Clone)]
pub struct FacePoset {
    pub space: Arc<FiniteSpace>,
    /// Simplex for each element, ordered by size then lexicographically.
    pub simplices: Vec<Simplex>,
    index: HashMap<Simplex, Point>,
}

impl FacePoset {
    pub fn point_of(&self, s: Simplex) -> Option<Point> {
        self.index.get(&s).copied()
    }
}

fn simplex_label(k: &SimplicialComplex, s: Simplex) -> String {
    let parts: Vec<&str> = s.vertices().map(|v| k.label(v)).collect();
    if parts.iter().all(|p| p.chars().count() == 1) {
        parts.concat()
    } else {
        parts.join(",")
    }
}

/// χ(K): all simplices ordered by inclusion.
pub fn face_poset(k: &SimplicialComplex, limits: &SearchLimits) -> Result<FacePoset> {
    let simplices = k.all_simplices(limits)?.to_vec();
    if simplices.len() > 64 {
        return Err(Error::limit("face poset size", 64));
    }
    let index: HashMap<Simplex, Point> = simplices.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let down = simplices
        .iter()
        .map(|s| s.faces().fold(0u64, |acc, t| acc | 1 << index[&t]))
        .collect();
    let labels = simplices.iter().map(|&s| simplex_label(k, s)).collect();
    Ok(FacePoset { space: Arc::new(FiniteSpace::from_down(labels, down)), simplices, index })
}

fn chi_assignment(src: &FacePoset, dst: &FacePoset, a: &[VertexId]) -> Vec<Point> {
    src.simplices.iter().map(|s| dst.index[&s.image(a)]).collect()
}

/// χ(f): `σ ↦ f(σ)`.
pub fn chi_map(f: &SimplicialMap, limits: &SearchLimits) -> Result<MonotoneMap> {
    let src = face_poset(f.domain(), limits)?;
    let dst = face_poset(f.codomain(), limits)?;
    let a = chi_assignment(&src, &dst, f.assignment());
    Ok(MonotoneMap::new_unchecked(src.space, dst.space, a))
}

/// Fence for `χ(f_0) ≃ ... ≃ χ(f_m)`: each contiguity step `f ~ g` becomes
/// `χ(f) <= (σ ↦ f(σ) ∪ g(σ)) >= χ(g)`.
pub fn chi_chain(chain: &ContiguityChain, limits: &SearchLimits) -> Result<Fence> {
    let src = face_poset(chain.domain(), limits)?;
    let dst = face_poset(chain.codomain(), limits)?;
    let maps = chain.assignments();
    let mut out = vec![chi_assignment(&src, &dst, &maps[0])];
    for pair in maps.windows(2) {
        let (f, g) = (&pair[0], &pair[1]);
        let joined = src
            .simplices
            .iter()
            .map(|s| {
                dst.point_of(s.image(f).union(s.image(g)))
                    .ok_or_else(|| Error::BadParameter("chain step is not a contiguity".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(joined);
        out.push(chi_assignment(&src, &dst, g));
    }
    Ok(Fence::from_assignments(src.space, dst.space, out).deduped())
}

/// 𝒦(X): vertices are the points, simplices the non-empty chains.
pub fn order_complex(x: &FiniteSpace) -> Result<SimplicialComplex> {
    if !x.is_connected() {
        return Err(Error::DisconnectedComplex);
    }
    let mut chains = Vec::new();
    // maximal chains: start at minimal points, climb through covers
    let covers = x.covers();
    let mut up_covers = vec![Vec::new(); x.len()];
    for &(a, b) in &covers {
        up_covers[a].push(b);
    }
    fn climb(p: Point, acc: u64, up: &[Vec<Point>], out: &mut Vec<Simplex>) {
        let acc = acc | 1 << p;
        if up[p].is_empty() {
            out.push(Simplex::from_bits(acc));
            return;
        }
        for &q in &up[p] {
            climb(q, acc, up, out);
        }
    }
    for p in 0..x.len() {
        if x.down_set(p) == 1 << p {
            climb(p, 0, &up_covers, &mut chains);
        }
    }
    let facets: Vec<Vec<VertexId>> = chains.iter().map(|c| c.to_vec()).collect();
    SimplicialComplex::with_labels(x.labels().to_vec(), &facets)
}

/// 𝒦(f): the same vertex function.
pub fn k_map(f: &MonotoneMap) -> Result<SimplicialMap> {
    let k = Arc::new(order_complex(f.domain())?);
    let l = Arc::new(order_complex(f.codomain())?);
    SimplicialMap::new(k, l, f.assignment().to_vec())
}

/// 𝒦 applied to a fence refined to single-point steps, which are contiguous.
pub fn fence_to_chain(fence: &Fence) -> Result<ContiguityChain> {
    let k = Arc::new(order_complex(fence.domain())?);
    let l = Arc::new(order_complex(fence.codomain())?);
    Ok(ContiguityChain::from_assignments(k, l, fence.refined().assignments().to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contiguity::{compose, is_null_class, verify_chain, verify_chain_between};
    use crate::finite_space::{homotopic, verify_fence, verify_fence_between};
    use crate::scomplex::{are_isomorphic, standard_complex, Family};

    fn lim() -> SearchLimits {
        SearchLimits::default()
    }

    #[test]
    fn chi_of_an_edge() {
        let e = standard_complex(Family::Simplex, 1).unwrap();
        let p = face_poset(&e, &lim()).unwrap();
        assert_eq!(p.space.len(), 3);
        assert_eq!(p.space.maximal_points(), vec![2]);
        assert_eq!(p.space.label(2), "ab");
    }

    #[test]
    fn chi_is_functorial() {
        let k = Arc::new(standard_complex(Family::Cycle, 4).unwrap());
        let id = SimplicialMap::identity(&k);
        assert_eq!(chi_map(&id, &lim()).unwrap(), MonotoneMap::identity(&face_poset(&k, &lim()).unwrap().space));
        let f = SimplicialMap::new(k.clone(), k.clone(), vec![1, 2, 3, 0]).unwrap();
        let g = SimplicialMap::new(k.clone(), k.clone(), vec![0, 1, 0, 1]).unwrap();
        let gf = compose(&g, &f).unwrap();
        let lhs = chi_map(&gf, &lim()).unwrap();
        let rhs = chi_map(&g, &lim()).unwrap().after(&chi_map(&f, &lim()).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn order_complex_examples() {
        let chain = FiniteSpace::from_labels(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let k = order_complex(&chain).unwrap();
        assert_eq!(k.n_facets(), 1);
        assert_eq!(k.facets()[0].len(), 3);
        let s = crate::finite_space::tests::circle();
        let c = order_complex(&s).unwrap();
        let c4 = standard_complex(Family::Cycle, 4).unwrap();
        assert!(are_isomorphic(&c, &c4, &lim()).unwrap().is_some());
        let k = standard_complex(Family::BoundaryOfSimplex, 2).unwrap();
        let sd = order_complex(&face_poset(&k, &lim()).unwrap().space).unwrap();
        assert_eq!(sd.n_vertices(), 6);
    }

    #[test]
    fn chains_and_fences_correspond() {
        let k = Arc::new(standard_complex(Family::Cycle, 4).unwrap());
        let p = Arc::new(standard_complex(Family::Path, 3).unwrap());
        let f = SimplicialMap::new(p, k, vec![0, 1, 2]).unwrap();
        let chain = is_null_class(&f, &lim()).unwrap().unwrap();
        let fence = chi_chain(&chain, &lim()).unwrap();
        assert!(verify_fence(&fence).ok);
        assert_eq!(fence.first(), chi_map(&f, &lim()).unwrap());

        let s = crate::finite_space::tests::circle();
        let x = Arc::new(FiniteSpace::from_labels(&["a", "b", "m"], &[("a", "m"), ("b", "m")]).unwrap());
        let g = MonotoneMap::new(x.clone(), s.clone(), vec![0, 1, 2]).unwrap();
        let c = MonotoneMap::constant(&x, &s, 0).unwrap();
        let fence = homotopic(&g, &c, &lim()).unwrap().unwrap();
        assert!(verify_fence_between(&fence, &g, &c));
        let chain = fence_to_chain(&fence).unwrap();
        assert!(verify_chain(&chain).ok);
        assert!(verify_chain_between(&chain, &k_map(&g).unwrap(), &k_map(&c).unwrap()));
    }
}
