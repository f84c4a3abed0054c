use std::sync::Arc;

use super::{ContiguityChain, SimplicialMap};
use crate::error::{Error, Result};
use crate::scomplex::{maximal, Simplex, SimplicialComplex, VertexId};

/// Result of exhaustive strong collapse.
#[derive(Debug, Clone)]
pub struct CoreData {
    pub core: Arc<SimplicialComplex>,
    /// `core -> K`.
    pub inclusion: SimplicialMap,
    /// `K -> core`; `retraction ∘ inclusion` is the identity.
    pub retraction: SimplicialMap,
    /// `(dominated, dominating)` pairs in the order they were removed, in `K`'s ids.
    pub removal_order: Vec<(VertexId, VertexId)>,
    /// Chain from `id_K` to `inclusion ∘ retraction`, one step per removal.
    pub idr_chain: ContiguityChain,
}

impl CoreData {
    pub fn is_point(&self) -> bool {
        self.core.n_vertices() == 1
    }
}

/// Least `v` and least `v'` such that every facet containing `v` also contains `v'`.
fn dominated_in(facets: &[Simplex], alive: Simplex) -> Option<(VertexId, VertexId)> {
    for v in alive.vertices() {
        let mut common = alive.without(v);
        for f in facets.iter().filter(|f| f.contains(v)) {
            common = common.intersection(*f);
            if common.is_empty() {
                break;
            }
        }
        if let Some(w) = common.min_vertex() {
            return Some((v, w));
        }
    }
    None
}

/// The lexicographically least dominated pair `(v, v')`, if any.
pub fn dominated_vertex(k: &SimplicialComplex) -> Option<(VertexId, VertexId)> {
    dominated_in(k.facets(), k.vertex_set())
}

/// Strong-collapses `k` to its core. Requires `k` connected.
pub fn core(k: &Arc<SimplicialComplex>) -> Result<CoreData> {
    if !k.is_connected() {
        return Err(Error::DisconnectedComplex);
    }
    Ok(reduce(k))
}

/// Core reduction without the connectivity requirement (used for cover parts).
pub(crate) fn reduce(k: &Arc<SimplicialComplex>) -> CoreData {
    let n = k.n_vertices();
    let mut facets = k.facets().to_vec();
    let mut alive = k.vertex_set();
    let mut retract: Vec<VertexId> = (0..n).collect();
    let mut chain = vec![retract.clone()];
    let mut removal_order = Vec::new();

    while let Some((v, w)) = dominated_in(&facets, alive) {
        alive = alive.without(v);
        facets = maximal(facets.into_iter().map(|f| f.without(v)).collect());
        for r in retract.iter_mut() {
            if *r == v {
                *r = w;
            }
        }
        chain.push(retract.clone());
        removal_order.push((v, w));
    }

    let embedding: Vec<VertexId> = alive.vertices().collect();
    let mut remap = vec![usize::MAX; n];
    for (new, &old) in embedding.iter().enumerate() {
        remap[old] = new;
    }
    let labels = embedding.iter().map(|&v| k.label(v).to_owned()).collect();
    let core_facets = facets.iter().map(|f| f.image(&remap)).collect();
    let core = Arc::new(
        SimplicialComplex::normalize(labels, core_facets).expect("core of a non-empty complex"),
    );
    let inclusion = SimplicialMap::new_unchecked(Arc::clone(&core), Arc::clone(k), embedding);
    let retraction = SimplicialMap::new_unchecked(
        Arc::clone(k),
        Arc::clone(&core),
        retract.iter().map(|&v| remap[v]).collect(),
    );
    CoreData {
        core,
        inclusion,
        retraction,
        removal_order,
        idr_chain: ContiguityChain::from_assignments(Arc::clone(k), Arc::clone(k), chain),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contiguity::{compose, verify_chain};
    use crate::scomplex::{are_isomorphic, standard_complex, Family};
    use crate::SearchLimits;

    fn arc(k: SimplicialComplex) -> Arc<SimplicialComplex> {
        Arc::new(k)
    }

    #[test]
    fn dominated_examples() {
        let tri = standard_complex(Family::Simplex, 2).unwrap();
        assert_eq!(dominated_vertex(&tri), Some((0, 1)));
        let c4 = standard_complex(Family::Cycle, 4).unwrap();
        assert_eq!(dominated_vertex(&c4), None);
        let cone = c4.cone().unwrap();
        let (_, w) = dominated_vertex(&cone).unwrap();
        assert_eq!(w, 4);
    }

    #[test]
    fn simplex_collapses_to_a_point() {
        let k = arc(standard_complex(Family::Simplex, 3).unwrap());
        let c = core(&k).unwrap();
        assert!(c.is_point());
        assert_eq!(c.removal_order.len(), 3);
        assert!(verify_chain(&c.idr_chain).ok);
    }

    #[test]
    fn cycles_are_their_own_cores() {
        let k = arc(standard_complex(Family::Cycle, 5).unwrap());
        let c = core(&k).unwrap();
        assert_eq!(*c.core, *k);
        assert_eq!(c.retraction.assignment(), &[0, 1, 2, 3, 4]);
    }

    #[test]
    fn retraction_after_inclusion_is_identity() {
        let k = arc(SimplicialComplex::from_facets(&[vec![0, 1, 2], vec![2, 3], vec![3, 4], vec![4, 5], vec![5, 2]]).unwrap());
        let c = core(&k).unwrap();
        let ri = compose(&c.retraction, &c.inclusion).unwrap();
        assert_eq!(ri, SimplicialMap::identity(&c.core));
        assert!(verify_chain(&c.idr_chain).ok);
        assert_eq!(c.idr_chain.last(), compose(&c.inclusion, &c.retraction).unwrap());
        let c4 = standard_complex(Family::Cycle, 4).unwrap();
        assert!(are_isomorphic(&c.core, &c4, &SearchLimits::default()).unwrap().is_some());
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let k = arc(SimplicialComplex::from_facets(&[vec![0, 1], vec![2, 3]]).unwrap());
        assert_eq!(core(&k).unwrap_err(), Error::DisconnectedComplex);
    }
}
