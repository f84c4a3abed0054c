use std::sync::Arc;

use super::{compose, core, same_contiguity_class, ContiguityChain, SimplicialMap};
use crate::error::{Error, Result};
use crate::limits::SearchLimits;
use crate::scomplex::{are_isomorphic, IsoWitness, SimplicialComplex};

/// Whether the cores of `k` and `l` are isomorphic.
pub fn same_strong_homotopy_type(
    k: &Arc<SimplicialComplex>,
    l: &Arc<SimplicialComplex>,
    limits: &SearchLimits,
) -> Result<bool> {
    let ck = core(k)?;
    let cl = core(l)?;
    Ok(are_isomorphic(&ck.core, &cl.core, limits)?.is_some())
}

/// A strong homotopy inverse with both certifying chains.
#[derive(Debug, Clone)]
pub struct StrongEquivalence {
    pub g: SimplicialMap,
    /// `g ∘ f ~ id_K`.
    pub gf_chain: ContiguityChain,
    /// `f ∘ g ~ id_L`.
    pub fg_chain: ContiguityChain,
}

/// Looks for `g` with `g ∘ f ~ id` and `f ∘ g ~ id`.
///
/// Between complexes without dominated vertices a map in the class of the
/// identity is the identity, so `f` is a strong equivalence exactly when
/// `r_L ∘ f ∘ i_K` is an isomorphism of cores. The candidate inverse is that
/// isomorphism's inverse pushed back through the collapses. `Ok(None)` is
/// therefore definitive.
pub fn strong_equivalence_inverse(f: &SimplicialMap, limits: &SearchLimits) -> Result<Option<StrongEquivalence>> {
    let k = f.domain();
    let l = f.codomain();
    let ck = core(k)?;
    let cl = core(l)?;
    let squeezed = compose(&cl.retraction, &compose(f, &ck.inclusion)?)?;
    let candidate = IsoWitness { bijection: squeezed.assignment().to_vec() };
    if !candidate.verify(&ck.core, &cl.core) {
        return Ok(None);
    }
    let mut inverse = vec![0; candidate.bijection.len()];
    for (v, &w) in candidate.bijection.iter().enumerate() {
        inverse[w] = v;
    }
    let h = SimplicialMap::new(Arc::clone(&cl.core), Arc::clone(&ck.core), inverse)?;
    let g = compose(&ck.inclusion, &compose(&h, &cl.retraction)?)?;
    let gf = compose(&g, f)?;
    let fg = compose(f, &g)?;
    let found = (
        same_contiguity_class(&gf, &SimplicialMap::identity(k), limits)?,
        same_contiguity_class(&fg, &SimplicialMap::identity(l), limits)?,
    );
    match found {
        (Some(gf_chain), Some(fg_chain)) => Ok(Some(StrongEquivalence { g, gf_chain, fg_chain })),
        _ => Err(Error::BadParameter("core isomorphism did not lift to an inverse".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contiguity::verify_chain_between;
    use crate::scomplex::{standard_complex, Family};

    fn std(f: Family, n: usize) -> Arc<SimplicialComplex> {
        Arc::new(standard_complex(f, n).unwrap())
    }

    #[test]
    fn strong_types() {
        let lim = SearchLimits::default();
        let c4 = std(Family::Cycle, 4);
        let cone = Arc::new(c4.cone().unwrap());
        assert!(!same_strong_homotopy_type(&c4, &cone, &lim).unwrap());
        assert!(same_strong_homotopy_type(&std(Family::Simplex, 3), &std(Family::Simplex, 1), &lim).unwrap());
        assert!(!same_strong_homotopy_type(&c4, &std(Family::Cycle, 5), &lim).unwrap());
    }

    #[test]
    fn identity_inverts_itself() {
        let k = std(Family::Cycle, 5);
        let id = SimplicialMap::identity(&k);
        let e = strong_equivalence_inverse(&id, &SearchLimits::default()).unwrap().unwrap();
        assert_eq!(e.g, id);
    }

    #[test]
    fn inclusion_into_cone_of_collapsible() {
        let k = std(Family::Path, 3);
        let cone = Arc::new(k.cone().unwrap());
        let f = SimplicialMap::new(k.clone(), cone.clone(), vec![0, 1, 2]).unwrap();
        let e = strong_equivalence_inverse(&f, &SearchLimits::default()).unwrap().unwrap();
        let gf = compose(&e.g, &f).unwrap();
        assert!(verify_chain_between(&e.gf_chain, &gf, &SimplicialMap::identity(&k)));
        let fg = compose(&f, &e.g).unwrap();
        assert!(verify_chain_between(&e.fg_chain, &fg, &SimplicialMap::identity(&cone)));
    }

    #[test]
    fn constant_on_cycle_has_no_inverse() {
        let k = std(Family::Cycle, 4);
        let c = SimplicialMap::constant(&k, &k, 0).unwrap();
        assert!(strong_equivalence_inverse(&c, &SearchLimits::default()).unwrap().is_none());
    }
}
