//! Simplicial LS category of complexes and maps.
//!
//! Covers are searched over facet-generated subcomplexes: a subcomplex on which
//! `f` is null-contiguous can be replaced by the closure of the facets it
//! contains without losing that property, so the search space is the subset
//! lattice of facets and the good sets form a downward-closed family.

mod factor;
mod goodsets;
mod gscat;
mod setcover;

pub use factor::{build_factorization, verify_factorization, FactorizationWitness};
pub use goodsets::GoodSetFamily;
pub use gscat::{gscat_exact, gscat_upper};
pub use setcover::min_set_cover;

pub(crate) use goodsets::maximal_down_closed;

use std::collections::HashMap;
use std::sync::Arc;

use crate::contiguity::{is_null_class, verify_null_chain, ContiguityChain, SimplicialMap};
use crate::error::{Error, Result};
use crate::limits::SearchLimits;
use crate::scomplex::{Simplex, SimplicialComplex, Subcomplex};

/// Subcomplexes covering a complex, each with its null-contiguity certificate.
#[derive(Debug, Clone)]
pub struct Cover {
    pub parts: Vec<Subcomplex>,
    /// One chain per part, from the part's map to a constant.
    pub chains: Vec<ContiguityChain>,
}

impl Cover {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Facet indices (in the parent) of each part.
    pub fn part_facets(&self) -> Vec<Vec<usize>> {
        self.parts.iter().map(Subcomplex::facet_indices).collect()
    }
}

/// Outcome of re-checking a cover certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverCheck {
    pub ok: bool,
    /// A facet of the covered complex lying in no part.
    pub uncovered_facet: Option<usize>,
    /// A part whose chain does not certify what it should.
    pub bad_part: Option<usize>,
}

impl CoverCheck {
    fn pass() -> Self {
        CoverCheck { ok: true, uncovered_facet: None, bad_part: None }
    }

    fn uncovered(i: usize) -> Self {
        CoverCheck { ok: false, uncovered_facet: Some(i), bad_part: None }
    }

    fn bad(j: usize) -> Self {
        CoverCheck { ok: false, uncovered_facet: None, bad_part: Some(j) }
    }
}

fn covers(parts: &[Subcomplex], targets: &[Simplex]) -> Option<usize> {
    targets.iter().position(|t| !parts.iter().any(|p| p.contains(*t)))
}

/// Checks that `cover` covers the domain of `f` and that `f` restricted to
/// every part is null-contiguous via the given chain.
pub fn verify_map_cover(f: &SimplicialMap, cover: &Cover) -> CoverCheck {
    if cover.parts.len() != cover.chains.len() {
        return CoverCheck::bad(cover.parts.len().min(cover.chains.len()));
    }
    if let Some(i) = covers(&cover.parts, f.domain().facets()) {
        return CoverCheck::uncovered(i);
    }
    for (j, (part, chain)) in cover.parts.iter().zip(&cover.chains).enumerate() {
        let ok = f
            .restrict(part)
            .map(|r| verify_null_chain(chain, &r.map))
            .unwrap_or(false);
        if !ok {
            return CoverCheck::bad(j);
        }
    }
    CoverCheck::pass()
}

/// Checks a cover of `k` by parts each carrying a chain from the part's own
/// identity to a constant.
pub fn verify_collapsible_cover(k: &Arc<SimplicialComplex>, cover: &Cover) -> CoverCheck {
    if cover.parts.len() != cover.chains.len() {
        return CoverCheck::bad(cover.parts.len().min(cover.chains.len()));
    }
    if cover.parts.iter().any(|p| !Arc::ptr_eq(p.parent(), k) && **p.parent() != **k) {
        return CoverCheck::bad(0);
    }
    if let Some(i) = covers(&cover.parts, k.facets()) {
        return CoverCheck::uncovered(i);
    }
    for (j, (part, chain)) in cover.parts.iter().zip(&cover.chains).enumerate() {
        let ok = part
            .standalone()
            .map(|(u, _)| {
                let u = Arc::new(u);
                verify_null_chain(chain, &SimplicialMap::identity(&u)) && **chain.codomain() == *u
            })
            .unwrap_or(false);
        if !ok {
            return CoverCheck::bad(j);
        }
    }
    CoverCheck::pass()
}

/// Checks a cover of the subcomplex `a` by subcomplexes of `k` whose inclusions
/// into `k` are null-contiguous.
pub fn verify_subspace_cover(k: &Arc<SimplicialComplex>, a: &Subcomplex, cover: &Cover) -> CoverCheck {
    if cover.parts.len() != cover.chains.len() {
        return CoverCheck::bad(cover.parts.len().min(cover.chains.len()));
    }
    if let Some(i) = covers(&cover.parts, a.generators()) {
        return CoverCheck::uncovered(i);
    }
    let id = SimplicialMap::identity(k);
    for (j, (part, chain)) in cover.parts.iter().zip(&cover.chains).enumerate() {
        let ok = id.restrict(part).map(|r| verify_null_chain(chain, &r.map)).unwrap_or(false);
        if !ok {
            return CoverCheck::bad(j);
        }
    }
    CoverCheck::pass()
}

/// Chain from `f|U` to a constant, or `None` if `f|U` is not null-contiguous.
pub fn is_categorical_for(f: &SimplicialMap, part: &Subcomplex, limits: &SearchLimits) -> Result<Option<ContiguityChain>> {
    let r = f.restrict(part)?;
    is_null_class(&r.map, limits)
}

/// Memoized good-set search over the generators of some parent subcomplex.
struct GoodSearch<'a> {
    parent: &'a Arc<SimplicialComplex>,
    base: Vec<Simplex>,
    map: &'a SimplicialMap,
    limits: &'a SearchLimits,
    memo: HashMap<u64, Option<ContiguityChain>>,
}

impl GoodSearch<'_> {
    fn part(&self, mask: u64) -> Result<Subcomplex> {
        Subcomplex::generated(self.parent, Simplex::from_bits(mask).vertices().map(|i| self.base[i]))
    }

    fn test(&mut self, mask: u64) -> Result<bool> {
        if let Some(c) = self.memo.get(&mask) {
            return Ok(c.is_some());
        }
        let part = self.part(mask)?;
        let chain = is_categorical_for(self.map, &part, self.limits)?;
        let good = chain.is_some();
        self.memo.insert(mask, chain);
        Ok(good)
    }

    fn family(&mut self) -> Result<GoodSetFamily> {
        let m = self.base.len();
        let (maximal_good, tests) = maximal_down_closed(m, self.limits.max_subsets, |s| self.test(s))?;
        Ok(GoodSetFamily { base: self.base.clone(), maximal_good, tests })
    }

    fn cover(&mut self, family: &GoodSetFamily) -> Result<(usize, Cover)> {
        let (k, sel) = min_set_cover(self.base.len(), &family.maximal_good)
            .ok_or_else(|| Error::BadParameter("good sets do not cover every facet".into()))?;
        let mut parts = Vec::with_capacity(k);
        let mut chains = Vec::with_capacity(k);
        for i in sel {
            let mask = family.maximal_good[i];
            parts.push(self.part(mask)?);
            let chain = self.memo[&mask].clone().expect("maximal good sets were tested good");
            chains.push(chain);
        }
        Ok((k - 1, Cover { parts, chains }))
    }
}

fn require_connected(f: &SimplicialMap) -> Result<()> {
    if !f.domain().is_connected() || !f.codomain().is_connected() {
        return Err(Error::DisconnectedComplex);
    }
    Ok(())
}

/// All maximal facet sets of the domain on which `f` is null-contiguous.
pub fn maximal_good_sets(f: &SimplicialMap, limits: &SearchLimits) -> Result<GoodSetFamily> {
    require_connected(f)?;
    GoodSearch {
        parent: f.domain(),
        base: f.domain().facets().to_vec(),
        map: f,
        limits,
        memo: HashMap::new(),
    }
    .family()
}

/// `scat(f)` with a minimum cover certifying it.
pub fn scat_map(f: &SimplicialMap, limits: &SearchLimits) -> Result<(usize, Cover)> {
    require_connected(f)?;
    let mut search = GoodSearch {
        parent: f.domain(),
        base: f.domain().facets().to_vec(),
        map: f,
        limits,
        memo: HashMap::new(),
    };
    let family = search.family()?;
    search.cover(&family)
}

/// `scat(K)`, computed as `scat(id_K)`.
pub fn scat(k: &Arc<SimplicialComplex>, limits: &SearchLimits) -> Result<(usize, Cover)> {
    scat_map(&SimplicialMap::identity(k), limits)
}

/// Subspace category of `a` in `k`: fewest subcomplexes of `k`, each with
/// null-contiguous inclusion into `k`, covering `a`.
///
/// Each such subcomplex may be shrunk to the closure of the simplices of `a` it
/// contains, so the search runs over sets of generators of `a`.
pub fn subspace_scat(k: &Arc<SimplicialComplex>, a: &Subcomplex, limits: &SearchLimits) -> Result<(usize, Cover)> {
    if !k.is_connected() {
        return Err(Error::DisconnectedComplex);
    }
    if !Arc::ptr_eq(a.parent(), k) && **a.parent() != **k {
        return Err(Error::ParentMismatch);
    }
    if a.is_empty() {
        return Err(Error::EmptyInput("subcomplex"));
    }
    let id = SimplicialMap::identity(k);
    let mut search = GoodSearch {
        parent: k,
        base: a.generators().to_vec(),
        map: &id,
        limits,
        memo: HashMap::new(),
    };
    let family = search.family()?;
    search.cover(&family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scomplex::{standard_complex, Family};

    fn std(f: Family, n: usize) -> Arc<SimplicialComplex> {
        Arc::new(standard_complex(f, n).unwrap())
    }

    fn lim() -> SearchLimits {
        SearchLimits::default()
    }

    #[test]
    fn categorical_parts_of_c4() {
        let k = std(Family::Cycle, 4);
        let id = SimplicialMap::identity(&k);
        for i in 0..4 {
            let one = Subcomplex::from_facet_indices(&k, &[i]);
            assert!(is_categorical_for(&id, &one, &lim()).unwrap().is_some());
        }
        let path = Subcomplex::from_facet_indices(&k, &[0, 1, 2]);
        assert!(is_categorical_for(&id, &path, &lim()).unwrap().is_some());
        assert!(is_categorical_for(&id, &Subcomplex::whole(&k), &lim()).unwrap().is_none());
    }

    #[test]
    fn good_sets_examples() {
        let tri = std(Family::Simplex, 2);
        let fam = maximal_good_sets(&SimplicialMap::identity(&tri), &lim()).unwrap();
        assert_eq!(fam.maximal_good, vec![1]);
        let k = std(Family::Cycle, 4);
        let fam = maximal_good_sets(&SimplicialMap::identity(&k), &lim()).unwrap();
        assert_eq!(fam.maximal_good, vec![0b0111, 0b1011, 0b1101, 0b1110]);
        let c = SimplicialMap::constant(&k, &k, 2).unwrap();
        assert_eq!(maximal_good_sets(&c, &lim()).unwrap().maximal_good, vec![0b1111]);
    }

    #[test]
    fn scat_values() {
        for n in 0..=3 {
            assert_eq!(scat(&std(Family::Simplex, n), &lim()).unwrap().0, 0);
        }
        for n in 3..=8 {
            let k = std(Family::Cycle, n);
            let (v, cover) = scat(&k, &lim()).unwrap();
            assert_eq!(v, 1, "C{n}");
            assert!(verify_map_cover(&SimplicialMap::identity(&k), &cover).ok);
        }
        assert_eq!(scat(&std(Family::BoundaryOfSimplex, 2), &lim()).unwrap().0, 1);
        assert_eq!(scat(&std(Family::BoundaryOfSimplex, 3), &lim()).unwrap().0, 1);
        let cone = Arc::new(std(Family::Cycle, 3).cone().unwrap());
        assert_eq!(scat(&cone, &lim()).unwrap().0, 0);
    }

    #[test]
    fn scat_of_maps() {
        let k = std(Family::Cycle, 6);
        let c = SimplicialMap::constant(&k, &k, 4).unwrap();
        assert_eq!(scat_map(&c, &lim()).unwrap().0, 0);
        let rot = SimplicialMap::new(k.clone(), k.clone(), vec![3, 4, 5, 0, 1, 2]).unwrap();
        let (v, cover) = scat_map(&rot, &lim()).unwrap();
        assert_eq!(v, 1);
        assert!(verify_map_cover(&rot, &cover).ok);
    }

    #[test]
    fn subspace_examples() {
        let k = std(Family::Cycle, 4);
        assert_eq!(subspace_scat(&k, &Subcomplex::whole(&k), &lim()).unwrap().0, 1);
        let one = Subcomplex::from_facet_indices(&k, &[0]);
        assert_eq!(subspace_scat(&k, &one, &lim()).unwrap().0, 0);
        // ab and cd lie together in the path ab, bc, cd
        let opposite = Subcomplex::from_facet_indices(&k, &[0, 3]);
        let (v, cover) = subspace_scat(&k, &opposite, &lim()).unwrap();
        assert_eq!(v, 0);
        assert!(verify_subspace_cover(&k, &opposite, &cover).ok);
    }

    #[test]
    fn tampered_cover_is_rejected() {
        let k = std(Family::Cycle, 4);
        let (_, mut cover) = scat(&k, &lim()).unwrap();
        cover.parts.pop();
        cover.chains.pop();
        let check = verify_map_cover(&SimplicialMap::identity(&k), &cover);
        assert!(!check.ok);
        assert!(check.uncovered_facet.is_some());
    }
}
