//! Simplicial maps, contiguity and contiguity classes.
//!
//! Two maps `f, g: K -> L` are contiguous when `f(σ) ∪ g(σ)` is a simplex of `L`
//! for every facet `σ` of `K`; the contiguity class is the equivalence closure.
//! Class membership is decided by breadth-first search over the finite space of
//! simplicial maps, after shrinking both complexes to their cores.

mod core;
mod paste;
mod search;
mod strong;

pub use self::core::{core, dominated_vertex, CoreData};
pub use paste::paste_maps;
pub use search::{
    class_partition, contiguity_neighbors, enumerate_maps, is_null_class, null_chain_naive, same_contiguity_class,
    same_contiguity_class_naive, ClassPartition,
};
pub use strong::{same_strong_homotopy_type, strong_equivalence_inverse, StrongEquivalence};

pub(crate) use self::core::reduce;
pub(crate) use search::{path_to_any, shortest_chain};

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scomplex::{categorical_product, Simplex, SimplicialComplex, Subcomplex, VertexId};

/// A vertex assignment carrying simplices to simplices.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    domain: Arc<SimplicialComplex>,
    codomain: Arc<SimplicialComplex>,
    assignment: Vec<VertexId>,
}

impl fmt::Debug for SimplicialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -> {:?} {:?}", self.domain, self.codomain, self.assignment)
    }
}

/// Image of every facet is a simplex; returns the first offending facet otherwise.
pub(crate) fn check_simplicial(
    domain: &SimplicialComplex,
    codomain: &SimplicialComplex,
    assignment: &[VertexId],
) -> Result<()> {
    if assignment.len() != domain.n_vertices() {
        return Err(Error::BadParameter(format!(
            "assignment has {} entries for {} vertices",
            assignment.len(),
            domain.n_vertices()
        )));
    }
    if let Some(&bad) = assignment.iter().find(|&&w| w >= codomain.n_vertices()) {
        return Err(Error::BadParameter(format!("vertex {bad} is not in the codomain")));
    }
    for facet in domain.facets() {
        if !codomain.contains(facet.image(assignment)) {
            return Err(Error::NotSimplicial { simplex: facet.to_vec() });
        }
    }
    Ok(())
}

impl SimplicialMap {
    /// Validates and builds a map.
    pub fn new(
        domain: Arc<SimplicialComplex>,
        codomain: Arc<SimplicialComplex>,
        assignment: Vec<VertexId>,
    ) -> Result<Self> {
        check_simplicial(&domain, &codomain, &assignment)?;
        Ok(SimplicialMap { domain, codomain, assignment })
    }

    pub(crate) fn new_unchecked(
        domain: Arc<SimplicialComplex>,
        codomain: Arc<SimplicialComplex>,
        assignment: Vec<VertexId>,
    ) -> Self {
        debug_assert!(check_simplicial(&domain, &codomain, &assignment).is_ok());
        SimplicialMap { domain, codomain, assignment }
    }

    pub fn identity(k: &Arc<SimplicialComplex>) -> Self {
        SimplicialMap {
            domain: Arc::clone(k),
            codomain: Arc::clone(k),
            assignment: (0..k.n_vertices()).collect(),
        }
    }

    /// The map sending every vertex of `k` to `v`.
    pub fn constant(k: &Arc<SimplicialComplex>, l: &Arc<SimplicialComplex>, v: VertexId) -> Result<Self> {
        if v >= l.n_vertices() {
            return Err(Error::BadParameter(format!("vertex {v} is not in the codomain")));
        }
        Ok(SimplicialMap {
            domain: Arc::clone(k),
            codomain: Arc::clone(l),
            assignment: vec![v; k.n_vertices()],
        })
    }

    pub fn domain(&self) -> &Arc<SimplicialComplex> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<SimplicialComplex> {
        &self.codomain
    }

    pub fn assignment(&self) -> &[VertexId] {
        &self.assignment
    }

    pub fn apply(&self, v: VertexId) -> VertexId {
        self.assignment[v]
    }

    pub fn image(&self, s: Simplex) -> Simplex {
        s.image(&self.assignment)
    }

    /// The value of a constant map.
    pub fn constant_value(&self) -> Option<VertexId> {
        let first = *self.assignment.first()?;
        self.assignment.iter().all(|&w| w == first).then_some(first)
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &SimplicialMap) -> Result<SimplicialMap> {
        compose(self, f)
    }

    /// Restriction to a subcomplex of the domain, as a map out of the standalone part.
    pub fn restrict(&self, part: &Subcomplex) -> Result<Restriction> {
        if !same_complex(part.parent(), &self.domain) {
            return Err(Error::DomainMismatch("subcomplex is not in the map's domain"));
        }
        let (complex, embedding) = part.standalone()?;
        let assignment = embedding.iter().map(|&v| self.assignment[v]).collect();
        Ok(Restriction {
            part: part.clone(),
            map: SimplicialMap::new_unchecked(Arc::new(complex), Arc::clone(&self.codomain), assignment),
            embedding,
        })
    }

    /// The inclusion of a subcomplex into its parent.
    pub fn inclusion(part: &Subcomplex) -> Result<Restriction> {
        SimplicialMap::identity(part.parent()).restrict(part)
    }
}

pub(crate) fn same_complex(a: &Arc<SimplicialComplex>, b: &Arc<SimplicialComplex>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// `g ∘ f`.
pub fn compose(g: &SimplicialMap, f: &SimplicialMap) -> Result<SimplicialMap> {
    if !same_complex(&f.codomain, &g.domain) {
        return Err(Error::DomainMismatch("codomain of f is not the domain of g"));
    }
    Ok(SimplicialMap {
        domain: Arc::clone(&f.domain),
        codomain: Arc::clone(&g.codomain),
        assignment: f.assignment.iter().map(|&v| g.assignment[v]).collect(),
    })
}

/// A map restricted to a subcomplex, with the standalone part's embedding.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub part: Subcomplex,
    /// Map out of the standalone copy of `part`.
    pub map: SimplicialMap,
    /// Standalone vertex id -> parent vertex id.
    pub embedding: Vec<VertexId>,
}

/// Whether `f` and `g` are contiguous (checked on facets, which suffices).
pub fn is_contiguous(f: &SimplicialMap, g: &SimplicialMap) -> Result<bool> {
    if !same_complex(&f.domain, &g.domain) || !same_complex(&f.codomain, &g.codomain) {
        return Err(Error::DomainMismatch("contiguity needs equal domains and codomains"));
    }
    Ok(contiguous_assignments(&f.domain, &f.codomain, &f.assignment, &g.assignment))
}

pub(crate) fn contiguous_assignments(
    domain: &SimplicialComplex,
    codomain: &SimplicialComplex,
    f: &[VertexId],
    g: &[VertexId],
) -> bool {
    domain
        .facets()
        .iter()
        .all(|s| codomain.contains(s.image(f).union(s.image(g))))
}

/// A sequence of maps `K -> L` with consecutive members contiguous.
#[derive(Clone, PartialEq, Eq)]
pub struct ContiguityChain {
    domain: Arc<SimplicialComplex>,
    codomain: Arc<SimplicialComplex>,
    maps: Vec<Vec<VertexId>>,
}

impl fmt::Debug for ContiguityChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ContiguityChain").field("maps", &self.maps).finish()
    }
}

impl ContiguityChain {
    pub fn trivial(f: &SimplicialMap) -> Self {
        ContiguityChain {
            domain: Arc::clone(&f.domain),
            codomain: Arc::clone(&f.codomain),
            maps: vec![f.assignment.clone()],
        }
    }

    /// Wraps raw assignments; nothing is checked until [`verify_chain`].
    pub fn from_assignments(
        domain: Arc<SimplicialComplex>,
        codomain: Arc<SimplicialComplex>,
        maps: Vec<Vec<VertexId>>,
    ) -> Self {
        ContiguityChain { domain, codomain, maps }
    }

    pub fn domain(&self) -> &Arc<SimplicialComplex> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<SimplicialComplex> {
        &self.codomain
    }

    pub fn assignments(&self) -> &[Vec<VertexId>] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn map_at(&self, i: usize) -> SimplicialMap {
        SimplicialMap {
            domain: Arc::clone(&self.domain),
            codomain: Arc::clone(&self.codomain),
            assignment: self.maps[i].clone(),
        }
    }

    pub fn first(&self) -> SimplicialMap {
        self.map_at(0)
    }

    pub fn last(&self) -> SimplicialMap {
        self.map_at(self.maps.len() - 1)
    }

    pub fn reversed(&self) -> Self {
        let mut maps = self.maps.clone();
        maps.reverse();
        ContiguityChain { maps, ..self.clone() }
    }

    /// `h ∘ f_i` for every member; stays a chain because `h` preserves simplices.
    pub fn post_compose(&self, h: &SimplicialMap) -> Result<Self> {
        if !same_complex(&self.codomain, &h.domain) {
            return Err(Error::DomainMismatch("post-composition"));
        }
        let maps = self
            .maps
            .iter()
            .map(|m| m.iter().map(|&v| h.assignment[v]).collect())
            .collect();
        Ok(ContiguityChain {
            domain: Arc::clone(&self.domain),
            codomain: Arc::clone(&h.codomain),
            maps,
        }
        .deduped())
    }

    /// `f_i ∘ k` for every member.
    pub fn pre_compose(&self, k: &SimplicialMap) -> Result<Self> {
        if !same_complex(&k.codomain, &self.domain) {
            return Err(Error::DomainMismatch("pre-composition"));
        }
        let maps = self
            .maps
            .iter()
            .map(|m| k.assignment.iter().map(|&v| m[v]).collect())
            .collect();
        Ok(ContiguityChain {
            domain: Arc::clone(&k.domain),
            codomain: Arc::clone(&self.codomain),
            maps,
        }
        .deduped())
    }

    /// Concatenation; the last map of `self` must equal the first of `next`.
    pub fn then(mut self, next: &ContiguityChain) -> Result<Self> {
        if self.maps.last() != next.maps.first() {
            return Err(Error::DomainMismatch("chains do not meet"));
        }
        self.maps.extend(next.maps.iter().skip(1).cloned());
        Ok(self.deduped())
    }

    fn deduped(mut self) -> Self {
        self.maps.dedup();
        self
    }
}

/// Outcome of an independent chain check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainCheck {
    pub ok: bool,
    /// Index of the first map that is invalid or not contiguous to its predecessor.
    pub first_failure: Option<usize>,
}

/// Re-checks every map and every consecutive contiguity. Uses no search.
pub fn verify_chain(chain: &ContiguityChain) -> ChainCheck {
    let fail = |i| ChainCheck { ok: false, first_failure: Some(i) };
    if chain.maps.is_empty() {
        return fail(0);
    }
    for (i, m) in chain.maps.iter().enumerate() {
        if check_simplicial(&chain.domain, &chain.codomain, m).is_err() {
            return fail(i);
        }
        if i > 0 && !contiguous_assignments(&chain.domain, &chain.codomain, &chain.maps[i - 1], m) {
            return fail(i);
        }
    }
    ChainCheck { ok: true, first_failure: None }
}

/// `verify_chain` plus the claimed endpoints.
pub fn verify_chain_between(chain: &ContiguityChain, from: &SimplicialMap, to: &SimplicialMap) -> bool {
    verify_chain(chain).ok
        && same_complex(&chain.domain, &from.domain)
        && same_complex(&chain.codomain, &from.codomain)
        && chain.maps.first() == Some(&from.assignment)
        && chain.maps.last() == Some(&to.assignment)
}

/// Whether the chain ends at some constant map.
pub fn verify_null_chain(chain: &ContiguityChain, from: &SimplicialMap) -> bool {
    verify_chain(chain).ok
        && same_complex(&chain.domain, &from.domain)
        && same_complex(&chain.codomain, &from.codomain)
        && chain.maps.first() == Some(&from.assignment)
        && chain.last().constant_value().is_some()
}

/// A categorical product together with its factors.
#[derive(Debug, Clone)]
pub struct Product {
    pub complex: Arc<SimplicialComplex>,
    pub left: Arc<SimplicialComplex>,
    pub right: Arc<SimplicialComplex>,
}

impl Product {
    pub fn new(left: &Arc<SimplicialComplex>, right: &Arc<SimplicialComplex>) -> Result<Self> {
        Ok(Product {
            complex: Arc::new(categorical_product(left, right)?),
            left: Arc::clone(left),
            right: Arc::clone(right),
        })
    }

    pub fn pair(&self, x: VertexId, y: VertexId) -> VertexId {
        x * self.right.n_vertices() + y
    }

    pub fn unpair(&self, v: VertexId) -> (VertexId, VertexId) {
        (v / self.right.n_vertices(), v % self.right.n_vertices())
    }

    pub fn p1(&self) -> SimplicialMap {
        let a = (0..self.complex.n_vertices()).map(|v| self.unpair(v).0).collect();
        SimplicialMap::new_unchecked(Arc::clone(&self.complex), Arc::clone(&self.left), a)
    }

    pub fn p2(&self) -> SimplicialMap {
        let a = (0..self.complex.n_vertices()).map(|v| self.unpair(v).1).collect();
        SimplicialMap::new_unchecked(Arc::clone(&self.complex), Arc::clone(&self.right), a)
    }

    /// `x ↦ (x, y0)`.
    pub fn slice_left(&self, y0: VertexId) -> SimplicialMap {
        let a = (0..self.left.n_vertices()).map(|x| self.pair(x, y0)).collect();
        SimplicialMap::new_unchecked(Arc::clone(&self.left), Arc::clone(&self.complex), a)
    }
}

/// The diagonal `K -> K × K`.
pub fn diagonal(k: &Arc<SimplicialComplex>) -> Result<(Product, SimplicialMap)> {
    let p = Product::new(k, k)?;
    let a = (0..k.n_vertices()).map(|x| p.pair(x, x)).collect();
    let d = SimplicialMap::new(Arc::clone(k), Arc::clone(&p.complex), a)?;
    Ok((p, d))
}

/// `f × g : K × L -> M × N`.
pub fn product_map(f: &SimplicialMap, g: &SimplicialMap) -> Result<(Product, Product, SimplicialMap)> {
    let src = Product::new(&f.domain, &g.domain)?;
    let dst = Product::new(&f.codomain, &g.codomain)?;
    let a = (0..src.complex.n_vertices())
        .map(|v| {
            let (x, y) = src.unpair(v);
            dst.pair(f.assignment[x], g.assignment[y])
        })
        .collect();
    let m = SimplicialMap::new(Arc::clone(&src.complex), Arc::clone(&dst.complex), a)?;
    Ok((src, dst, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scomplex::{standard_complex, Family};

    fn c4() -> Arc<SimplicialComplex> {
        Arc::new(standard_complex(Family::Cycle, 4).unwrap())
    }

    #[test]
    fn validate_map_examples() {
        let k = c4();
        assert!(SimplicialMap::new(k.clone(), k.clone(), vec![0, 1, 2, 3]).is_ok());
        let edge = Arc::new(standard_complex(Family::Simplex, 1).unwrap());
        // a,c -> a and b,d -> b
        assert!(SimplicialMap::new(k.clone(), edge, vec![0, 1, 0, 1]).is_ok());
        // a->a, b->b, c->a, d->c: cd and da both land on {a, c}; the first facet in order is named
        let err = SimplicialMap::new(k.clone(), k.clone(), vec![0, 1, 0, 2]).unwrap_err();
        assert_eq!(err, Error::NotSimplicial { simplex: vec![0, 3] });
        let two_edges = SimplicialComplex::from_facets(&[vec![0, 1], vec![2, 3]]).unwrap();
        let err = check_simplicial(&two_edges, &k, &[0, 1, 0, 2]).unwrap_err();
        assert_eq!(err, Error::NotSimplicial { simplex: vec![2, 3] });
    }

    #[test]
    fn composition_and_constants() {
        let k = c4();
        let f = SimplicialMap::new(k.clone(), k.clone(), vec![1, 2, 3, 0]).unwrap();
        let c = SimplicialMap::constant(&k, &k, 2).unwrap();
        assert_eq!(compose(&c, &f).unwrap(), c);
        let ff = compose(&f, &f).unwrap();
        assert_eq!(ff.assignment(), &[2, 3, 0, 1]);
        let edge = Arc::new(standard_complex(Family::Simplex, 1).unwrap());
        let h = SimplicialMap::constant(&edge, &edge, 0).unwrap();
        assert!(matches!(compose(&h, &f), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn restriction_of_identity_is_inclusion() {
        let k = c4();
        let part = Subcomplex::from_facet_indices(&k, &[0, 1]);
        let r = SimplicialMap::identity(&k).restrict(&part).unwrap();
        assert_eq!(r.map.assignment(), r.embedding.as_slice());
        assert_eq!(r.map.domain().n_facets(), 2);
    }

    #[test]
    fn contiguity_examples() {
        let k = c4();
        let f = SimplicialMap::identity(&k);
        assert!(is_contiguous(&f, &f).unwrap());
        let a = SimplicialMap::constant(&k, &k, 0).unwrap();
        let b = SimplicialMap::constant(&k, &k, 1).unwrap();
        let c = SimplicialMap::constant(&k, &k, 2).unwrap();
        assert!(is_contiguous(&a, &b).unwrap());
        assert!(!is_contiguous(&a, &c).unwrap());
    }

    #[test]
    fn corrupted_chain_fails_at_index() {
        let k = c4();
        let chain = ContiguityChain::from_assignments(
            k.clone(),
            k.clone(),
            vec![vec![0; 4], vec![1; 4], vec![3; 4]],
        );
        assert_eq!(verify_chain(&chain), ChainCheck { ok: false, first_failure: Some(2) });
        let ok = ContiguityChain::trivial(&SimplicialMap::identity(&k));
        assert!(verify_chain(&ok).ok);
    }

    #[test]
    fn product_projections_and_diagonal() {
        let k = c4();
        let (p, d) = diagonal(&k).unwrap();
        assert_eq!(compose(&p.p1(), &d).unwrap(), SimplicialMap::identity(&k));
        assert_eq!(compose(&p.p2(), &d).unwrap(), SimplicialMap::identity(&k));
        for facet in p.complex.facets() {
            assert!(k.facets().contains(&p.p1().image(*facet)));
        }
    }
}
