use std::collections::{HashMap, VecDeque};
use std::hash::Hash;
use std::sync::Arc;

use super::{compose, reduce, same_complex, ContiguityChain, SimplicialMap};
use crate::error::{Error, Result};
use crate::limits::{Fault, SearchLimits};
use crate::scomplex::{Simplex, SimplicialComplex, VertexId};

/// Shortest path from `from` to `to` in an undirected implicit graph.
///
/// Breadth-first from `to` until the level holding `from` is complete, then a
/// greedy walk from `from` that always steps to the least neighbour one level
/// closer. The result is the lexicographically least shortest path.
/// `neighbors` must return a sorted list and describe a symmetric relation.
pub(crate) fn shortest_chain<S, F>(from: &S, to: &S, max_states: usize, mut neighbors: F) -> Result<Option<Vec<S>>>
where
    S: Clone + Eq + Hash,
    F: FnMut(&S) -> Result<Vec<S>>,
{
    if from == to {
        return Ok(Some(vec![from.clone()]));
    }
    let mut dist: HashMap<S, usize> = HashMap::new();
    dist.insert(to.clone(), 0);
    let mut queue = VecDeque::from([to.clone()]);
    let mut found = None;
    while let Some(s) = queue.pop_front() {
        let d = dist[&s];
        if found.is_some_and(|fd| d >= fd) {
            break;
        }
        for t in neighbors(&s)? {
            if dist.contains_key(&t) {
                continue;
            }
            if dist.len() >= max_states {
                return Err(Error::limit("class search states", max_states));
            }
            if t == *from {
                found = Some(d + 1);
            }
            dist.insert(t.clone(), d + 1);
            queue.push_back(t);
        }
    }
    let Some(mut d) = found else {
        return Ok(None);
    };
    let mut path = vec![from.clone()];
    let mut cur = from.clone();
    while d > 0 {
        let next = neighbors(&cur)?
            .into_iter()
            .find(|t| dist.get(t) == Some(&(d - 1)))
            .expect("breadth-first levels are consistent");
        path.push(next.clone());
        cur = next;
        d -= 1;
    }
    Ok(Some(path))
}

/// Breadth-first path from `from` to the first state satisfying `target`.
///
/// States are expanded in discovery order with sorted neighbour lists, so the
/// result is deterministic. `Ok(None)` means the component of `from` holds no
/// target state.
pub(crate) fn path_to_any<S, F, T>(from: &S, max_states: usize, mut neighbors: F, target: T) -> Result<Option<Vec<S>>>
where
    S: Clone + Eq + Hash,
    F: FnMut(&S) -> Result<Vec<S>>,
    T: Fn(&S) -> bool,
{
    let mut states = vec![from.clone()];
    let mut parent = vec![usize::MAX];
    let mut seen: HashMap<S, usize> = HashMap::from([(from.clone(), 0)]);
    let mut next = 0;
    let mut hit = target(from).then_some(0);
    while hit.is_none() && next < states.len() {
        for t in neighbors(&states[next])? {
            if seen.contains_key(&t) {
                continue;
            }
            if states.len() >= max_states {
                return Err(Error::limit("class search states", max_states));
            }
            seen.insert(t.clone(), states.len());
            let done = target(&t);
            states.push(t);
            parent.push(next);
            if done {
                hit = Some(states.len() - 1);
                break;
            }
        }
        next += 1;
    }
    let Some(mut i) = hit else {
        return Ok(None);
    };
    let mut path = vec![states[i].clone()];
    while parent[i] != usize::MAX {
        i = parent[i];
        path.push(states[i].clone());
    }
    path.reverse();
    Ok(Some(path))
}

/// The finite set of simplicial maps `domain -> codomain` with its contiguity graph.
pub(crate) struct MapSpace {
    domain: Arc<SimplicialComplex>,
    codomain: Arc<SimplicialComplex>,
    limits: SearchLimits,
    /// Facet indices of the domain containing each vertex.
    stars: Vec<Vec<usize>>,
    /// Union of the facets of the codomain through each vertex.
    closed_nbhd: Vec<Simplex>,
}

impl MapSpace {
    pub(crate) fn new(domain: &Arc<SimplicialComplex>, codomain: &Arc<SimplicialComplex>, limits: &SearchLimits) -> Self {
        let stars = (0..domain.n_vertices()).map(|v| domain.star_facets(v).collect()).collect();
        let closed_nbhd = (0..codomain.n_vertices())
            .map(|w| {
                codomain
                    .star_facets(w)
                    .fold(Simplex::EMPTY, |acc, i| acc.union(codomain.facets()[i]))
            })
            .collect();
        MapSpace {
            domain: Arc::clone(domain),
            codomain: Arc::clone(codomain),
            limits: *limits,
            stars,
            closed_nbhd,
        }
    }

    /// Every map contiguous to `h` (including `h`), in lexicographic order.
    pub(crate) fn neighbors(&self, h: &[VertexId]) -> Result<Vec<Vec<VertexId>>> {
        let faulty = self.limits.fault == Fault::VertexwiseContiguity;
        let mut acc: Vec<Simplex> = self
            .domain
            .facets()
            .iter()
            .map(|s| if faulty { Simplex::EMPTY } else { s.image(h) })
            .collect();
        let candidates: Vec<Vec<VertexId>> =
            h.iter().map(|&w| self.closed_nbhd[w].vertices().collect()).collect();
        let mut out = Vec::new();
        let mut current = vec![0; h.len()];
        self.extend(0, &candidates, &mut acc, &mut current, &mut out)?;
        Ok(out)
    }

    /// All simplicial maps, in lexicographic order.
    pub(crate) fn all_maps(&self) -> Result<Vec<Vec<VertexId>>> {
        let n = self.domain.n_vertices();
        let all: Vec<VertexId> = (0..self.codomain.n_vertices()).collect();
        let candidates = vec![all; n];
        let mut acc = vec![Simplex::EMPTY; self.domain.n_facets()];
        let mut out = Vec::new();
        let mut current = vec![0; n];
        self.extend(0, &candidates, &mut acc, &mut current, &mut out)?;
        Ok(out)
    }

    fn extend(
        &self,
        v: usize,
        candidates: &[Vec<VertexId>],
        acc: &mut [Simplex],
        current: &mut [VertexId],
        out: &mut Vec<Vec<VertexId>>,
    ) -> Result<()> {
        if v == current.len() {
            if out.len() >= self.limits.max_neighbors {
                return Err(Error::limit("maps enumerated from one state", self.limits.max_neighbors));
            }
            out.push(current.to_vec());
            return Ok(());
        }
        'cand: for &w in &candidates[v] {
            for &i in &self.stars[v] {
                if !self.codomain.contains(acc[i].with(w)) {
                    continue 'cand;
                }
            }
            let saved: Vec<Simplex> = self.stars[v].iter().map(|&i| acc[i]).collect();
            for &i in &self.stars[v] {
                acc[i] = acc[i].with(w);
            }
            current[v] = w;
            self.extend(v + 1, candidates, acc, current, out)?;
            for (&i, s) in self.stars[v].iter().zip(saved) {
                acc[i] = s;
            }
        }
        Ok(())
    }

    fn chain(&self, from: &[VertexId], to: &[VertexId]) -> Result<Option<ContiguityChain>> {
        let path = shortest_chain(&from.to_vec(), &to.to_vec(), self.limits.max_states, |h| self.neighbors(h))?;
        Ok(path.map(|maps| {
            ContiguityChain::from_assignments(Arc::clone(&self.domain), Arc::clone(&self.codomain), maps)
        }))
    }
}

/// Every map contiguous to `h`, including `h` itself, in lexicographic order.
pub fn contiguity_neighbors(h: &SimplicialMap, limits: &SearchLimits) -> Result<Vec<SimplicialMap>> {
    let space = MapSpace::new(h.domain(), h.codomain(), limits);
    Ok(space
        .neighbors(h.assignment())?
        .into_iter()
        .map(|a| SimplicialMap::new_unchecked(Arc::clone(h.domain()), Arc::clone(h.codomain()), a))
        .collect())
}

/// All simplicial maps `k -> l` in lexicographic order of assignments.
pub fn enumerate_maps(
    k: &Arc<SimplicialComplex>,
    l: &Arc<SimplicialComplex>,
    limits: &SearchLimits,
) -> Result<Vec<SimplicialMap>> {
    let space = MapSpace::new(k, l, limits);
    Ok(space
        .all_maps()?
        .into_iter()
        .map(|a| SimplicialMap::new_unchecked(Arc::clone(k), Arc::clone(l), a))
        .collect())
}

fn check_pair(f: &SimplicialMap, g: &SimplicialMap) -> Result<()> {
    if !same_complex(f.domain(), g.domain()) || !same_complex(f.codomain(), g.codomain()) {
        return Err(Error::DomainMismatch("maps must share domain and codomain"));
    }
    Ok(())
}

/// Chain `f ~ ... ~ g` found on cores and lifted back.
///
/// With `i`, `r` the core inclusion and retraction, the lifted chain is
/// `f ~ i r f ~ i r f i r ~ i h_j r ~ i r g i r ~ i r g ~ g`, where the outer
/// legs replay the recorded collapse chains and `h_j` is the chain on cores.
pub(crate) fn class_chain(f: &SimplicialMap, g: &SimplicialMap, limits: &SearchLimits) -> Result<Option<ContiguityChain>> {
    if f == g {
        return Ok(Some(ContiguityChain::trivial(f)));
    }
    let ck = reduce(f.domain());
    let cl = reduce(f.codomain());
    let squeeze = |m: &SimplicialMap| -> Result<SimplicialMap> {
        compose(&cl.retraction, &compose(m, &ck.inclusion)?)
    };
    let (fc, gc) = (squeeze(f)?, squeeze(g)?);
    let space = MapSpace::new(&ck.core, &cl.core, limits);
    let Some(core_chain) = space.chain(fc.assignment(), gc.assignment())? else {
        return Ok(None);
    };

    let ir = compose(&cl.inclusion, &cl.retraction)?;
    let leg = |m: &SimplicialMap| -> Result<ContiguityChain> {
        let outer = cl.idr_chain.pre_compose(m)?;
        let inner = ck.idr_chain.post_compose(&compose(&ir, m)?)?;
        outer.then(&inner)
    };
    let middle = core_chain.pre_compose(&ck.retraction)?.post_compose(&cl.inclusion)?;
    let chain = leg(f)?.then(&middle)?.then(&leg(g)?.reversed())?;
    Ok(Some(chain))
}

/// Decides whether `f` and `g` lie in one contiguity class.
///
/// `Ok(None)` is definitive: the whole reachable component was exhausted.
/// Budget exhaustion is `Err(ResourceLimit)`.
pub fn same_contiguity_class(
    f: &SimplicialMap,
    g: &SimplicialMap,
    limits: &SearchLimits,
) -> Result<Option<ContiguityChain>> {
    check_pair(f, g)?;
    if !f.domain().is_connected() || !f.codomain().is_connected() {
        return Err(Error::DisconnectedComplex);
    }
    class_chain(f, g, limits)
}

/// Breadth-first search over the full map space, without core reduction.
pub fn same_contiguity_class_naive(
    f: &SimplicialMap,
    g: &SimplicialMap,
    limits: &SearchLimits,
) -> Result<Option<ContiguityChain>> {
    check_pair(f, g)?;
    MapSpace::new(f.domain(), f.codomain(), limits).chain(f.assignment(), g.assignment())
}

/// Chain from `f` to some constant map, by search over the full map space.
pub fn null_chain_naive(f: &SimplicialMap, limits: &SearchLimits) -> Result<Option<ContiguityChain>> {
    if !f.codomain().is_connected() {
        return Err(Error::DisconnectedComplex);
    }
    let space = MapSpace::new(f.domain(), f.codomain(), limits);
    let constant = |h: &Vec<VertexId>| h.windows(2).all(|w| w[0] == w[1]);
    let path = path_to_any(&f.assignment().to_vec(), limits.max_states, |h| space.neighbors(h), constant)?;
    Ok(path.map(|maps| ContiguityChain::from_assignments(Arc::clone(f.domain()), Arc::clone(f.codomain()), maps)))
}

/// Chain from `f` to the constant map at vertex 0 of the codomain.
pub fn is_null_class(f: &SimplicialMap, limits: &SearchLimits) -> Result<Option<ContiguityChain>> {
    if !f.codomain().is_connected() {
        return Err(Error::DisconnectedComplex);
    }
    let c = SimplicialMap::constant(f.domain(), f.codomain(), 0)?;
    class_chain(f, &c, limits)
}

/// All maps `k -> l` split into contiguity classes.
#[derive(Debug, Clone)]
pub struct ClassPartition {
    /// Every simplicial map, in lexicographic order.
    pub maps: Vec<SimplicialMap>,
    /// Class label per map; labels are numbered by first appearance.
    pub class_of: Vec<usize>,
    pub n_classes: usize,
    index: HashMap<Vec<VertexId>, usize>,
}

impl ClassPartition {
    pub fn index_of(&self, f: &SimplicialMap) -> Option<usize> {
        self.index.get(f.assignment()).copied()
    }

    pub fn class(&self, f: &SimplicialMap) -> Option<usize> {
        self.index_of(f).map(|i| self.class_of[i])
    }

    pub fn same_class(&self, f: &SimplicialMap, g: &SimplicialMap) -> Option<bool> {
        Some(self.class(f)? == self.class(g)?)
    }

    /// Least map of each class, by class label.
    pub fn representatives(&self) -> Vec<&SimplicialMap> {
        let mut reps = vec![None; self.n_classes];
        for (m, &c) in self.maps.iter().zip(&self.class_of) {
            reps[c].get_or_insert(m);
        }
        reps.into_iter().map(|r| r.expect("every class is non-empty")).collect()
    }
}

pub fn class_partition(
    k: &Arc<SimplicialComplex>,
    l: &Arc<SimplicialComplex>,
    limits: &SearchLimits,
) -> Result<ClassPartition> {
    let space = MapSpace::new(k, l, limits);
    let all = space.all_maps()?;
    if all.len() > limits.max_states {
        return Err(Error::limit("maps in one partition", limits.max_states));
    }
    let index: HashMap<Vec<VertexId>, usize> = all.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut class_of = vec![usize::MAX; all.len()];
    let mut n_classes = 0;
    for start in 0..all.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        class_of[start] = n_classes;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for nb in space.neighbors(&all[i])? {
                let j = index[&nb];
                if class_of[j] == usize::MAX {
                    class_of[j] = n_classes;
                    stack.push(j);
                }
            }
        }
        n_classes += 1;
    }
    let maps = all
        .into_iter()
        .map(|a| SimplicialMap::new_unchecked(Arc::clone(k), Arc::clone(l), a))
        .collect();
    Ok(ClassPartition { maps, class_of, n_classes, index })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contiguity::{is_contiguous, verify_chain_between, verify_chain};
    use crate::scomplex::{standard_complex, Family};

    fn std(f: Family, n: usize) -> Arc<SimplicialComplex> {
        Arc::new(standard_complex(f, n).unwrap())
    }

    fn lim() -> SearchLimits {
        SearchLimits::default()
    }

    #[test]
    fn neighbors_match_brute_force_on_an_edge() {
        let e = std(Family::Simplex, 1);
        let h = SimplicialMap::constant(&e, &e, 0).unwrap();
        let got: Vec<Vec<usize>> =
            contiguity_neighbors(&h, &lim()).unwrap().iter().map(|m| m.assignment().to_vec()).collect();
        let mut oracle = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                let m = SimplicialMap::new(e.clone(), e.clone(), vec![a, b]).unwrap();
                if is_contiguous(&h, &m).unwrap() {
                    oracle.push(vec![a, b]);
                }
            }
        }
        assert_eq!(got, oracle);
        assert_eq!(got.len(), 4);
    }

    #[test]
    fn point_identity_has_one_neighbor() {
        let p = Arc::new(SimplicialComplex::point());
        let id = SimplicialMap::identity(&p);
        assert_eq!(contiguity_neighbors(&id, &lim()).unwrap().len(), 1);
    }

    #[test]
    fn neighbors_of_cycle_identity_are_contiguous() {
        let k = std(Family::Cycle, 5);
        let id = SimplicialMap::identity(&k);
        for m in contiguity_neighbors(&id, &lim()).unwrap() {
            assert!(is_contiguous(&id, &m).unwrap());
        }
    }

    #[test]
    fn constants_on_c4_meet_through_b() {
        let k = std(Family::Cycle, 4);
        let a = SimplicialMap::constant(&k, &k, 0).unwrap();
        let c = SimplicialMap::constant(&k, &k, 2).unwrap();
        let chain = same_contiguity_class(&a, &c, &lim()).unwrap().unwrap();
        assert!(verify_chain_between(&chain, &a, &c));
        assert_eq!(chain.assignments(), &[vec![0; 4], vec![1; 4], vec![2; 4]]);
    }

    #[test]
    fn cycle_identity_is_not_null() {
        let k = std(Family::Cycle, 4);
        let id = SimplicialMap::identity(&k);
        assert!(is_null_class(&id, &lim()).unwrap().is_none());
        assert!(same_contiguity_class_naive(&id, &SimplicialMap::constant(&k, &k, 0).unwrap(), &lim())
            .unwrap()
            .is_none());
        let b = std(Family::BoundaryOfSimplex, 2);
        assert!(is_null_class(&SimplicialMap::identity(&b), &lim()).unwrap().is_none());
    }

    #[test]
    fn path_into_cycle_is_null() {
        let k = std(Family::Cycle, 4);
        let p = std(Family::Path, 3);
        let f = SimplicialMap::new(p, k, vec![0, 1, 2]).unwrap();
        let chain = is_null_class(&f, &lim()).unwrap().unwrap();
        assert!(verify_chain(&chain).ok);
        assert_eq!(chain.first(), f);
        assert_eq!(chain.last().constant_value(), Some(0));
    }

    #[test]
    fn lifted_chain_through_nontrivial_cores() {
        let k = Arc::new(SimplicialComplex::from_facets(&[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0], vec![3, 4]]).unwrap());
        let r = SimplicialMap::new(k.clone(), k.clone(), vec![1, 2, 3, 0, 0]).unwrap();
        let id = SimplicialMap::identity(&k);
        assert!(same_contiguity_class(&id, &r, &lim()).unwrap().is_none());
        let s = SimplicialMap::new(k.clone(), k.clone(), vec![0, 1, 2, 3, 3]).unwrap();
        let chain = same_contiguity_class(&id, &s, &lim()).unwrap().unwrap();
        assert!(verify_chain_between(&chain, &id, &s));
    }

    #[test]
    fn partition_of_c4_self_maps() {
        let k = std(Family::Cycle, 4);
        let p = class_partition(&k, &k, &lim()).unwrap();
        let id = SimplicialMap::identity(&k);
        let c = SimplicialMap::constant(&k, &k, 3).unwrap();
        assert_eq!(p.same_class(&id, &c), Some(false));
        assert_eq!(p.class(&c), Some(0));
        assert_eq!(p.representatives().len(), p.n_classes);
    }

    #[test]
    fn budget_is_reported_as_unknown() {
        let k = std(Family::Cycle, 5);
        let id = SimplicialMap::identity(&k);
        let l = SearchLimits::default().with_max_states(3);
        assert!(is_null_class(&id, &l).unwrap_err().is_unknown());
    }
}
