//! Finite abstract simplicial complexes stored by their facets.
//!
//! A [`Simplex`] is a bitmask over at most [`MAX_VERTICES`] vertex ids. Every
//! complex keeps its facets as a sorted antichain; the full simplex set is only
//! materialised on demand (and cached).

mod corpus;
mod iso;
mod standard;

pub use corpus::{enumerate_corpus, Corpus, CORPUS_HARD_CAP};
pub use iso::{are_isomorphic, IsoWitness};
pub use standard::{standard_complex, Family};

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::limits::SearchLimits;

/// Dense vertex index inside one complex.
pub type VertexId = usize;

/// Largest vertex count a single complex may have.
pub const MAX_VERTICES: usize = 64;

/// Complexes with at most this many vertices get an O(1) simplex membership table.
const TABLE_VERTICES: usize = 16;

/// A set of vertices, stored as a bitmask.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Default)]
pub struct Simplex(u64);

impl Simplex {
    pub const EMPTY: Simplex = Simplex(0);

    pub fn from_bits(bits: u64) -> Self {
        Simplex(bits)
    }

    pub fn singleton(v: VertexId) -> Self {
        debug_assert!(v < MAX_VERTICES);
        Simplex(1 << v)
    }

    /// Builds a simplex from vertex ids; fails on ids outside the supported range.
    pub fn from_vertices<I: IntoIterator<Item = VertexId>>(vertices: I) -> Result<Self> {
        let mut bits = 0u64;
        for v in vertices {
            if v >= MAX_VERTICES {
                return Err(Error::limit("vertex id", MAX_VERTICES));
            }
            bits |= 1 << v;
        }
        Ok(Simplex(bits))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: VertexId) -> bool {
        v < MAX_VERTICES && self.0 & (1 << v) != 0
    }

    pub fn is_face_of(self, other: Simplex) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Simplex) -> Simplex {
        Simplex(self.0 | other.0)
    }

    pub fn intersection(self, other: Simplex) -> Simplex {
        Simplex(self.0 & other.0)
    }

    pub fn with(self, v: VertexId) -> Simplex {
        Simplex(self.0 | (1 << v))
    }

    pub fn without(self, v: VertexId) -> Simplex {
        Simplex(self.0 & !(1 << v))
    }

    /// Least vertex of a non-empty simplex.
    pub fn min_vertex(self) -> Option<VertexId> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn max_vertex(self) -> Option<VertexId> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// Vertices in increasing order.
    pub fn vertices(self) -> Vertices {
        Vertices(self.0)
    }

    pub fn to_vec(self) -> Vec<VertexId> {
        self.vertices().collect()
    }

    /// Image of the simplex under a vertex assignment.
    pub fn image(self, assignment: &[VertexId]) -> Simplex {
        let mut out = 0u64;
        for v in self.vertices() {
            out |= 1 << assignment[v];
        }
        Simplex(out)
    }

    /// All non-empty subsets, in increasing bitmask order.
    pub fn faces(self) -> impl Iterator<Item = Simplex> {
        let full = self.0;
        let mut sub = 0u64;
        let mut done = full == 0;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            // standard "next submask" walk
            sub = sub.wrapping_sub(full) & full;
            if sub == 0 {
                done = true;
                return None;
            }
            Some(Simplex(sub))
        })
    }
}

pub struct Vertices(u64);

impl Iterator for Vertices {
    type Item = VertexId;

    fn next(&mut self) -> Option<VertexId> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Vertices {}

/// Lexicographic order on sorted vertex lists (so `{0} < {0,1} < {1}`).
impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut a, mut b) = (self.0, other.0);
        loop {
            if a == b {
                return Ordering::Equal;
            }
            if a == 0 {
                return Ordering::Less;
            }
            if b == 0 {
                return Ordering::Greater;
            }
            let (la, lb) = (a.trailing_zeros(), b.trailing_zeros());
            if la != lb {
                return la.cmp(&lb);
            }
            a &= a - 1;
            b &= b - 1;
        }
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.vertices()).finish()
    }
}

/// Default label for vertex `i`: `a`..`z`, then `v26`, `v27`, ...
pub fn default_label(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("v{i}")
    }
}

/// A finite abstract simplicial complex, stored by its facets.
pub struct SimplicialComplex {
    labels: Vec<String>,
    facets: Vec<Simplex>,
    connected: bool,
    simplices: OnceLock<Vec<Simplex>>,
    table: OnceLock<Vec<u64>>,
}

impl Clone for SimplicialComplex {
    fn clone(&self) -> Self {
        SimplicialComplex {
            labels: self.labels.clone(),
            facets: self.facets.clone(),
            connected: self.connected,
            simplices: self.simplices.clone(),
            table: self.table.clone(),
        }
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, facet) in self.facets.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            for v in facet.vertices() {
                write!(f, "{}", self.labels[v])?;
            }
        }
        write!(f, "⟩")
    }
}

impl SimplicialComplex {
    /// Builds a complex from labelled facets; vertices are numbered in sorted label order.
    pub fn build<S: AsRef<str>>(facets: &[Vec<S>]) -> Result<Self> {
        let labels: BTreeSet<&str> = facets.iter().flatten().map(|s| s.as_ref()).collect();
        let labels: Vec<String> = labels.into_iter().map(str::to_owned).collect();
        let index: HashMap<&str, VertexId> =
            labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let ids: Vec<Vec<VertexId>> = facets
            .iter()
            .map(|f| f.iter().map(|s| index[s.as_ref()]).collect())
            .collect();
        Self::with_labels(labels, &ids)
    }

    /// Builds a complex from facets over numeric ids, with default labels.
    /// Unused ids are dropped and the rest renumbered densely.
    pub fn from_facets(facets: &[Vec<VertexId>]) -> Result<Self> {
        let n = facets.iter().flatten().map(|&v| v + 1).max().unwrap_or(0);
        let labels = (0..n).map(default_label).collect();
        Self::with_labels(labels, facets)
    }

    /// Builds a complex with an explicit vertex order and labels.
    pub fn with_labels(labels: Vec<String>, facets: &[Vec<VertexId>]) -> Result<Self> {
        if facets.is_empty() {
            return Err(Error::EmptyInput("facet list"));
        }
        let mut simplices = Vec::with_capacity(facets.len());
        for facet in facets {
            if facet.is_empty() {
                return Err(Error::EmptyInput("facet"));
            }
            if let Some(&bad) = facet.iter().find(|&&v| v >= labels.len()) {
                return Err(Error::BadParameter(format!("vertex {bad} has no label")));
            }
            simplices.push(Simplex::from_vertices(facet.iter().copied())?);
        }
        Self::normalize(labels, simplices)
    }

    /// Normalizes arbitrary generators: keeps maximal sets, densifies ids.
    pub(crate) fn normalize(labels: Vec<String>, generators: Vec<Simplex>) -> Result<Self> {
        let facets = maximal(generators);
        if facets.is_empty() {
            return Err(Error::EmptyInput("facet list"));
        }
        let used = facets.iter().fold(0u64, |acc, f| acc | f.bits());
        let n_used = used.count_ones() as usize;
        let (labels, facets) = if n_used == labels.len() {
            (labels, facets)
        } else {
            let mut remap = vec![usize::MAX; labels.len()];
            let mut new_labels = Vec::with_capacity(n_used);
            for v in Simplex(used).vertices() {
                remap[v] = new_labels.len();
                new_labels.push(labels[v].clone());
            }
            let facets = facets.into_iter().map(|f| f.image(&remap)).collect();
            (new_labels, maximal(facets))
        };
        {
            let mut seen = BTreeSet::new();
            if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
                return Err(Error::BadParameter(format!("duplicate vertex label {dup:?}")));
            }
        }
        let connected = components(labels.len(), &facets) == 1;
        Ok(SimplicialComplex {
            labels,
            facets,
            connected,
            simplices: OnceLock::new(),
            table: OnceLock::new(),
        })
    }

    /// The one-vertex complex.
    pub fn point() -> Self {
        Self::from_facets(&[vec![0]]).expect("point")
    }

    pub fn n_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn vertex(&self, label: &str) -> Option<VertexId> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn n_facets(&self) -> usize {
        self.facets.len()
    }

    /// Mask of all vertices.
    pub fn vertex_set(&self) -> Simplex {
        if self.labels.len() == 64 {
            Simplex(u64::MAX)
        } else {
            Simplex((1u64 << self.labels.len()) - 1)
        }
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn dimension(&self) -> usize {
        self.facets.iter().map(|f| f.len()).max().unwrap_or(1) - 1
    }

    /// Whether `s` is a (non-empty) simplex of the complex.
    pub fn contains(&self, s: Simplex) -> bool {
        if s.is_empty() || !s.is_face_of(self.vertex_set()) {
            return false;
        }
        if self.labels.len() <= TABLE_VERTICES {
            let table = self.table.get_or_init(|| self.build_table());
            let b = s.bits() as usize;
            return table[b >> 6] >> (b & 63) & 1 == 1;
        }
        self.facets.iter().any(|f| s.is_face_of(*f))
    }

    fn build_table(&self) -> Vec<u64> {
        let size = 1usize << self.labels.len();
        let mut table = vec![0u64; size.div_ceil(64)];
        for f in &self.facets {
            for s in f.faces() {
                let b = s.bits() as usize;
                table[b >> 6] |= 1 << (b & 63);
            }
        }
        table
    }

    /// Facet indices containing `v`.
    pub fn star_facets(&self, v: VertexId) -> impl Iterator<Item = usize> + '_ {
        self.facets
            .iter()
            .enumerate()
            .filter(move |(_, f)| f.contains(v))
            .map(|(i, _)| i)
    }

    /// All simplices, ordered by size then lexicographically.
    pub fn all_simplices(&self, limits: &SearchLimits) -> Result<&[Simplex]> {
        if let Some(s) = self.simplices.get() {
            return Ok(s);
        }
        // inclusion-exclusion free upper bound
        let bound: usize = self
            .facets
            .iter()
            .map(|f| if f.len() >= 63 { usize::MAX } else { (1usize << f.len()) - 1 })
            .fold(0usize, |a, b| a.saturating_add(b));
        if bound > limits.max_simplices {
            let exact = self.count_simplices_bounded(limits.max_simplices);
            if exact.is_none() {
                return Err(Error::limit("simplex count", limits.max_simplices));
            }
        }
        let mut set = BTreeSet::new();
        for f in &self.facets {
            set.extend(f.faces());
        }
        let mut all: Vec<Simplex> = set.into_iter().collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        Ok(self.simplices.get_or_init(|| all))
    }

    fn count_simplices_bounded(&self, cap: usize) -> Option<usize> {
        let mut set = BTreeSet::new();
        for f in &self.facets {
            if f.len() > 40 {
                return None;
            }
            for s in f.faces() {
                set.insert(s);
                if set.len() > cap {
                    return None;
                }
            }
        }
        Some(set.len())
    }

    /// Cone with one fresh apex, which gets the last vertex id.
    pub fn cone(&self) -> Result<SimplicialComplex> {
        let apex = self.labels.len();
        if apex >= MAX_VERTICES {
            return Err(Error::limit("vertex count", MAX_VERTICES));
        }
        let mut labels = self.labels.clone();
        labels.push(fresh_label(&self.labels, "v"));
        let facets = self.facets.iter().map(|f| f.with(apex)).collect();
        Self::normalize(labels, facets)
    }

    /// Renders facets as label lists (sorted labels within each facet).
    pub fn facet_labels(&self) -> Vec<Vec<String>> {
        self.facets
            .iter()
            .map(|f| {
                let mut v: Vec<String> = f.vertices().map(|x| self.labels[x].clone()).collect();
                v.sort();
                v
            })
            .collect()
    }
}

/// Builds a standalone complex from generators over `parent`'s vertex ids.
/// Returns the complex and its embedding (new id -> parent id).
pub(crate) fn standalone(
    parent: &SimplicialComplex,
    generators: Vec<Simplex>,
) -> Result<(SimplicialComplex, Vec<VertexId>)> {
    let used = generators.iter().fold(0u64, |a, g| a | g.bits());
    if used == 0 {
        return Err(Error::EmptyInput("subcomplex"));
    }
    let embedding: Vec<VertexId> = Simplex(used).vertices().collect();
    let mut remap = vec![usize::MAX; parent.n_vertices()];
    for (new, &old) in embedding.iter().enumerate() {
        remap[old] = new;
    }
    let labels = embedding.iter().map(|&v| parent.labels[v].clone()).collect();
    let facets = generators.into_iter().map(|g| g.image(&remap)).collect();
    let complex = SimplicialComplex::normalize(labels, facets)?;
    Ok((complex, embedding))
}

/// Picks `base`, `base'`, `base''`, ... whichever is not already a label.
pub(crate) fn fresh_label(existing: &[String], base: &str) -> String {
    let mut candidate = base.to_owned();
    while existing.contains(&candidate) {
        candidate.push('\'');
    }
    candidate
}

/// Maximal elements of a family of non-empty sets, sorted and deduplicated.
pub(crate) fn maximal(mut sets: Vec<Simplex>) -> Vec<Simplex> {
    sets.retain(|s| !s.is_empty());
    // larger sets first so each candidate only needs checking against kept ones
    sets.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<Simplex> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| s.is_face_of(*k)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

/// Number of connected components of the 1-skeleton.
fn components(n: usize, facets: &[Simplex]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for f in facets {
        if let Some(first) = f.min_vertex() {
            for v in f.vertices().skip(1) {
                let (a, b) = (find(&mut parent, first), find(&mut parent, v));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    (0..n).filter(|&v| find(&mut parent, v) == v).count()
}

/// Categorical product. Vertex `(x, y)` gets id `x * |V(L)| + y` and label `"x·y"`.
///
/// A vertex set is a simplex iff both coordinate projections are simplices, so the
/// facets are exactly the products `σ × τ` of facet pairs.
pub fn categorical_product(k: &SimplicialComplex, l: &SimplicialComplex) -> Result<SimplicialComplex> {
    let (nk, nl) = (k.n_vertices(), l.n_vertices());
    if nk * nl > MAX_VERTICES {
        return Err(Error::limit("product vertex count", MAX_VERTICES));
    }
    let mut labels = Vec::with_capacity(nk * nl);
    for x in 0..nk {
        for y in 0..nl {
            labels.push(format!("{}·{}", k.labels[x], l.labels[y]));
        }
    }
    let mut facets = Vec::with_capacity(k.n_facets() * l.n_facets());
    for s in k.facets() {
        for t in l.facets() {
            let mut bits = 0u64;
            for x in s.vertices() {
                for y in t.vertices() {
                    bits |= 1 << (x * nl + y);
                }
            }
            facets.push(Simplex(bits));
        }
    }
    SimplicialComplex::normalize(labels, facets)
}

/// A subcomplex of a shared parent, stored as the downward closure of its generators.
#[derive(Clone)]
pub struct Subcomplex {
    parent: Arc<SimplicialComplex>,
    generators: Vec<Simplex>,
}

impl fmt::Debug for Subcomplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subcomplex").field("generators", &self.generators).finish()
    }
}

impl PartialEq for Subcomplex {
    fn eq(&self, other: &Self) -> bool {
        self.same_parent(other) && self.generators == other.generators
    }
}

impl Subcomplex {
    /// Downward closure of `gens`; every generator must be a simplex of `parent`.
    pub fn generated<I>(parent: &Arc<SimplicialComplex>, gens: I) -> Result<Self>
    where
        I: IntoIterator<Item = Simplex>,
    {
        let gens: Vec<Simplex> = gens.into_iter().collect();
        if let Some(bad) = gens.iter().find(|g| !parent.contains(**g)) {
            return Err(Error::NotASimplex(bad.to_vec()));
        }
        Ok(Subcomplex { parent: Arc::clone(parent), generators: maximal(gens) })
    }

    /// Closure of the facets with the given indices.
    pub fn from_facet_indices(parent: &Arc<SimplicialComplex>, indices: &[usize]) -> Self {
        let gens = indices.iter().map(|&i| parent.facets()[i]).collect();
        Subcomplex { parent: Arc::clone(parent), generators: maximal(gens) }
    }

    /// Closure of the facets selected by a bitmask of facet indices.
    pub fn from_facet_mask(parent: &Arc<SimplicialComplex>, mask: u64) -> Self {
        let gens = Simplex(mask).vertices().map(|i| parent.facets()[i]).collect();
        Subcomplex { parent: Arc::clone(parent), generators: maximal(gens) }
    }

    pub fn whole(parent: &Arc<SimplicialComplex>) -> Self {
        Subcomplex { parent: Arc::clone(parent), generators: parent.facets().to_vec() }
    }

    pub fn parent(&self) -> &Arc<SimplicialComplex> {
        &self.parent
    }

    /// Maximal simplices of the subcomplex.
    pub fn generators(&self) -> &[Simplex] {
        &self.generators
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, s: Simplex) -> bool {
        !s.is_empty() && self.generators.iter().any(|g| s.is_face_of(*g))
    }

    pub fn vertex_set(&self) -> Simplex {
        Simplex(self.generators.iter().fold(0, |a, g| a | g.bits()))
    }

    pub fn is_subcomplex_of(&self, other: &Subcomplex) -> bool {
        self.generators.iter().all(|g| other.contains(*g))
    }

    /// Indices of parent facets lying in this subcomplex.
    pub fn facet_indices(&self) -> Vec<usize> {
        self.parent
            .facets()
            .iter()
            .enumerate()
            .filter(|(_, f)| self.contains(**f))
            .map(|(i, _)| i)
            .collect()
    }

    fn same_parent(&self, other: &Subcomplex) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) || *self.parent == *other.parent
    }

    pub fn union(&self, other: &Subcomplex) -> Result<Subcomplex> {
        if !self.same_parent(other) {
            return Err(Error::ParentMismatch);
        }
        let gens = self.generators.iter().chain(&other.generators).copied().collect();
        Ok(Subcomplex { parent: Arc::clone(&self.parent), generators: maximal(gens) })
    }

    /// Simplices common to both; generators are the maximal pairwise intersections.
    pub fn intersection(&self, other: &Subcomplex) -> Result<Subcomplex> {
        if !self.same_parent(other) {
            return Err(Error::ParentMismatch);
        }
        let mut gens = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                gens.push(a.intersection(*b));
            }
        }
        Ok(Subcomplex { parent: Arc::clone(&self.parent), generators: maximal(gens) })
    }

    /// All simplices of the subcomplex, in the parent's ordering.
    pub fn all_simplices(&self, limits: &SearchLimits) -> Result<Vec<Simplex>> {
        Ok(self
            .parent
            .all_simplices(limits)?
            .iter()
            .copied()
            .filter(|s| self.contains(*s))
            .collect())
    }

    /// The subcomplex as a complex of its own, plus the embedding into the parent.
    pub fn standalone(&self) -> Result<(SimplicialComplex, Vec<VertexId>)> {
        standalone(&self.parent, self.generators.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(facets: &[&str]) -> SimplicialComplex {
        let f: Vec<Vec<String>> =
            facets.iter().map(|s| s.chars().map(|c| c.to_string()).collect()).collect();
        SimplicialComplex::build(&f).unwrap()
    }

    #[test]
    fn duplicate_facets_are_removed() {
        let k = c(&["ab", "bc", "ab"]);
        assert_eq!(k.facet_labels(), vec![vec!["a", "b"], vec!["b", "c"]]);
    }

    #[test]
    fn faces_are_absorbed_by_cofaces() {
        let k = c(&["abc", "ab"]);
        assert_eq!(k.n_facets(), 1);
        assert_eq!(k.facets()[0].len(), 3);
    }

    #[test]
    fn two_edges_apart_are_disconnected() {
        assert!(!c(&["ab", "cd"]).is_connected());
        assert!(c(&["ab", "bc"]).is_connected());
        assert!(c(&["a"]).is_connected());
    }

    #[test]
    fn empty_inputs_are_rejected() {
        let none: Vec<Vec<String>> = vec![];
        assert_eq!(SimplicialComplex::build(&none), Err(Error::EmptyInput("facet list")));
        assert_eq!(SimplicialComplex::from_facets(&[vec![]]), Err(Error::EmptyInput("facet")));
    }

    #[test]
    fn simplex_counts() {
        let l = SearchLimits::default();
        assert_eq!(c(&["abc"]).all_simplices(&l).unwrap().len(), 7);
        assert_eq!(c(&["ab"]).all_simplices(&l).unwrap().len(), 3);
        assert_eq!(c(&["ab", "bc", "cd", "ad"]).all_simplices(&l).unwrap().len(), 8);
    }

    #[test]
    fn simplex_count_cap() {
        let l = SearchLimits { max_simplices: 5, ..Default::default() };
        assert!(c(&["abc"]).all_simplices(&l).unwrap_err().is_unknown());
    }

    #[test]
    fn cone_adds_apex_to_every_facet() {
        let k = c(&["ab", "bc"]).cone().unwrap();
        assert_eq!(k.n_vertices(), 4);
        assert_eq!(k.label(3), "v");
        assert!(k.facets().iter().all(|f| f.len() == 3 && f.contains(3)));
        let p = c(&["a"]).cone().unwrap();
        assert_eq!(p.facet_labels(), vec![vec!["a", "v"]]);
        let clash = c(&["uv"]).cone().unwrap();
        assert_eq!(clash.label(2), "v'");
    }

    #[test]
    fn product_of_edges_is_a_tetrahedron() {
        let k = categorical_product(&c(&["ab"]), &c(&["cd"])).unwrap();
        assert_eq!(k.n_vertices(), 4);
        assert_eq!(k.n_facets(), 1);
        assert_eq!(k.facets()[0].len(), 4);
        assert_eq!(k.label(1), "a·d");
    }

    #[test]
    fn subcomplex_closure_and_meet() {
        let c4 = Arc::new(c(&["ab", "bc", "cd", "ad"]));
        let ab_bc = Subcomplex::from_facet_indices(&c4, &[0, 2]);
        let bc_cd = Subcomplex::from_facet_indices(&c4, &[2, 3]);
        let meet = ab_bc.intersection(&bc_cd).unwrap();
        let bc = Subcomplex::from_facet_indices(&c4, &[2]);
        assert_eq!(meet, bc);
        assert_eq!(ab_bc.union(&ab_bc).unwrap(), ab_bc);
        assert!(meet.is_subcomplex_of(&ab_bc.union(&bc_cd).unwrap()));

        let two = Arc::new(c(&["abc", "bcd"]));
        let abc = Subcomplex::generated(&two, [two.facets()[0]]).unwrap();
        assert_eq!(abc.all_simplices(&SearchLimits::default()).unwrap().len(), 7);
        let not = Simplex::from_vertices([0, 3]).unwrap();
        assert_eq!(Subcomplex::generated(&two, [not]).unwrap_err(), Error::NotASimplex(vec![0, 3]));
    }

    #[test]
    fn parent_mismatch() {
        let a = Arc::new(c(&["ab"]));
        let b = Arc::new(c(&["abc"]));
        let err = Subcomplex::whole(&a).union(&Subcomplex::whole(&b)).unwrap_err();
        assert_eq!(err, Error::ParentMismatch);
    }

    #[test]
    fn simplex_order_is_lexicographic() {
        let s = |v: &[usize]| Simplex::from_vertices(v.iter().copied()).unwrap();
        assert!(s(&[0]) < s(&[0, 1]));
        assert!(s(&[0, 1]) < s(&[1]));
        assert!(s(&[0, 2]) < s(&[1]));
        assert!(s(&[0, 1, 5]) < s(&[0, 2]));
    }
}
