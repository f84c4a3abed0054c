//! Fibers, bounded checks of the contiguity-lifting property, and essential
//! category relative to a finite universe of complexes.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::category::{gscat_exact, gscat_upper, scat, scat_map};
use crate::contiguity::{
    class_partition, compose, contiguity_neighbors, core, enumerate_maps, is_null_class, reduce,
    same_strong_homotopy_type, SimplicialMap,
};
use crate::error::{Error, Result};
use crate::limits::SearchLimits;
use crate::scomplex::{Corpus, Simplex, SimplicialComplex, Subcomplex, VertexId};

/// Subcomplex of `E` spanned by `p⁻¹(b)`.
pub fn fiber(p: &SimplicialMap, b: VertexId) -> Result<Subcomplex> {
    if b >= p.codomain().n_vertices() {
        return Err(Error::BadParameter(format!("vertex {b} is not in the base")));
    }
    let pre = Simplex::from_vertices((0..p.domain().n_vertices()).filter(|&v| p.apply(v) == b))?;
    if pre.is_empty() {
        return Err(Error::EmptyFiber(b));
    }
    let gens: Vec<Simplex> = p
        .domain()
        .facets()
        .iter()
        .map(|f| f.intersection(pre))
        .filter(|s| !s.is_empty())
        .collect();
    Subcomplex::generated(p.domain(), gens)
}

/// Whether all fibers of `p` have isomorphic cores.
pub fn fibers_equivalent(p: &SimplicialMap, limits: &SearchLimits) -> Result<bool> {
    let mut fibers = Vec::with_capacity(p.codomain().n_vertices());
    for b in 0..p.codomain().n_vertices() {
        let (f, _) = fiber(p, b)?.standalone()?;
        if !f.is_connected() {
            return Err(Error::DisconnectedComplex);
        }
        fibers.push(Arc::new(f));
    }
    for f in &fibers[1..] {
        if !same_strong_homotopy_type(&fibers[0], f, limits)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every `f̂ : K -> E` with `p ∘ f̂ = f`, in lexicographic order.
///
/// Vertices are assigned in order, each from `p⁻¹(f(v))`, and every facet of
/// `K` is checked on its assigned part as soon as a vertex is placed.
pub fn lifts(p: &SimplicialMap, f: &SimplicialMap, limits: &SearchLimits) -> Result<Vec<SimplicialMap>> {
    if **p.codomain() != **f.codomain() {
        return Err(Error::DomainMismatch("map does not land in the base"));
    }
    let k = f.domain();
    let e = p.domain();
    let n = k.n_vertices();
    let mut pre: Vec<Vec<VertexId>> = vec![Vec::new(); p.codomain().n_vertices()];
    for v in 0..e.n_vertices() {
        pre[p.apply(v)].push(v);
    }
    // facets of K grouped by their largest vertex
    let mut closing: Vec<Vec<Simplex>> = vec![Vec::new(); n];
    for v in 0..n {
        let upto = Simplex::from_bits((1u64 << (v + 1)) - 1);
        closing[v] = k.facets().iter().filter(|s| s.contains(v)).map(|s| s.intersection(upto)).collect();
    }
    let mut out = Vec::new();
    let mut a = vec![0; n];
    let mut nodes = 0usize;
    fn go(
        v: usize,
        a: &mut Vec<VertexId>,
        ctx: (&[Vec<VertexId>], &[Vec<Simplex>], &SimplicialMap, &SimplicialComplex),
        nodes: &mut usize,
        max_nodes: usize,
        out: &mut Vec<Vec<VertexId>>,
    ) -> Result<()> {
        let (pre, closing, f, e) = ctx;
        if v == a.len() {
            out.push(a.clone());
            return Ok(());
        }
        for &w in &pre[f.apply(v)] {
            *nodes += 1;
            if *nodes > max_nodes {
                return Err(Error::limit("lift enumeration nodes", max_nodes));
            }
            a[v] = w;
            if closing[v].iter().all(|s| e.contains(s.image(a))) {
                go(v + 1, a, ctx, nodes, max_nodes, out)?;
            }
        }
        Ok(())
    }
    go(0, &mut a, (&pre, &closing, f, e), &mut nodes, limits.max_nodes, &mut out)?;
    Ok(out
        .into_iter()
        .map(|a| SimplicialMap::new_unchecked(Arc::clone(k), Arc::clone(e), a))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FibrationStatus {
    VerifiedOverUniverse,
    Counterexample,
    ResourceLimited,
}

/// Contiguous `f ~ g : K -> B` and a lift `f̂` of `f` for which no lift of `g`
/// lies in the class of `f̂`.
#[derive(Debug, Clone)]
pub struct LiftCounterexample {
    pub k: Arc<SimplicialComplex>,
    pub f: SimplicialMap,
    pub g: SimplicialMap,
    pub f_hat: SimplicialMap,
    /// Every lift of `g`; none is in the class of `f̂`.
    pub g_lifts: Vec<SimplicialMap>,
}

#[derive(Debug, Clone)]
pub struct FibrationVerdict {
    pub status: FibrationStatus,
    pub counterexample: Option<LiftCounterexample>,
    /// Triples `(f, g, f̂)` examined.
    pub checked: usize,
    /// Set when `status` is `ResourceLimited`.
    pub reason: Option<String>,
}

enum Outcome {
    Ok(usize),
    Bad(Box<LiftCounterexample>),
    Limited(Error),
}

fn check_member(p: &SimplicialMap, k: &Arc<SimplicialComplex>, limits: &SearchLimits) -> Result<Outcome> {
    let e = p.domain();
    let b = p.codomain();
    let part = class_partition(k, e, limits)?;
    let mut lift_cache: HashMap<Vec<VertexId>, Vec<SimplicialMap>> = HashMap::new();
    let mut lifts_of = |m: &SimplicialMap| -> Result<Vec<SimplicialMap>> {
        if let Some(l) = lift_cache.get(m.assignment()) {
            return Ok(l.clone());
        }
        let l = lifts(p, m, limits)?;
        lift_cache.insert(m.assignment().to_vec(), l.clone());
        Ok(l)
    };
    let mut checked = 0;
    for f in enumerate_maps(k, b, limits)? {
        let f_lifts = lifts_of(&f)?;
        if f_lifts.is_empty() {
            continue;
        }
        for g in contiguity_neighbors(&f, limits)? {
            let g_lifts = lifts_of(&g)?;
            let g_classes: Vec<usize> = g_lifts.iter().map(|m| part.class(m).expect("lift is a map")).collect();
            for f_hat in &f_lifts {
                checked += 1;
                let c = part.class(f_hat).expect("lift is a map");
                if !g_classes.contains(&c) {
                    return Ok(Outcome::Bad(Box::new(LiftCounterexample {
                        k: Arc::clone(k),
                        f: f.clone(),
                        g,
                        f_hat: f_hat.clone(),
                        g_lifts,
                    })));
                }
            }
        }
    }
    Ok(Outcome::Ok(checked))
}

/// Checks the contiguity-lifting property of `p` for every complex in `universe`.
///
/// For each `K`, each contiguous pair `f ~ g : K -> B` and each exact lift `f̂`
/// of `f`, some exact lift of `g` must share the class of `f̂`. One contiguity
/// step suffices, since lifting steps one at a time composes along chains.
/// The reported counterexample is the first in universe order.
pub fn is_fibration_over(p: &SimplicialMap, universe: &Corpus, limits: &SearchLimits) -> Result<FibrationVerdict> {
    if !p.domain().is_connected() || !p.codomain().is_connected() {
        return Err(Error::DisconnectedComplex);
    }
    let members: Vec<Arc<SimplicialComplex>> = universe.iter().cloned().map(Arc::new).collect();
    let outcomes: Vec<Outcome> = members
        .par_iter()
        .map(|k| match check_member(p, k, limits) {
            Ok(o) => Ok(o),
            Err(e) if e.is_unknown() => Ok(Outcome::Limited(e)),
            Err(e) => Err(e),
        })
        .collect::<Result<_>>()?;
    let mut checked = 0;
    let mut limited = None;
    for o in outcomes {
        match o {
            Outcome::Ok(n) => checked += n,
            Outcome::Bad(cx) => {
                return Ok(FibrationVerdict {
                    status: FibrationStatus::Counterexample,
                    counterexample: Some(*cx),
                    checked,
                    reason: None,
                })
            }
            Outcome::Limited(e) => {
                limited.get_or_insert(e.to_string());
            }
        }
    }
    let status = if limited.is_some() { FibrationStatus::ResourceLimited } else { FibrationStatus::VerifiedOverUniverse };
    Ok(FibrationVerdict { status, counterexample: None, checked, reason: limited })
}

/// Values entering the two category bounds for a fibration.
#[derive(Debug, Clone, Serialize)]
pub struct FibrationReport {
    pub fiber_base: VertexId,
    pub scat_e: usize,
    pub scat_i: usize,
    pub scat_p: usize,
    pub scat_f: usize,
    pub scat_b: usize,
    /// `scat(E) ≤ (scat(i)+1)(scat(p)+1) − 1`.
    pub map_bound_holds: bool,
    /// `scat(E) ≤ (scat(F)+1)(scat(B)+1) − 1`.
    pub space_bound_holds: bool,
}

/// Computes `scat` of `E`, of the fiber inclusion `i`, of `p`, of the fiber and
/// of the base, and checks both product-type bounds on `scat(E)`.
pub fn check_fibration_inequalities(
    p: &SimplicialMap,
    fiber_base: VertexId,
    limits: &SearchLimits,
) -> Result<FibrationReport> {
    let part = fiber(p, fiber_base)?;
    let i = SimplicialMap::inclusion(&part)?.map;
    let scat_e = scat(p.domain(), limits)?.0;
    let scat_i = scat_map(&i, limits)?.0;
    let scat_p = scat_map(p, limits)?.0;
    let scat_f = scat(i.domain(), limits)?.0;
    let scat_b = scat(p.codomain(), limits)?.0;
    Ok(FibrationReport {
        fiber_base,
        scat_e,
        scat_i,
        scat_p,
        scat_f,
        scat_b,
        map_bound_holds: scat_e + 1 <= (scat_i + 1) * (scat_p + 1),
        space_bound_holds: scat_e + 1 <= (scat_f + 1) * (scat_b + 1),
    })
}

/// Tag stored in every `EsResult`.
pub const ES_SEMANTICS: &str = "upper bound on Es(f); exact relative to universe";

/// A bounded Es value; `Unbounded` never takes part in integer arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EsValue {
    Finite(usize),
    Unbounded,
}

impl Serialize for EsValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            EsValue::Finite(n) => s.serialize_u64(*n as u64),
            EsValue::Unbounded => s.serialize_str("unbounded"),
        }
    }
}

impl EsValue {
    /// `(a+1)(b+1) − 1`, with `Unbounded` absorbing.
    pub fn product_bound(self, other: EsValue) -> EsValue {
        match (self, other) {
            (EsValue::Finite(a), EsValue::Finite(b)) => EsValue::Finite((a + 1) * (b + 1) - 1),
            _ => EsValue::Unbounded,
        }
    }

    pub fn admits(self, n: usize) -> bool {
        match self {
            EsValue::Finite(m) => n <= m,
            EsValue::Unbounded => true,
        }
    }
}

/// Which universe a bounded quantity was computed against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UniverseRef {
    /// `(max_vertices, max_facets)` of the corpus.
    pub bounds: (usize, usize),
    pub members: usize,
}

impl UniverseRef {
    pub fn of(u: &Corpus) -> Self {
        UniverseRef { bounds: u.bounds, members: u.len() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EsResult {
    pub value: EsValue,
    pub universe: UniverseRef,
    pub n_max: usize,
    pub semantics: &'static str,
    /// Universe index of a least-category member with a map `h` making `f ∘ h` essential.
    pub witness_member: Option<usize>,
}

/// One universe member with the data every Es computation needs.
#[derive(Debug, Clone)]
pub struct UniverseMember {
    pub index: usize,
    pub complex: Arc<SimplicialComplex>,
    pub scat: usize,
    /// No dominated vertex.
    pub is_core: bool,
    pub gscat_exact: Option<usize>,
    pub gscat_upper: Option<usize>,
}

impl UniverseMember {
    /// `gscat(M) ≤ n`, or `None` when neither computation settles it.
    pub fn gscat_at_most(&self, n: usize) -> Option<bool> {
        if self.scat > n {
            return Some(false);
        }
        if let Some(g) = self.gscat_exact {
            return Some(g <= n);
        }
        match self.gscat_upper {
            Some(g) if g <= n => Some(true),
            _ => None,
        }
    }
}

/// A corpus with per-member category data computed once.
#[derive(Debug, Clone)]
pub struct EsUniverse {
    pub reference: UniverseRef,
    pub members: Vec<UniverseMember>,
}

fn settled<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_unknown() => Ok(None),
        Err(e) => Err(e),
    }
}

impl EsUniverse {
    pub fn new(universe: &Corpus, limits: &SearchLimits) -> Result<Self> {
        let members = universe
            .complexes
            .par_iter()
            .enumerate()
            .map(|(index, m)| -> Result<UniverseMember> {
                let complex = Arc::new(m.clone());
                let scat = scat(&complex, limits)?.0;
                let is_core = reduce(&complex).core.n_vertices() == complex.n_vertices();
                let gscat_exact = settled(gscat_exact(&complex, limits))?;
                let gscat_upper = match gscat_exact {
                    Some(_) => None,
                    None => settled(gscat_upper(&complex, limits))?.map(|(g, _)| g),
                };
                Ok(UniverseMember { index, complex, scat, is_core, gscat_exact, gscat_upper })
            })
            .collect::<Result<_>>()?;
        Ok(EsUniverse { reference: UniverseRef::of(universe), members })
    }

    fn result(&self, value: EsValue, n_max: usize, witness_member: Option<usize>) -> EsResult {
        EsResult { value, universe: self.reference, n_max, semantics: ES_SEMANTICS, witness_member }
    }
}

/// `Es(f)` relative to `universe`, capped at `n_max`.
///
/// Null-class maps get `Unbounded`. Otherwise the answer is the largest
/// `n ≤ n_max` such that for every core `M` in the universe with
/// `scat(M) ≤ n` and every class of maps `h : M -> core(K)`, the core-reduced
/// map `r_L f i_K` composed with `h` is null-class. Cores and core targets
/// lose nothing, since composing with `i r ~ id` preserves null-classness.
pub fn es_bounded(f: &SimplicialMap, universe: &Corpus, n_max: usize, limits: &SearchLimits) -> Result<EsResult> {
    es_bounded_in(f, &EsUniverse::new(universe, limits)?, n_max, limits)
}

pub fn es_bounded_in(f: &SimplicialMap, u: &EsUniverse, n_max: usize, limits: &SearchLimits) -> Result<EsResult> {
    if is_null_class(f, limits)?.is_some() {
        return Ok(u.result(EsValue::Unbounded, n_max, None));
    }
    let ck = core(f.domain())?;
    let cl = core(f.codomain())?;
    let reduced = compose(&cl.retraction, &compose(f, &ck.inclusion)?)?;
    let mut candidates: Vec<&UniverseMember> = u.members.iter().filter(|m| m.is_core && m.scat <= n_max).collect();
    candidates.sort_by_key(|m| (m.scat, m.index));
    for m in candidates {
        let part = class_partition(&m.complex, &ck.core, limits)?;
        for h in part.representatives() {
            if is_null_class(&compose(&reduced, h)?, limits)?.is_none() {
                return Ok(u.result(EsValue::Finite(m.scat - 1), n_max, Some(m.index)));
            }
        }
    }
    Ok(u.result(EsValue::Finite(n_max), n_max, None))
}

/// The three equivalent forms of "`Es(f) ≥ n`", each evaluated over the universe.
#[derive(Debug, Clone, Serialize)]
pub struct EsCrosscheck {
    pub n: usize,
    /// Every `g : M -> K` with `scat(M) ≤ n` has `f ∘ g ~ *`.
    pub by_domain_category: bool,
    /// Every `g : M -> K` with `scat(g) ≤ n` has `f ∘ g ~ *`.
    pub by_map_category: bool,
    /// Every `g : M -> K` with `gscat(M) ≤ n` has `f ∘ g ~ *`.
    pub by_geometric_category: bool,
    /// Members whose geometric category could not be settled.
    pub gscat_unsettled: usize,
    pub agree: bool,
}

/// Maps into one complex `K` from every universe member, one per class, with `scat`.
#[derive(Debug, Clone)]
pub struct TestMaps {
    pub target: Arc<SimplicialComplex>,
    /// Per member: class representatives `g : M -> K` with `scat(g)`.
    pub per_member: Vec<Vec<(SimplicialMap, usize)>>,
}

pub fn test_maps(u: &EsUniverse, k: &Arc<SimplicialComplex>, limits: &SearchLimits) -> Result<TestMaps> {
    let per_member = u
        .members
        .iter()
        .map(|m| {
            class_partition(&m.complex, k, limits)?
                .representatives()
                .into_iter()
                .map(|g| Ok((g.clone(), scat_map(g, limits)?.0)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(TestMaps { target: Arc::clone(k), per_member })
}

/// Evaluates all three conditions at level `n` over every universe member.
pub fn es_equivalence_crosscheck(
    f: &SimplicialMap,
    universe: &Corpus,
    n: usize,
    limits: &SearchLimits,
) -> Result<EsCrosscheck> {
    let u = EsUniverse::new(universe, limits)?;
    let t = test_maps(&u, f.domain(), limits)?;
    es_crosscheck_in(f, &u, &t, n, limits)
}

pub fn es_crosscheck_in(
    f: &SimplicialMap,
    u: &EsUniverse,
    t: &TestMaps,
    n: usize,
    limits: &SearchLimits,
) -> Result<EsCrosscheck> {
    Ok(es_crosscheck_levels(f, u, t, &[n], limits)?.remove(0))
}

/// `es_crosscheck_in` at several levels, deciding each composite once.
pub fn es_crosscheck_levels(
    f: &SimplicialMap,
    u: &EsUniverse,
    t: &TestMaps,
    levels: &[usize],
    limits: &SearchLimits,
) -> Result<Vec<EsCrosscheck>> {
    es_crosscheck_with(f, u, t, levels, |_, fg| Ok(is_null_class(fg, limits)?.is_some()))
}

/// As `es_crosscheck_levels`, with null classes decided by `null(member, f ∘ g)`,
/// for callers that already know them.
pub fn es_crosscheck_with(
    f: &SimplicialMap,
    u: &EsUniverse,
    t: &TestMaps,
    levels: &[usize],
    null: impl Fn(usize, &SimplicialMap) -> Result<bool>,
) -> Result<Vec<EsCrosscheck>> {
    if **f.domain() != *t.target {
        return Err(Error::DomainMismatch("test maps land in a different complex"));
    }
    // per member: scat of each test map whose composite with f is not null
    let mut escaping: Vec<Vec<usize>> = Vec::with_capacity(u.members.len());
    for (i, reps) in t.per_member.iter().enumerate() {
        let mut seen: HashMap<Vec<usize>, bool> = HashMap::new();
        let mut out = Vec::new();
        for (g, scat_g) in reps {
            let fg = compose(f, g)?;
            let null = match seen.get(fg.assignment()) {
                Some(&b) => b,
                None => {
                    let b = null(i, &fg)?;
                    seen.insert(fg.assignment().to_vec(), b);
                    b
                }
            };
            if !null {
                out.push(*scat_g);
            }
        }
        escaping.push(out);
    }
    Ok(levels
        .iter()
        .map(|&n| {
            let (mut by_domain_category, mut by_map_category, mut by_geometric_category) = (true, true, true);
            let mut gscat_unsettled = 0;
            for (m, esc) in u.members.iter().zip(&escaping) {
                let all_null = esc.is_empty();
                if esc.iter().any(|&s| s <= n) {
                    by_map_category = false;
                }
                if m.scat <= n && !all_null {
                    by_domain_category = false;
                }
                match m.gscat_at_most(n) {
                    Some(true) if !all_null => by_geometric_category = false,
                    None => gscat_unsettled += 1,
                    _ => {}
                }
            }
            EsCrosscheck {
                n,
                by_domain_category,
                by_map_category,
                by_geometric_category,
                gscat_unsettled,
                agree: by_domain_category == by_map_category && by_map_category == by_geometric_category,
            }
        })
        .collect())
}

/// One failed test of the composition bound.
#[derive(Debug, Clone)]
pub struct CompositionFailure {
    pub member: usize,
    pub h: SimplicialMap,
}

#[derive(Debug, Clone)]
pub struct CompositionReport {
    pub es_f: EsValue,
    pub es_g: EsValue,
    /// `(Es(g)+1)(Es(f)+1) − 1`.
    pub bound: EsValue,
    pub tested: usize,
    pub failures: Vec<CompositionFailure>,
    /// Bounded Es values can exceed the true ones, so a failure here is a
    /// statement about the universe rather than about `Es` itself.
    pub caveat: &'static str,
}

pub const COMPOSITION_CAVEAT: &str =
    "bounded Es values may overestimate true Es; a failure is relative to the universe";

/// For each member `Z` with `scat(Z)` within the product bound, tests that
/// `(g ∘ f) ∘ h ~ *` for one `h` per class of maps `Z -> K`.
pub fn es_composition_check(
    f: &SimplicialMap,
    g: &SimplicialMap,
    universe: &Corpus,
    n_max: usize,
    limits: &SearchLimits,
) -> Result<CompositionReport> {
    es_composition_in(f, g, &EsUniverse::new(universe, limits)?, n_max, limits)
}

pub fn es_composition_in(
    f: &SimplicialMap,
    g: &SimplicialMap,
    u: &EsUniverse,
    n_max: usize,
    limits: &SearchLimits,
) -> Result<CompositionReport> {
    let gf = compose(g, f)?;
    let es_f = es_bounded_in(f, u, n_max, limits)?.value;
    let es_g = es_bounded_in(g, u, n_max, limits)?.value;
    let bound = es_g.product_bound(es_f);
    let mut tested = 0;
    let mut failures = Vec::new();
    for z in u.members.iter().filter(|z| bound.admits(z.scat)) {
        for h in class_partition(&z.complex, f.domain(), limits)?.representatives() {
            tested += 1;
            if is_null_class(&compose(&gf, h)?, limits)?.is_none() {
                failures.push(CompositionFailure { member: z.index, h: h.clone() });
            }
        }
    }
    Ok(CompositionReport { es_f, es_g, bound, tested, failures, caveat: COMPOSITION_CAVEAT })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contiguity::Product;
    use crate::scomplex::{are_isomorphic, enumerate_corpus, standard_complex, Family};

    fn std(f: Family, n: usize) -> Arc<SimplicialComplex> {
        Arc::new(standard_complex(f, n).unwrap())
    }

    fn lim() -> SearchLimits {
        SearchLimits::default()
    }

    #[test]
    fn fibers_of_simple_maps() {
        let c4 = std(Family::Cycle, 4);
        let e = std(Family::Simplex, 1);
        let p = Product::new(&c4, &e).unwrap();
        let f = fiber(&p.p1(), 2).unwrap();
        let (fc, _) = f.standalone().unwrap();
        assert!(are_isomorphic(&fc, &e, &lim()).unwrap().is_some());
        assert!(fibers_equivalent(&p.p1(), &lim()).unwrap());

        let id = SimplicialMap::identity(&c4);
        assert_eq!(fiber(&id, 1).unwrap().standalone().unwrap().0.n_vertices(), 1);
        assert!(fibers_equivalent(&id, &lim()).unwrap());

        let pt = Arc::new(SimplicialComplex::point());
        let c = SimplicialMap::constant(&c4, &pt, 0).unwrap();
        assert_eq!(fiber(&c, 0).unwrap(), Subcomplex::whole(&c4));

        let into = SimplicialMap::new(e.clone(), c4.clone(), vec![0, 1]).unwrap();
        assert_eq!(fiber(&into, 2), Err(Error::EmptyFiber(2)));
    }

    #[test]
    fn fibers_with_different_cores() {
        // C4 ∪ a pendant vertex: fibers {point} over one end and C4 over the other
        let e = Arc::new(
            SimplicialComplex::from_facets(&[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3], vec![3, 4]]).unwrap(),
        );
        let b = std(Family::Simplex, 1);
        let p = SimplicialMap::new(e, b, vec![0, 0, 0, 0, 1]).unwrap();
        assert!(!fibers_equivalent(&p, &lim()).unwrap());
    }

    #[test]
    fn lifting_verdicts() {
        let u = enumerate_corpus(3, 4).unwrap();
        let c3 = std(Family::Cycle, 3);
        let e = std(Family::Simplex, 1);
        let p = Product::new(&c3, &e).unwrap();
        let v = is_fibration_over(&p.p1(), &u, &lim()).unwrap();
        assert_eq!(v.status, FibrationStatus::VerifiedOverUniverse);
        assert!(v.checked > 0);

        let c4 = std(Family::Cycle, 4);
        let v = is_fibration_over(&SimplicialMap::identity(&c4), &u, &lim()).unwrap();
        assert_eq!(v.status, FibrationStatus::VerifiedOverUniverse);

        let edge = SimplicialMap::new(e.clone(), c4.clone(), vec![0, 1]).unwrap();
        let v = is_fibration_over(&edge, &u, &lim()).unwrap();
        assert_eq!(v.status, FibrationStatus::Counterexample);
        let cx = v.counterexample.unwrap();
        assert_eq!(compose(&edge, &cx.f_hat).unwrap(), cx.f);
        assert!(crate::contiguity::is_contiguous(&cx.f, &cx.g).unwrap());
        assert_eq!(cx.g_lifts, lifts(&edge, &cx.g, &lim()).unwrap());
    }

    #[test]
    fn fibration_inequalities() {
        let c4 = std(Family::Cycle, 4);
        let e = std(Family::Simplex, 1);
        let p = Product::new(&c4, &e).unwrap();
        let r = check_fibration_inequalities(&p.p1(), 0, &lim()).unwrap();
        assert!(r.map_bound_holds && r.space_bound_holds);
        assert_eq!((r.scat_e, r.scat_b, r.scat_f), (1, 1, 0));
        let r = check_fibration_inequalities(&SimplicialMap::identity(&c4), 0, &lim()).unwrap();
        assert_eq!((r.scat_e, r.scat_i, r.scat_p), (1, 0, 1));
    }

    #[test]
    fn es_values() {
        let u = enumerate_corpus(4, 6).unwrap();
        let c4 = std(Family::Cycle, 4);
        let c = SimplicialMap::constant(&c4, &c4, 2).unwrap();
        assert_eq!(es_bounded(&c, &u, 3, &lim()).unwrap().value, EsValue::Unbounded);
        let id = SimplicialMap::identity(&c4);
        let r = es_bounded(&id, &u, 3, &lim()).unwrap();
        assert_eq!(r.value, EsValue::Finite(0));
        assert_eq!(r.semantics, ES_SEMANTICS);
        for n in 0..=1 {
            assert!(es_equivalence_crosscheck(&id, &u, n, &lim()).unwrap().agree);
            assert!(es_equivalence_crosscheck(&c, &u, n, &lim()).unwrap().agree);
        }
        let rep = es_composition_check(&id, &c, &u, 3, &lim()).unwrap();
        assert_eq!(rep.bound, EsValue::Unbounded);
        assert!(rep.failures.is_empty());
        let rep = es_composition_check(&id, &id, &u, 3, &lim()).unwrap();
        assert_eq!(rep.bound, EsValue::Finite(0));
        assert!(rep.failures.is_empty());
    }
}
