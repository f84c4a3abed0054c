//! Finite T0-spaces as posets, monotone maps and fence homotopies.
//!
//! Open sets are down-sets; the minimal open set of `x` is `U_x = {y : y <= x}`.
//! Two maps are homotopic iff they are joined by a fence of pointwise
//! comparable maps. Homotopy classes are searched with single-point moves
//! after shrinking both spaces to their cores by removing beat points.

mod cat;
mod corpus;
mod functors;

pub use cat::{cat_map, cat_space, verify_space_cover, SpaceCover};
pub use corpus::enumerate_posets;
pub use functors::{chi_chain, chi_map, face_poset, fence_to_chain, k_map, order_complex, FacePoset};

use std::fmt;
use std::sync::Arc;

use crate::contiguity::{path_to_any, shortest_chain};
use crate::error::{Error, Result};
use crate::limits::SearchLimits;
use crate::scomplex::Simplex;

pub type Point = usize;

/// A finite poset; `down[x]` is the bitmask of `U_x`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    labels: Vec<String>,
    down: Vec<u64>,
    up: Vec<u64>,
    connected: bool,
}

impl fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .covers()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.labels[a], self.labels[b]))
            .collect();
        write!(f, "{{{}}}[{}]", self.labels.join(","), covers.join(","))
    }
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    Simplex::from_bits(mask).vertices()
}

impl FiniteSpace {
    /// Builds the space generated by `relations` (pairs `lower < upper`).
    pub fn build(labels: Vec<String>, relations: &[(Point, Point)]) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyInput("element list"));
        }
        if n > 64 {
            return Err(Error::limit("finite space size", 64));
        }
        let mut seen = std::collections::BTreeSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::BadParameter(format!("duplicate element label {dup:?}")));
        }
        let mut down: Vec<u64> = (0..n).map(|x| 1u64 << x).collect();
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::BadParameter(format!("relation ({a}, {b}) out of range")));
            }
            down[b] |= 1 << a;
        }
        // transitive closure
        loop {
            let mut changed = false;
            for x in 0..n {
                let closed = bits(down[x]).fold(down[x], |acc, y| acc | down[y]);
                if closed != down[x] {
                    down[x] = closed;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        for x in 0..n {
            for y in bits(down[x]) {
                if y != x && down[y] >> x & 1 == 1 {
                    return Err(Error::NotT0(format!("{} and {}", labels[x], labels[y])));
                }
            }
        }
        Ok(Self::from_down(labels, down))
    }

    pub(crate) fn from_down(labels: Vec<String>, down: Vec<u64>) -> Self {
        let n = labels.len();
        let mut up = vec![0u64; n];
        for x in 0..n {
            for y in bits(down[x]) {
                up[y] |= 1 << x;
            }
        }
        let mut comp: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for x in 0..n {
            for y in bits(down[x]) {
                let (a, b) = (find(&mut comp, x), find(&mut comp, y));
                comp[a] = b;
            }
        }
        let roots = (0..n).filter(|&x| find(&mut comp, x) == x).count();
        FiniteSpace { labels, down, up, connected: roots == 1 }
    }

    /// Builds from labelled cover pairs.
    pub fn from_labels<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Self> {
        let labels: Vec<String> = elements.iter().map(|s| s.as_ref().to_owned()).collect();
        let find = |s: &str| {
            labels
                .iter()
                .position(|l| l == s)
                .ok_or_else(|| Error::Parse(format!("unknown element {s:?}")))
        };
        let rel = covers
            .iter()
            .map(|(a, b)| Ok((find(a.as_ref())?, find(b.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Self::build(labels, &rel)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: Point) -> &str {
        &self.labels[x]
    }

    pub fn leq(&self, x: Point, y: Point) -> bool {
        self.down[y] >> x & 1 == 1
    }

    pub fn comparable(&self, x: Point, y: Point) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// Bitmask of `U_x`.
    pub fn down_set(&self, x: Point) -> u64 {
        self.down[x]
    }

    pub fn up_set(&self, x: Point) -> u64 {
        self.up[x]
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn maximal_points(&self) -> Vec<Point> {
        (0..self.len()).filter(|&x| self.up[x] == 1 << x).collect()
    }

    /// Covering pairs `(x, y)`: `x < y` with nothing strictly between.
    pub fn covers(&self) -> Vec<(Point, Point)> {
        let mut out = Vec::new();
        for y in 0..self.len() {
            let below = self.down[y] & !(1 << y);
            for x in bits(below) {
                let between = below & self.up[x] & !(1 << x);
                if between == 0 {
                    out.push((x, y));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The subspace on `mask`, with its embedding.
    pub fn subspace(&self, mask: u64) -> Result<(FiniteSpace, Vec<Point>)> {
        let embedding: Vec<Point> = bits(mask).filter(|&x| x < self.len()).collect();
        if embedding.is_empty() {
            return Err(Error::EmptyInput("subspace"));
        }
        let mut remap = vec![usize::MAX; self.len()];
        for (i, &x) in embedding.iter().enumerate() {
            remap[x] = i;
        }
        let down = embedding
            .iter()
            .map(|&x| bits(self.down[x] & mask).fold(0u64, |acc, y| acc | 1 << remap[y]))
            .collect();
        let labels = embedding.iter().map(|&x| self.labels[x].clone()).collect();
        Ok((FiniteSpace::from_down(labels, down), embedding))
    }
}

pub(crate) fn same_space(a: &Arc<FiniteSpace>, b: &Arc<FiniteSpace>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn is_monotone(x: &FiniteSpace, y: &FiniteSpace, a: &[Point]) -> bool {
    a.len() == x.len()
        && a.iter().all(|&v| v < y.len())
        && (0..x.len()).all(|p| bits(x.down[p]).all(|q| y.leq(a[q], a[p])))
}

/// An order-preserving map of finite spaces.
#[derive(Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    domain: Arc<FiniteSpace>,
    codomain: Arc<FiniteSpace>,
    assignment: Vec<Point>,
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.assignment)
    }
}

impl MonotoneMap {
    pub fn new(domain: Arc<FiniteSpace>, codomain: Arc<FiniteSpace>, assignment: Vec<Point>) -> Result<Self> {
        if !is_monotone(&domain, &codomain, &assignment) {
            return Err(Error::BadParameter("assignment is not order-preserving".into()));
        }
        Ok(MonotoneMap { domain, codomain, assignment })
    }

    pub(crate) fn new_unchecked(domain: Arc<FiniteSpace>, codomain: Arc<FiniteSpace>, assignment: Vec<Point>) -> Self {
        debug_assert!(is_monotone(&domain, &codomain, &assignment));
        MonotoneMap { domain, codomain, assignment }
    }

    pub fn identity(x: &Arc<FiniteSpace>) -> Self {
        MonotoneMap { domain: Arc::clone(x), codomain: Arc::clone(x), assignment: (0..x.len()).collect() }
    }

    pub fn constant(x: &Arc<FiniteSpace>, y: &Arc<FiniteSpace>, p: Point) -> Result<Self> {
        if p >= y.len() {
            return Err(Error::BadParameter(format!("point {p} is not in the codomain")));
        }
        Ok(MonotoneMap { domain: Arc::clone(x), codomain: Arc::clone(y), assignment: vec![p; x.len()] })
    }

    pub fn domain(&self) -> &Arc<FiniteSpace> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteSpace> {
        &self.codomain
    }

    pub fn assignment(&self) -> &[Point] {
        &self.assignment
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &MonotoneMap) -> Result<MonotoneMap> {
        if !same_space(&f.codomain, &self.domain) {
            return Err(Error::DomainMismatch("codomain of f is not the domain of g"));
        }
        Ok(MonotoneMap {
            domain: Arc::clone(&f.domain),
            codomain: Arc::clone(&self.codomain),
            assignment: f.assignment.iter().map(|&x| self.assignment[x]).collect(),
        })
    }

    /// Restriction to the subspace `mask` of the domain.
    pub fn restrict(&self, mask: u64) -> Result<(MonotoneMap, Vec<Point>)> {
        let (sub, emb) = self.domain.subspace(mask)?;
        let a = emb.iter().map(|&x| self.assignment[x]).collect();
        Ok((MonotoneMap { domain: Arc::new(sub), codomain: Arc::clone(&self.codomain), assignment: a }, emb))
    }
}

/// `f <= g` or `f >= g` pointwise.
fn comparable_maps(y: &FiniteSpace, f: &[Point], g: &[Point]) -> bool {
    f.iter().zip(g).all(|(&a, &b)| y.leq(a, b)) || f.iter().zip(g).all(|(&a, &b)| y.leq(b, a))
}

/// A sequence of monotone maps, consecutive ones pointwise comparable.
#[derive(Clone, PartialEq, Eq)]
pub struct Fence {
    domain: Arc<FiniteSpace>,
    codomain: Arc<FiniteSpace>,
    maps: Vec<Vec<Point>>,
}

impl fmt::Debug for Fence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Fence").field("maps", &self.maps).finish()
    }
}

impl Fence {
    pub fn trivial(f: &MonotoneMap) -> Self {
        Fence { domain: Arc::clone(&f.domain), codomain: Arc::clone(&f.codomain), maps: vec![f.assignment.clone()] }
    }

    pub fn from_assignments(domain: Arc<FiniteSpace>, codomain: Arc<FiniteSpace>, maps: Vec<Vec<Point>>) -> Self {
        Fence { domain, codomain, maps }
    }

    pub fn domain(&self) -> &Arc<FiniteSpace> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteSpace> {
        &self.codomain
    }

    pub fn assignments(&self) -> &[Vec<Point>] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn map_at(&self, i: usize) -> MonotoneMap {
        MonotoneMap { domain: Arc::clone(&self.domain), codomain: Arc::clone(&self.codomain), assignment: self.maps[i].clone() }
    }

    pub fn first(&self) -> MonotoneMap {
        self.map_at(0)
    }

    pub fn last(&self) -> MonotoneMap {
        self.map_at(self.maps.len() - 1)
    }

    pub fn reversed(&self) -> Self {
        let mut maps = self.maps.clone();
        maps.reverse();
        Fence { maps, ..self.clone() }
    }

    pub fn post_compose(&self, h: &MonotoneMap) -> Result<Self> {
        if !same_space(&self.codomain, &h.domain) {
            return Err(Error::DomainMismatch("post-composition"));
        }
        let maps = self.maps.iter().map(|m| m.iter().map(|&x| h.assignment[x]).collect()).collect();
        Ok(Fence { domain: Arc::clone(&self.domain), codomain: Arc::clone(&h.codomain), maps }.deduped())
    }

    pub fn pre_compose(&self, k: &MonotoneMap) -> Result<Self> {
        if !same_space(&k.codomain, &self.domain) {
            return Err(Error::DomainMismatch("pre-composition"));
        }
        let maps = self.maps.iter().map(|m| k.assignment.iter().map(|&x| m[x]).collect()).collect();
        Ok(Fence { domain: Arc::clone(&k.domain), codomain: Arc::clone(&self.codomain), maps }.deduped())
    }

    pub fn then(mut self, next: &Fence) -> Result<Self> {
        if self.maps.last() != next.maps.first() {
            return Err(Error::DomainMismatch("fences do not meet"));
        }
        self.maps.extend(next.maps.iter().skip(1).cloned());
        Ok(self.deduped())
    }

    pub(crate) fn deduped(mut self) -> Self {
        self.maps.dedup();
        self
    }

    /// Same endpoints, every step changing a single point.
    ///
    /// For `f <= g`, points are raised to `g` from the top down, so the set of
    /// changed points is always an up-set and each intermediate map stays
    /// monotone. Lowering runs bottom-up.
    pub fn refined(&self) -> Fence {
        let x = &self.domain;
        let y = &self.codomain;
        let mut desc: Vec<Point> = (0..x.len()).collect();
        desc.sort_by_key(|&p| (std::cmp::Reverse(x.down[p].count_ones()), p));
        let mut asc = desc.clone();
        asc.reverse();
        let mut maps = vec![self.maps[0].clone()];
        for pair in self.maps.windows(2) {
            let (f, g) = (&pair[0], &pair[1]);
            let raising = f.iter().zip(g).all(|(&a, &b)| y.leq(a, b));
            let order = if raising { &desc } else { &asc };
            let mut h = f.clone();
            for &p in order {
                if h[p] != g[p] {
                    h[p] = g[p];
                    maps.push(h.clone());
                }
            }
        }
        Fence { maps, ..self.clone() }
    }
}

/// Outcome of an independent fence check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FenceCheck {
    pub ok: bool,
    pub first_failure: Option<usize>,
}

pub fn verify_fence(fence: &Fence) -> FenceCheck {
    let fail = |i| FenceCheck { ok: false, first_failure: Some(i) };
    if fence.maps.is_empty() {
        return fail(0);
    }
    for (i, m) in fence.maps.iter().enumerate() {
        if !is_monotone(&fence.domain, &fence.codomain, m) {
            return fail(i);
        }
        if i > 0 && !comparable_maps(&fence.codomain, &fence.maps[i - 1], m) {
            return fail(i);
        }
    }
    FenceCheck { ok: true, first_failure: None }
}

pub fn verify_fence_between(fence: &Fence, f: &MonotoneMap, g: &MonotoneMap) -> bool {
    verify_fence(fence).ok
        && same_space(&fence.domain, &f.domain)
        && same_space(&fence.codomain, &f.codomain)
        && fence.maps.first() == Some(&f.assignment)
        && fence.maps.last() == Some(&g.assignment)
}

/// Result of removing beat points until none is left.
#[derive(Debug, Clone)]
pub struct SpaceCore {
    pub core: Arc<FiniteSpace>,
    pub inclusion: MonotoneMap,
    pub retraction: MonotoneMap,
    /// `(beat point, point it retracts onto)` in removal order.
    pub removal_order: Vec<(Point, Point)>,
    /// From `id` to `inclusion ∘ retraction`, one comparable step per removal.
    pub fence: Fence,
}

/// Least beat point of the subspace `alive` and its target.
fn beat_point(x: &FiniteSpace, alive: u64) -> Option<(Point, Point)> {
    for p in bits(alive) {
        let below = x.down[p] & alive & !(1 << p);
        if below != 0 {
            if let Some(m) = bits(below).find(|&q| below & !x.down[q] == 0) {
                return Some((p, m));
            }
        }
        let above = x.up[p] & alive & !(1 << p);
        if above != 0 {
            if let Some(m) = bits(above).find(|&q| above & !x.up[q] == 0) {
                return Some((p, m));
            }
        }
    }
    None
}

/// Stong core: removes the least beat point until none remains.
pub fn space_core(x: &Arc<FiniteSpace>) -> SpaceCore {
    let n = x.len();
    let mut alive = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut r: Vec<Point> = (0..n).collect();
    let mut maps = vec![r.clone()];
    let mut removal_order = Vec::new();
    while let Some((p, m)) = beat_point(x, alive) {
        alive &= !(1 << p);
        for v in r.iter_mut() {
            if *v == p {
                *v = m;
            }
        }
        maps.push(r.clone());
        removal_order.push((p, m));
    }
    let (core, emb) = x.subspace(alive).expect("a core is non-empty");
    let core = Arc::new(core);
    let mut remap = vec![usize::MAX; n];
    for (i, &p) in emb.iter().enumerate() {
        remap[p] = i;
    }
    SpaceCore {
        inclusion: MonotoneMap::new_unchecked(Arc::clone(&core), Arc::clone(x), emb),
        retraction: MonotoneMap::new_unchecked(Arc::clone(x), Arc::clone(&core), r.iter().map(|&p| remap[p]).collect()),
        core,
        removal_order,
        fence: Fence::from_assignments(Arc::clone(x), Arc::clone(x), maps),
    }
}

/// Monotone maps reachable by changing one point to a comparable value.
fn single_moves(x: &FiniteSpace, y: &FiniteSpace, h: &[Point], limits: &SearchLimits) -> Result<Vec<Vec<Point>>> {
    let mut out = Vec::new();
    for p in 0..x.len() {
        let below = x.down[p] & !(1 << p);
        let above = x.up[p] & !(1 << p);
        for v in bits(y.down[h[p]] | y.up[h[p]]) {
            if v == h[p] {
                continue;
            }
            let ok = bits(below).all(|q| y.leq(h[q], v)) && bits(above).all(|q| y.leq(v, h[q]));
            if ok {
                let mut g = h.to_vec();
                g[p] = v;
                out.push(g);
            }
        }
    }
    if out.len() > limits.max_neighbors {
        return Err(Error::limit("fence moves from one map", limits.max_neighbors));
    }
    out.sort_unstable();
    Ok(out)
}

/// Fence from `f` to `g`, or `None` if they are not homotopic.
///
/// The search runs between the cores of domain and codomain; the result is
/// lifted back through the beat-point retractions.
pub fn homotopic(f: &MonotoneMap, g: &MonotoneMap, limits: &SearchLimits) -> Result<Option<Fence>> {
    if !same_space(&f.domain, &g.domain) || !same_space(&f.codomain, &g.codomain) {
        return Err(Error::DomainMismatch("maps must share domain and codomain"));
    }
    if f == g {
        return Ok(Some(Fence::trivial(f)));
    }
    let cx = space_core(&f.domain);
    let cy = space_core(&f.codomain);
    let squeeze = |m: &MonotoneMap| -> Result<MonotoneMap> { cy.retraction.after(&m.after(&cx.inclusion)?) };
    let (fc, gc) = (squeeze(f)?, squeeze(g)?);
    let (cxs, cys) = (Arc::clone(&cx.core), Arc::clone(&cy.core));
    let path = shortest_chain(&fc.assignment, &gc.assignment, limits.max_states, |h| {
        single_moves(&cxs, &cys, h, limits)
    })?;
    let Some(path) = path else {
        return Ok(None);
    };
    let core_fence = Fence::from_assignments(Arc::clone(&cx.core), Arc::clone(&cy.core), path);
    let ir = cy.inclusion.after(&cy.retraction)?;
    let leg = |m: &MonotoneMap| -> Result<Fence> {
        let outer = cy.fence.pre_compose(m)?;
        let inner = cx.fence.post_compose(&ir.after(m)?)?;
        outer.then(&inner)
    };
    let middle = core_fence.pre_compose(&cx.retraction)?.post_compose(&cy.inclusion)?;
    Ok(Some(leg(f)?.then(&middle)?.then(&leg(g)?.reversed())?))
}

/// Fence from `f` to the constant map at point 0.
///
/// Searches outward from the core-reduced `f` for any constant map, so a map
/// that is not null-homotopic only costs its own component. The constant
/// found is then walked to point 0 along comparable points.
pub fn is_null_homotopic(f: &MonotoneMap, limits: &SearchLimits) -> Result<Option<Fence>> {
    let (x, y) = (&f.domain, &f.codomain);
    if !y.is_connected() {
        return Err(Error::DisconnectedComplex);
    }
    let cx = space_core(x);
    let cy = space_core(y);
    let fc = cy.retraction.after(&f.after(&cx.inclusion)?)?;
    let constant = |h: &Vec<Point>| h.windows(2).all(|w| w[0] == w[1]);
    let (cxs, cys) = (Arc::clone(&cx.core), Arc::clone(&cy.core));
    let Some(path) = path_to_any(&fc.assignment, limits.max_states, |h| single_moves(&cxs, &cys, h, limits), constant)?
    else {
        return Ok(None);
    };
    let core_fence = Fence::from_assignments(Arc::clone(&cx.core), Arc::clone(&cy.core), path);
    let ir = cy.inclusion.after(&cy.retraction)?;
    let outer = cy.fence.pre_compose(f)?;
    let inner = cx.fence.post_compose(&ir.after(f)?)?;
    let middle = core_fence.pre_compose(&cx.retraction)?.post_compose(&cy.inclusion)?;
    let mut fence = outer.then(&inner)?.then(&middle)?;
    let start = fence.last().assignment[0];
    let walk = comparable_walk(y, start, 0).expect("codomain is connected");
    let tail: Vec<Vec<Point>> = walk.into_iter().map(|p| vec![p; x.len()]).collect();
    fence = fence.then(&Fence::from_assignments(Arc::clone(x), Arc::clone(y), tail))?;
    Ok(Some(fence.deduped()))
}

/// Shortest sequence of pairwise comparable points from `a` to `b`.
fn comparable_walk(y: &FiniteSpace, a: Point, b: Point) -> Option<Vec<Point>> {
    let mut prev = vec![usize::MAX; y.len()];
    prev[a] = a;
    let mut queue = std::collections::VecDeque::from([a]);
    while let Some(p) = queue.pop_front() {
        if p == b {
            let mut walk = vec![b];
            let mut q = b;
            while q != a {
                q = prev[q];
                walk.push(q);
            }
            walk.reverse();
            return Some(walk);
        }
        for q in bits(y.down[p] | y.up[p]) {
            if prev[q] == usize::MAX {
                prev[q] = p;
                queue.push_back(q);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn circle() -> Arc<FiniteSpace> {
        Arc::new(FiniteSpace::from_labels(&["a", "b", "c", "d"], &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")]).unwrap())
    }

    #[test]
    fn build_examples() {
        let chain = FiniteSpace::from_labels(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert!(chain.leq(0, 2));
        assert_eq!(chain.covers(), vec![(0, 1), (1, 2)]);
        assert!(matches!(FiniteSpace::from_labels(&["a", "b"], &[("a", "b"), ("b", "a")]), Err(Error::NotT0(_))));
        let s = circle();
        assert_eq!(s.len(), 4);
        assert_eq!(s.maximal_points(), vec![2, 3]);
        assert!(s.is_connected());
    }

    #[test]
    fn raise_to_maximum() {
        let x = Arc::new(FiniteSpace::from_labels(&["a", "b", "m"], &[("a", "m"), ("b", "m")]).unwrap());
        let id = MonotoneMap::identity(&x);
        let top = MonotoneMap::constant(&x, &x, 2).unwrap();
        let fence = homotopic(&id, &top, &SearchLimits::default()).unwrap().unwrap();
        assert!(verify_fence_between(&fence, &id, &top));
    }

    #[test]
    fn circle_is_not_contractible() {
        let s = circle();
        let id = MonotoneMap::identity(&s);
        assert!(is_null_homotopic(&id, &SearchLimits::default()).unwrap().is_none());
        assert_eq!(space_core(&s).core.len(), 4);
    }

    #[test]
    fn refined_fence_uses_single_points() {
        let x = Arc::new(FiniteSpace::from_labels(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap());
        let id = MonotoneMap::identity(&x);
        let top = MonotoneMap::constant(&x, &x, 2).unwrap();
        let fence = Fence::from_assignments(x.clone(), x.clone(), vec![id.assignment().to_vec(), top.assignment().to_vec()]);
        let r = fence.refined();
        assert!(verify_fence_between(&r, &id, &top));
        for w in r.assignments().windows(2) {
            assert_eq!(w[0].iter().zip(&w[1]).filter(|(a, b)| a != b).count(), 1);
        }
    }

    #[test]
    fn core_of_a_chain_is_a_point() {
        let x = Arc::new(FiniteSpace::from_labels(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap());
        let c = space_core(&x);
        assert_eq!(c.core.len(), 1);
        assert!(verify_fence(&c.fence).ok);
    }
}
