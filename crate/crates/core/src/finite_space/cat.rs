use std::collections::HashMap;
use std::sync::Arc;

use super::{bits, is_null_homotopic, verify_fence, Fence, FiniteSpace, MonotoneMap, Point};
use crate::category::{maximal_down_closed, min_set_cover};
use crate::error::{Error, Result};
use crate::limits::SearchLimits;

/// Open cover by unions of minimal open sets, with one null-homotopy per part.
#[derive(Debug, Clone)]
pub struct SpaceCover {
    /// Maximal points generating each part.
    pub parts: Vec<Vec<Point>>,
    /// Fence from the restricted map to a constant, per part.
    pub fences: Vec<Fence>,
}

fn open_of(x: &FiniteSpace, points: &[Point]) -> u64 {
    points.iter().fold(0, |acc, &p| acc | x.down_set(p))
}

/// Re-checks a cover of the domain of `f`: the parts are open, cover every point,
/// and each fence joins `f` restricted to the part with a constant.
pub fn verify_space_cover(f: &MonotoneMap, cover: &SpaceCover) -> bool {
    let x = f.domain();
    if cover.parts.len() != cover.fences.len() || cover.parts.iter().flatten().any(|&p| p >= x.len()) {
        return false;
    }
    let union = cover.parts.iter().fold(0u64, |acc, p| acc | open_of(x, p));
    if union.count_ones() as usize != x.len() {
        return false;
    }
    cover.parts.iter().zip(&cover.fences).all(|(part, fence)| {
        let Ok((r, _)) = f.restrict(open_of(x, part)) else {
            return false;
        };
        verify_fence(fence).ok
            && **fence.domain() == **r.domain()
            && **fence.codomain() == **r.codomain()
            && fence.assignments().first().map(Vec::as_slice) == Some(r.assignment())
            && fence.last().assignment().windows(2).all(|w| w[0] == w[1])
    })
}

/// `cat(f)`: fewest open sets, less one, on each of which `f` is null-homotopic.
///
/// Parts are unions of `U_x` over maximal points `x`; any null-homotopic open
/// set may be shrunk to the union of the minimal opens of the maximal points
/// it contains.
pub fn cat_map(f: &MonotoneMap, limits: &SearchLimits) -> Result<(usize, SpaceCover)> {
    let x = f.domain();
    if !x.is_connected() || !f.codomain().is_connected() {
        return Err(Error::DisconnectedComplex);
    }
    let maxima = x.maximal_points();
    let mut memo: HashMap<u64, Option<Fence>> = HashMap::new();
    let points = |mask: u64| -> Vec<Point> { bits(mask).map(|i| maxima[i]).collect() };
    let (family, _) = maximal_down_closed(maxima.len(), limits.max_subsets, |mask| {
        let (r, _) = f.restrict(open_of(x, &points(mask)))?;
        let fence = is_null_homotopic(&r, limits)?;
        let good = fence.is_some();
        memo.insert(mask, fence);
        Ok(good)
    })?;
    let (k, sel) = min_set_cover(maxima.len(), &family)
        .ok_or_else(|| Error::BadParameter("minimal opens are not all contractible".into()))?;
    let mut parts = Vec::with_capacity(k);
    let mut fences = Vec::with_capacity(k);
    for i in sel {
        parts.push(points(family[i]));
        fences.push(memo[&family[i]].clone().expect("tested good"));
    }
    Ok((k - 1, SpaceCover { parts, fences }))
}

/// `cat(X)` as `cat(id_X)`.
pub fn cat_space(x: &Arc<FiniteSpace>, limits: &SearchLimits) -> Result<(usize, SpaceCover)> {
    cat_map(&MonotoneMap::identity(x), limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_space::tests::circle;

    #[test]
    fn examples() {
        let lim = SearchLimits::default();
        let x = Arc::new(FiniteSpace::from_labels(&["a", "b", "m"], &[("a", "m"), ("b", "m")]).unwrap());
        assert_eq!(cat_space(&x, &lim).unwrap().0, 0);
        let s = circle();
        let (v, cover) = cat_space(&s, &lim).unwrap();
        assert_eq!(v, 1);
        assert!(verify_space_cover(&MonotoneMap::identity(&s), &cover));
        let c = MonotoneMap::constant(&s, &s, 3).unwrap();
        assert_eq!(cat_map(&c, &lim).unwrap().0, 0);
    }
}
