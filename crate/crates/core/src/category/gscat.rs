use std::collections::HashMap;
use std::sync::Arc;

use super::{min_set_cover, Cover};
use crate::contiguity::reduce;
use crate::error::{Error, Result};
use crate::limits::SearchLimits;
use crate::scomplex::{standalone, Simplex, SimplicialComplex, Subcomplex};

/// Closure of `gens` is connected and strong collapses to a point.
fn collapsible(k: &SimplicialComplex, gens: Vec<Simplex>) -> Result<Option<crate::contiguity::CoreData>> {
    let (u, _) = standalone(k, gens)?;
    if !u.is_connected() {
        return Ok(None);
    }
    let data = reduce(&Arc::new(u));
    Ok(data.is_point().then_some(data))
}

fn maximal_masks(mut masks: Vec<u64>) -> Vec<u64> {
    masks.sort_unstable_by_key(|m| std::cmp::Reverse(m.count_ones()));
    let mut kept: Vec<u64> = Vec::new();
    for m in masks {
        if !kept.iter().any(|&k| k & m == m) {
            kept.push(m);
        }
    }
    kept.sort_unstable();
    kept
}

/// Least number (minus one) of facet-generated strong collapsible subcomplexes
/// covering `k`. An upper bound on the geometric category.
///
/// Collapsibility is not inherited by subcomplexes, so every facet subset is
/// examined.
pub fn gscat_upper(k: &Arc<SimplicialComplex>, limits: &SearchLimits) -> Result<(usize, Cover)> {
    if !k.is_connected() {
        return Err(Error::DisconnectedComplex);
    }
    let m = k.n_facets();
    if m >= 63 || (1usize << m) - 1 > limits.max_subsets {
        return Err(Error::limit("facet subsets for gscat", limits.max_subsets));
    }
    let facets = k.facets();
    let mut good = Vec::new();
    for mask in 1u64..1 << m {
        let gens = Simplex::from_bits(mask).vertices().map(|i| facets[i]).collect();
        if collapsible(k, gens)?.is_some() {
            good.push(mask);
        }
    }
    let family = maximal_masks(good);
    let (n, sel) = min_set_cover(m, &family).expect("single facets are collapsible");
    let mut parts = Vec::with_capacity(n);
    let mut chains = Vec::with_capacity(n);
    for i in sel {
        let part = Subcomplex::from_facet_mask(k, family[i]);
        let (u, _) = part.standalone()?;
        chains.push(reduce(&Arc::new(u)).idr_chain);
        parts.push(part);
    }
    Ok((n - 1, Cover { parts, chains }))
}

/// Exact geometric category over all subcomplexes, for tiny complexes.
///
/// Subcomplexes are enumerated as order ideals of the face poset; only the set
/// of facets each collapsible ideal contains matters for covering.
pub fn gscat_exact(k: &Arc<SimplicialComplex>, limits: &SearchLimits) -> Result<usize> {
    if !k.is_connected() {
        return Err(Error::DisconnectedComplex);
    }
    let simplices = k.all_simplices(limits)?;
    if simplices.len() > limits.gscat_exact_simplices {
        return Err(Error::limit("simplices for exact gscat", limits.gscat_exact_simplices));
    }
    let index: HashMap<Simplex, usize> = simplices.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    // codimension-one faces of each simplex, as indices
    let boundary: Vec<u64> = simplices
        .iter()
        .map(|s| {
            if s.len() == 1 {
                return 0;
            }
            s.vertices().fold(0, |acc, v| acc | 1 << index[&s.without(v)])
        })
        .collect();
    let facet_ids: Vec<usize> = k.facets().iter().map(|f| index[f]).collect();

    let mut ideals = Vec::new();
    enumerate_ideals(&boundary, 0, 0, &mut ideals);
    let mut good = Vec::new();
    for ideal in ideals {
        if ideal == 0 {
            continue;
        }
        let gens = Simplex::from_bits(ideal).vertices().map(|i| simplices[i]).collect();
        if collapsible(k, gens)?.is_some() {
            let facets_in = facet_ids
                .iter()
                .enumerate()
                .filter(|(_, &f)| ideal >> f & 1 == 1)
                .fold(0u64, |acc, (j, _)| acc | 1 << j);
            if facets_in != 0 {
                good.push(facets_in);
            }
        }
    }
    let (n, _) = min_set_cover(k.n_facets(), &maximal_masks(good)).expect("single facets are collapsible");
    Ok(n - 1)
}

/// Simplices are ordered by size, so every face precedes its cofaces.
fn enumerate_ideals(boundary: &[u64], i: usize, current: u64, out: &mut Vec<u64>) {
    if i == boundary.len() {
        out.push(current);
        return;
    }
    enumerate_ideals(boundary, i + 1, current, out);
    if boundary[i] & current == boundary[i] {
        enumerate_ideals(boundary, i + 1, current | 1 << i, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{scat, verify_collapsible_cover};
    use crate::scomplex::{standard_complex, Family};

    fn std(f: Family, n: usize) -> Arc<SimplicialComplex> {
        Arc::new(standard_complex(f, n).unwrap())
    }

    #[test]
    fn values() {
        let lim = SearchLimits::default();
        assert_eq!(gscat_upper(&std(Family::Simplex, 3), &lim).unwrap().0, 0);
        let c4 = std(Family::Cycle, 4);
        let (g, cover) = gscat_upper(&c4, &lim).unwrap();
        assert_eq!(g, 1);
        assert!(verify_collapsible_cover(&c4, &cover).ok);
        assert_eq!(gscat_exact(&std(Family::Simplex, 2), &lim).unwrap(), 0);
        assert_eq!(gscat_exact(&c4, &lim).unwrap(), 1);
        assert!(gscat_exact(&std(Family::Simplex, 3), &lim).unwrap_err().is_unknown());
    }

    #[test]
    fn ideals_of_an_edge() {
        let e = std(Family::Simplex, 1);
        let simplices = e.all_simplices(&SearchLimits::default()).unwrap();
        assert_eq!(simplices.len(), 3);
        let mut out = Vec::new();
        enumerate_ideals(&[0, 0, 0b11], 0, 0, &mut out);
        // {}, {a}, {b}, {a,b}, {a,b,ab}
        assert_eq!(out.len(), 5);
    }

    #[test]
    fn scat_below_gscat() {
        let lim = SearchLimits::default();
        for k in [std(Family::Cycle, 5), std(Family::BoundaryOfSimplex, 2), std(Family::Path, 4)] {
            let s = scat(&k, &lim).unwrap().0;
            let e = gscat_exact(&k, &lim).unwrap();
            let u = gscat_upper(&k, &lim).unwrap().0;
            assert!(s <= e && e <= u);
        }
    }
}
