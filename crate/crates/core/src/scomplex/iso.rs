use std::collections::HashSet;

use super::{Simplex, SimplicialComplex, VertexId};
use crate::error::{Error, Result};
use crate::limits::SearchLimits;

/// A facet-preserving vertex bijection `source -> target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    pub bijection: Vec<VertexId>,
}

impl IsoWitness {
    /// Checks that the bijection carries the facet set of `k` exactly onto that of `l`.
    pub fn verify(&self, k: &SimplicialComplex, l: &SimplicialComplex) -> bool {
        let n = k.n_vertices();
        if n != l.n_vertices() || self.bijection.len() != n || k.n_facets() != l.n_facets() {
            return false;
        }
        let mut seen = vec![false; n];
        for &v in &self.bijection {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        let target: HashSet<Simplex> = l.facets().iter().copied().collect();
        let images: HashSet<Simplex> =
            k.facets().iter().map(|f| f.image(&self.bijection)).collect();
        images == target
    }
}

/// Per-vertex invariant: sorted sizes of the facets through the vertex.
fn signatures(k: &SimplicialComplex) -> Vec<Vec<usize>> {
    (0..k.n_vertices())
        .map(|v| {
            let mut sig: Vec<usize> = k.star_facets(v).map(|i| k.facets()[i].len()).collect();
            sig.sort_unstable();
            sig
        })
        .collect()
}

/// Lexicographically least isomorphism `k -> l`, if any.
///
/// Ordered backtracking over vertices of `k`; candidates are filtered by the
/// facet-size signature and every partially assigned facet must map into a
/// simplex of `l`.
pub fn are_isomorphic(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
    limits: &SearchLimits,
) -> Result<Option<IsoWitness>> {
    let n = k.n_vertices();
    if n != l.n_vertices() || k.n_facets() != l.n_facets() {
        return Ok(None);
    }
    let mut sizes_k: Vec<usize> = k.facets().iter().map(|f| f.len()).collect();
    let mut sizes_l: Vec<usize> = l.facets().iter().map(|f| f.len()).collect();
    sizes_k.sort_unstable();
    sizes_l.sort_unstable();
    if sizes_k != sizes_l {
        return Ok(None);
    }
    let sig_k = signatures(k);
    let sig_l = signatures(l);
    let candidates: Vec<Vec<VertexId>> = (0..n)
        .map(|v| (0..n).filter(|&w| sig_k[v] == sig_l[w]).collect())
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    let target: HashSet<Simplex> = l.facets().iter().copied().collect();
    // facets of k that become fully assigned once vertex v is placed
    let closing: Vec<Vec<Simplex>> = (0..n)
        .map(|v| k.facets().iter().copied().filter(|f| f.max_vertex() == Some(v)).collect())
        .collect();
    let stars: Vec<Vec<Simplex>> =
        (0..n).map(|v| k.star_facets(v).map(|i| k.facets()[i]).collect()).collect();

    struct Search<'a> {
        l: &'a SimplicialComplex,
        candidates: &'a [Vec<VertexId>],
        closing: &'a [Vec<Simplex>],
        stars: &'a [Vec<Simplex>],
        target: &'a HashSet<Simplex>,
        assignment: Vec<VertexId>,
        used: u64,
        nodes: usize,
        max_nodes: usize,
    }

    impl Search<'_> {
        fn run(&mut self, v: usize) -> Result<bool> {
            if v == self.assignment.len() {
                return Ok(true);
            }
            for &w in &self.candidates[v] {
                if self.used & (1 << w) != 0 {
                    continue;
                }
                self.nodes += 1;
                if self.nodes > self.max_nodes {
                    return Err(Error::limit("isomorphism backtracking nodes", self.max_nodes));
                }
                self.assignment[v] = w;
                let ok_partial = self.stars[v].iter().all(|f| {
                    let assigned = Simplex::from_bits(f.bits() & (2u64 << v).wrapping_sub(1));
                    self.l.contains(assigned.image(&self.assignment))
                });
                let ok_closed = ok_partial
                    && self.closing[v].iter().all(|f| self.target.contains(&f.image(&self.assignment)));
                if ok_closed {
                    self.used |= 1 << w;
                    if self.run(v + 1)? {
                        return Ok(true);
                    }
                    self.used &= !(1 << w);
                }
            }
            Ok(false)
        }
    }

    let mut search = Search {
        l,
        candidates: &candidates,
        closing: &closing,
        stars: &stars,
        target: &target,
        assignment: vec![0; n],
        used: 0,
        nodes: 0,
        max_nodes: limits.max_nodes,
    };
    if search.run(0)? {
        let witness = IsoWitness { bijection: search.assignment };
        debug_assert!(witness.verify(k, l));
        Ok(Some(witness))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(facets: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(&facets.iter().map(|f| f.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn identity_is_least_self_witness() {
        let k = c(&[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]);
        let w = are_isomorphic(&k, &k, &SearchLimits::default()).unwrap().unwrap();
        assert_eq!(w.bijection, vec![0, 1, 2, 3]);
    }

    #[test]
    fn relabelled_cycle_is_isomorphic() {
        let k = c(&[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]);
        let l = c(&[&[0, 2], &[2, 1], &[1, 3], &[0, 3]]);
        let w = are_isomorphic(&k, &l, &SearchLimits::default()).unwrap().unwrap();
        assert!(w.verify(&k, &l));
    }

    #[test]
    fn cycle_is_not_a_path() {
        let k = c(&[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]);
        let p = c(&[&[0, 1], &[1, 2], &[2, 3]]);
        assert_eq!(are_isomorphic(&k, &p, &SearchLimits::default()).unwrap(), None);
    }

    #[test]
    fn budget_is_enforced() {
        let k = c(&[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 5], &[0, 5]]);
        let l = SearchLimits { max_nodes: 2, ..Default::default() };
        assert!(are_isomorphic(&k, &k, &l).unwrap_err().is_unknown());
    }
}
