//! Brute-force reference computations, kept deliberately simple.
//!
//! Nothing here uses cores, good-set lattices or set-cover search: null
//! classes are decided by breadth-first search over the whole map space, and
//! categories by trying every partition of the facets into blocks.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::contiguity::{null_chain_naive, SimplicialMap};
use crate::error::{Error, Result};
use crate::limits::SearchLimits;
use crate::scomplex::{Simplex, SimplicialComplex, Subcomplex};

/// Whether `f` reaches a constant map by full-space search.
///
/// Constants into a connected complex are all contiguity-equivalent, so any
/// one of them will do.
pub fn null_naive(f: &SimplicialMap, limits: &SearchLimits) -> Result<bool> {
    Ok(null_chain_naive(f, limits)?.is_some())
}

/// `scat(f)` as the least `k` such that the facets of the domain split into
/// `k + 1` blocks, each spanning a part on which `f` is null-contiguous.
pub fn scat_map_oracle(f: &SimplicialMap, limits: &SearchLimits) -> Result<usize> {
    let k = f.domain();
    if !f.codomain().is_connected() {
        return Err(Error::DisconnectedComplex);
    }
    let m = k.n_facets();
    let mut memo: HashMap<u64, bool> = HashMap::new();
    let mut good = |mask: u64| -> Result<bool> {
        if let Some(&g) = memo.get(&mask) {
            return Ok(g);
        }
        if memo.len() >= limits.max_subsets {
            return Err(Error::limit("oracle block tests", limits.max_subsets));
        }
        let part = Subcomplex::from_facet_mask(k, mask);
        let g = null_naive(&f.restrict(&part)?.map, limits)?;
        memo.insert(mask, g);
        Ok(g)
    };
    for blocks in 1..=m {
        let mut parts = Vec::with_capacity(blocks);
        if partition(0, m, blocks, &mut parts, &mut good)? {
            return Ok(blocks - 1);
        }
    }
    unreachable!("single facets are always null-contiguous")
}

/// Places facet `i` in an existing block or a new one, keeping every block good.
fn partition<G>(i: usize, m: usize, max_blocks: usize, parts: &mut Vec<u64>, good: &mut G) -> Result<bool>
where
    G: FnMut(u64) -> Result<bool>,
{
    if i == m {
        return Ok(true);
    }
    for j in 0..parts.len() {
        let grown = parts[j] | 1 << i;
        if good(grown)? {
            let old = parts[j];
            parts[j] = grown;
            if partition(i + 1, m, max_blocks, parts, good)? {
                return Ok(true);
            }
            parts[j] = old;
        }
    }
    if parts.len() < max_blocks {
        parts.push(1 << i);
        if partition(i + 1, m, max_blocks, parts, good)? {
            return Ok(true);
        }
        parts.pop();
    }
    Ok(false)
}

pub fn scat_oracle(k: &Arc<SimplicialComplex>, limits: &SearchLimits) -> Result<usize> {
    scat_map_oracle(&SimplicialMap::identity(k), limits)
}

/// All simplices of `k` by testing every vertex subset against the facets.
pub fn simplex_count_oracle(k: &SimplicialComplex) -> usize {
    let n = k.n_vertices();
    (1u64..1 << n)
        .filter(|&s| k.facets().iter().any(|f| Simplex::from_bits(s).is_face_of(*f)))
        .count()
}

/// Connected complexes on exactly `n` vertices up to relabelling, counted by
/// canonicalizing every labelled facet family under all permutations.
pub fn corpus_count_oracle(n: usize) -> usize {
    assert!(n <= 4, "labelled families are enumerated exhaustively");
    let sets: Vec<u64> = (1u64..1 << n).collect();
    let perms = permutations(n);
    let mut classes = BTreeSet::new();
    for fam in 1u64..1 << sets.len() {
        let members: Vec<u64> = (0..sets.len()).filter(|&i| fam >> i & 1 == 1).map(|i| sets[i]).collect();
        let antichain = members.iter().all(|&a| members.iter().all(|&b| a == b || a & b != a));
        let covering = members.iter().fold(0, |acc, m| acc | m) == (1 << n) - 1;
        if !antichain || !covering || !connected(n, &members) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut img: Vec<u64> = members.iter().map(|&m| Simplex::from_bits(m).image(p).bits()).collect();
                img.sort_unstable();
                img
            })
            .min()
            .expect("at least one permutation");
        classes.insert(canon);
    }
    classes.len()
}

fn connected(n: usize, members: &[u64]) -> bool {
    let mut reached = 1u64;
    loop {
        let next = members.iter().filter(|&&m| m & reached != 0).fold(reached, |acc, m| acc | m);
        if next == reached {
            return reached == (1 << n) - 1;
        }
        reached = next;
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scomplex::{enumerate_corpus, standard_complex, Family};

    #[test]
    fn corpus_counts_match() {
        let c = enumerate_corpus(4, 16).unwrap();
        for n in 1..=4 {
            let ours = c.iter().filter(|k| k.n_vertices() == n).count();
            assert_eq!(ours, corpus_count_oracle(n), "n = {n}");
        }
        assert_eq!(enumerate_corpus(3, 8).unwrap().len(), 5);
    }

    #[test]
    fn small_values() {
        let lim = SearchLimits::default();
        let k = Arc::new(standard_complex(Family::Cycle, 5).unwrap());
        assert_eq!(scat_oracle(&k, &lim).unwrap(), 1);
        let k = Arc::new(standard_complex(Family::Simplex, 3).unwrap());
        assert_eq!(scat_oracle(&k, &lim).unwrap(), 0);
        assert_eq!(simplex_count_oracle(&k), 15);
    }
}
