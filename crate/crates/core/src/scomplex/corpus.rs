use super::{default_label, Simplex, SimplicialComplex};
use crate::error::{Error, Result};

/// Largest vertex count `enumerate_corpus` accepts.
pub const CORPUS_HARD_CAP: usize = 6;

/// All connected complexes up to isomorphism within `bounds`.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub complexes: Vec<SimplicialComplex>,
    /// `(max_vertices, max_facets)`.
    pub bounds: (usize, usize),
    pub exhaustive: bool,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.complexes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.complexes.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SimplicialComplex> {
        self.complexes.iter()
    }

    /// Sub-corpus of members with at most `n` vertices.
    pub fn restricted(&self, max_vertices: usize) -> Corpus {
        Corpus {
            complexes: self
                .complexes
                .iter()
                .filter(|k| k.n_vertices() <= max_vertices)
                .cloned()
                .collect(),
            bounds: (max_vertices.min(self.bounds.0), self.bounds.1),
            exhaustive: self.exhaustive,
        }
    }
}

/// Permutations of `0..n`, each stored as a mask-image table over all `2^n` masks.
fn permutation_tables(n: usize) -> Vec<Vec<u64>> {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }
    let size = 1usize << n;
    perms(n)
        .into_iter()
        .map(|p| {
            (0..size as u64)
                .map(|m| Simplex::from_bits(m).image(&p).bits())
                .collect()
        })
        .collect()
}

/// A family (descending list of masks) is canonical when no relabelling
/// produces a lexicographically larger descending list.
fn is_canonical(family: &[u64], tables: &[Vec<u64>], scratch: &mut Vec<u64>) -> bool {
    for t in tables {
        scratch.clear();
        scratch.extend(family.iter().map(|&m| t[m as usize]));
        scratch.sort_unstable_by(|a, b| b.cmp(a));
        if scratch.as_slice() > family {
            return false;
        }
    }
    true
}

/// Enumerates every connected complex with at most `max_vertices` vertices and
/// `max_facets` facets, one per isomorphism class.
///
/// Orderly generation: facet families are grown by appending a mask smaller than
/// the current minimum, and only families that are the lexicographic maximum of
/// their orbit are kept. Removing the minimum of a canonical family leaves a
/// canonical family, so every class is reached exactly once. Output is sorted by
/// vertex count, facet count, then facet lists.
pub fn enumerate_corpus(max_vertices: usize, max_facets: usize) -> Result<Corpus> {
    if max_vertices > CORPUS_HARD_CAP {
        return Err(Error::limit("corpus vertex count", CORPUS_HARD_CAP));
    }
    let mut complexes = Vec::new();
    for n in 1..=max_vertices {
        let tables = permutation_tables(n);
        let full = (1u64 << n) - 1;
        let mut found: Vec<Vec<u64>> = Vec::new();
        let mut family = Vec::new();
        let mut scratch = Vec::new();
        grow(&mut family, (1u64 << n) - 1, max_facets, &tables, &mut scratch, &mut |fam| {
            let covered = fam.iter().fold(0, |a, m| a | m);
            if covered == full {
                found.push(fam.to_vec());
            }
        });
        for fam in found {
            let labels = (0..n).map(default_label).collect();
            let facets = fam.into_iter().map(Simplex::from_bits).collect();
            let k = SimplicialComplex::normalize(labels, facets)?;
            if k.is_connected() {
                complexes.push(k);
            }
        }
    }
    complexes.sort_by(|a, b| {
        (a.n_vertices(), a.n_facets(), a.facets()).cmp(&(b.n_vertices(), b.n_facets(), b.facets()))
    });
    Ok(Corpus { complexes, bounds: (max_vertices, max_facets), exhaustive: true })
}

fn grow(
    family: &mut Vec<u64>,
    below: u64,
    max_facets: usize,
    tables: &[Vec<u64>],
    scratch: &mut Vec<u64>,
    emit: &mut dyn FnMut(&[u64]),
) {
    if !family.is_empty() {
        emit(family);
    }
    if family.len() == max_facets {
        return;
    }
    // candidate masks strictly below the current minimum, largest first
    let start = family.last().map_or(below, |&m| m - 1);
    for m in (1..=start).rev() {
        let antichain = family.iter().all(|&f| f & m != m && f & m != f);
        if !antichain {
            continue;
        }
        family.push(m);
        if is_canonical(family, tables, scratch) {
            grow(family, below, max_facets, tables, scratch, emit);
        }
        family.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_vertex() {
        let c = enumerate_corpus(1, 1).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.complexes[0], SimplicialComplex::point());
    }

    #[test]
    fn two_vertices() {
        let c = enumerate_corpus(2, 4).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.complexes[1].n_facets(), 1);
        assert_eq!(c.complexes[1].facets()[0].len(), 2);
    }

    #[test]
    fn hard_cap() {
        assert!(enumerate_corpus(7, 3).unwrap_err().is_unknown());
    }

    #[test]
    fn facet_bound_is_respected() {
        let c = enumerate_corpus(4, 2).unwrap();
        assert!(c.iter().all(|k| k.n_facets() <= 2));
    }
}
