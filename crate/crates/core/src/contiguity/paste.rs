use std::sync::Arc;

use super::{check_simplicial, same_complex, Restriction, SimplicialMap};
use crate::error::{Error, Result};

/// Glues two maps defined on subcomplexes of one parent into a map on their union.
///
/// The maps must agree on every shared vertex. Simpliciality of the glued map is
/// checked again rather than assumed.
pub fn paste_maps(f: &Restriction, g: &Restriction) -> Result<Restriction> {
    if !same_complex(f.map.codomain(), g.map.codomain()) {
        return Err(Error::DomainMismatch("pasted maps need one codomain"));
    }
    let union = f.part.union(&g.part)?;
    let (complex, embedding) = union.standalone()?;
    let lookup = |r: &Restriction, v| r.embedding.iter().position(|&p| p == v).map(|i| r.map.apply(i));
    let mut assignment = Vec::with_capacity(embedding.len());
    for &v in &embedding {
        let value = match (lookup(f, v), lookup(g, v)) {
            (Some(a), Some(b)) if a != b => return Err(Error::AgreementFailure { vertex: v }),
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => unreachable!("vertex of the union lies in one part"),
        };
        assignment.push(value);
    }
    let codomain = Arc::clone(f.map.codomain());
    if let Err(Error::NotSimplicial { simplex }) = check_simplicial(&complex, &codomain, &assignment) {
        // report the offending simplex in parent ids
        return Err(Error::NotSimplicial { simplex: simplex.iter().map(|&i| embedding[i]).collect() });
    }
    Ok(Restriction {
        part: union,
        map: SimplicialMap::new_unchecked(Arc::new(complex), codomain, assignment),
        embedding,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scomplex::{standard_complex, Family, SimplicialComplex, Subcomplex};

    fn c4() -> Arc<SimplicialComplex> {
        Arc::new(standard_complex(Family::Cycle, 4).unwrap())
    }

    #[test]
    fn pasting_a_map_with_itself() {
        let k = c4();
        let part = Subcomplex::from_facet_indices(&k, &[0, 1]);
        let r = SimplicialMap::identity(&k).restrict(&part).unwrap();
        let p = paste_maps(&r, &r).unwrap();
        assert_eq!(p.map.assignment(), r.map.assignment());
    }

    #[test]
    fn two_paths_paste_to_the_identity() {
        let k = c4();
        // facets ab, ad, bc, cd
        let u = Subcomplex::from_facet_indices(&k, &[0, 2]);
        let v = Subcomplex::from_facet_indices(&k, &[1, 3]);
        let id = SimplicialMap::identity(&k);
        let p = paste_maps(&id.restrict(&u).unwrap(), &id.restrict(&v).unwrap()).unwrap();
        assert_eq!(p.embedding, vec![0, 1, 2, 3]);
        assert_eq!(p.map.assignment(), &[0, 1, 2, 3]);
    }

    #[test]
    fn overlapping_constants() {
        let k = c4();
        let u = Subcomplex::from_facet_indices(&k, &[0, 2]);
        let v = Subcomplex::from_facet_indices(&k, &[2, 3]);
        let c = SimplicialMap::constant(&k, &k, 1).unwrap();
        let p = paste_maps(&c.restrict(&u).unwrap(), &c.restrict(&v).unwrap()).unwrap();
        assert_eq!(p.map.constant_value(), Some(1));
    }

    #[test]
    fn disagreement_is_named() {
        let k = c4();
        let u = Subcomplex::from_facet_indices(&k, &[0]);
        let v = Subcomplex::from_facet_indices(&k, &[2]);
        let a = SimplicialMap::constant(&k, &k, 0).unwrap().restrict(&u).unwrap();
        let b = SimplicialMap::constant(&k, &k, 2).unwrap().restrict(&v).unwrap();
        assert_eq!(paste_maps(&a, &b).unwrap_err(), Error::AgreementFailure { vertex: 1 });
    }
}
