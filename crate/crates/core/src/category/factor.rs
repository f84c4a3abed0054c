use std::sync::Arc;

use super::{verify_collapsible_cover, verify_map_cover, Cover};
use crate::contiguity::{compose, reduce, verify_chain_between, ContiguityChain, SimplicialMap};
use crate::error::{Error, Result};
use crate::scomplex::{fresh_label, Simplex, SimplicialComplex, Subcomplex, VertexId, MAX_VERTICES};

/// `f = g ∘ ℓ` up to contiguity, with `K'` covered by `n + 1` collapsible parts.
#[derive(Debug, Clone)]
pub struct FactorizationWitness {
    pub k_prime: Arc<SimplicialComplex>,
    /// `K -> K'`.
    pub ell: SimplicialMap,
    /// `K' -> L`.
    pub g: SimplicialMap,
    /// Cover of `K'` by parts with null-contiguous identity.
    pub gscat_cover: Cover,
    /// From `g ∘ ℓ` to `f`.
    pub comm_chain: ContiguityChain,
}

/// Builds `K'` from a categorical cover of `f`.
///
/// Part `j` with null chain `h_0 = f|U_j, ..., h_m` is replaced by a telescope:
/// levels `0..=t` of copies of `U_j`, consecutive levels joined by the prisms
/// `σ × {s, s+1}`, and the last level coned off by an apex `w_j`. Here `t` is
/// the first index at which `h_t` is contiguous to a constant `c`. Level 0 is
/// `U_j` itself, shared with the other parts. `g` sends `(u, s)` to `h_s(u)`
/// and `w_j` to `c`; contiguity of consecutive `h_s` makes every prism land on
/// a simplex. `ℓ` is the inclusion of level 0, so `g ∘ ℓ = f` exactly. When
/// `t = 0` the telescope is the cone on `U_j`.
pub fn build_factorization(f: &SimplicialMap, cover: &Cover) -> Result<FactorizationWitness> {
    let check = verify_map_cover(f, cover);
    if !check.ok {
        return Err(Error::BadParameter(format!("cover does not certify the map: {check:?}")));
    }
    let k = f.domain();
    let l = f.codomain();
    let n = k.n_vertices();

    let mut labels: Vec<String> = k.labels().to_vec();
    let mut g_assign: Vec<VertexId> = f.assignment().to_vec();
    let mut part_facets: Vec<Vec<Simplex>> = Vec::new();

    for (j, (part, chain)) in cover.parts.iter().zip(&cover.chains).enumerate() {
        let r = f.restrict(part)?;
        let u = r.map.domain();
        let levels = chain.assignments();
        let (t, c) = first_contiguous_to_constant(u, l, levels);
        let base = labels.len();
        let copies = u.n_vertices() * t;
        if base + copies + 1 > MAX_VERTICES {
            return Err(Error::limit("vertices of the factorization complex", MAX_VERTICES));
        }
        // vertex (u, s) for s >= 1 gets id base + (s - 1) * |U| + u
        let id = |v: VertexId, s: usize| if s == 0 { r.embedding[v] } else { base + (s - 1) * u.n_vertices() + v };
        for s in 1..=t {
            for v in 0..u.n_vertices() {
                labels.push(fresh_label(&labels, &format!("{}|{j}.{s}", u.label(v))));
                g_assign.push(levels[s][v]);
            }
        }
        let apex = labels.len();
        labels.push(fresh_label(&labels, &format!("^{j}")));
        g_assign.push(c);

        let mut facets = Vec::new();
        for sigma in u.facets() {
            for s in 0..t {
                facets.push(Simplex::from_vertices(sigma.vertices().flat_map(|v| [id(v, s), id(v, s + 1)]))?);
            }
            facets.push(Simplex::from_vertices(sigma.vertices().map(|v| id(v, t)))?.with(apex));
        }
        part_facets.push(facets);
    }

    let all: Vec<Simplex> = part_facets.iter().flatten().copied().collect();
    let k_prime = Arc::new(SimplicialComplex::normalize(labels, all)?);
    if k_prime.n_vertices() != g_assign.len() {
        return Err(Error::PasteFailure("a vertex of the factorization complex is unused".into()));
    }
    let ell = SimplicialMap::new(Arc::clone(k), Arc::clone(&k_prime), (0..n).collect())
        .map_err(|e| Error::PasteFailure(format!("inclusion of the base is not simplicial: {e}")))?;
    let g = SimplicialMap::new(Arc::clone(&k_prime), Arc::clone(l), g_assign)
        .map_err(|e| Error::PasteFailure(format!("glued map is not simplicial: {e}")))?;

    let mut parts = Vec::with_capacity(part_facets.len());
    let mut chains = Vec::with_capacity(part_facets.len());
    for facets in part_facets {
        let part = Subcomplex::generated(&k_prime, facets)?;
        let (m, _) = part.standalone()?;
        let data = reduce(&Arc::new(m));
        if !data.is_point() {
            return Err(Error::PasteFailure("telescope did not collapse".into()));
        }
        chains.push(data.idr_chain);
        parts.push(part);
    }
    let gl = compose(&g, &ell)?;
    if gl != *f {
        return Err(Error::PasteFailure("g ∘ ℓ differs from f".into()));
    }
    Ok(FactorizationWitness {
        k_prime,
        ell,
        g,
        gscat_cover: Cover { parts, chains },
        comm_chain: ContiguityChain::trivial(f),
    })
}

/// First `t` with `levels[t]` contiguous to a constant, and the least such constant.
fn first_contiguous_to_constant(
    u: &SimplicialComplex,
    l: &SimplicialComplex,
    levels: &[Vec<VertexId>],
) -> (usize, VertexId) {
    for (t, h) in levels.iter().enumerate() {
        for c in 0..l.n_vertices() {
            if u.facets().iter().all(|s| l.contains(s.image(h).with(c))) {
                return (t, c);
            }
        }
    }
    unreachable!("a verified null chain ends at a constant")
}

/// Independent check of a factorization witness at level `n`.
///
/// Re-validates `ℓ` and `g`, the collapsible cover of `K'` (at most `n + 1`
/// parts, each chain running from the part's identity to a constant) and the
/// chain from `g ∘ ℓ` to `f`. No search is involved.
pub fn verify_factorization(w: &FactorizationWitness, f: &SimplicialMap, n: usize) -> bool {
    let maps_ok = SimplicialMap::new(Arc::clone(w.ell.domain()), Arc::clone(w.ell.codomain()), w.ell.assignment().to_vec()).is_ok()
        && SimplicialMap::new(Arc::clone(w.g.domain()), Arc::clone(w.g.codomain()), w.g.assignment().to_vec()).is_ok()
        && **w.ell.domain() == **f.domain()
        && **w.ell.codomain() == *w.k_prime
        && **w.g.domain() == *w.k_prime
        && **w.g.codomain() == **f.codomain();
    if !maps_ok || w.gscat_cover.len() > n + 1 {
        return false;
    }
    if !verify_collapsible_cover(&w.k_prime, &w.gscat_cover).ok {
        return false;
    }
    match compose(&w.g, &w.ell) {
        Ok(gl) => verify_chain_between(&w.comm_chain, &gl, f),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{gscat_upper, scat, scat_map};
    use crate::scomplex::{are_isomorphic, standard_complex, Family};
    use crate::SearchLimits;

    fn std(f: Family, n: usize) -> Arc<SimplicialComplex> {
        Arc::new(standard_complex(f, n).unwrap())
    }

    #[test]
    fn constant_map_factors_through_the_cone() {
        let k = std(Family::Cycle, 4);
        let c = SimplicialMap::constant(&k, &k, 1).unwrap();
        let (n, cover) = scat_map(&c, &SearchLimits::default()).unwrap();
        assert_eq!(n, 0);
        let w = build_factorization(&c, &cover).unwrap();
        assert!(verify_factorization(&w, &c, 0));
        let cone = k.cone().unwrap();
        assert!(are_isomorphic(&w.k_prime, &cone, &SearchLimits::default()).unwrap().is_some());
    }

    #[test]
    fn identity_of_c4() {
        let k = std(Family::Cycle, 4);
        let id = SimplicialMap::identity(&k);
        let (n, cover) = scat(&k, &SearchLimits::default()).unwrap();
        let w = build_factorization(&id, &cover).unwrap();
        assert!(verify_factorization(&w, &id, n));
        assert!(!verify_factorization(&w, &id, 0));
        let wide = SearchLimits::default().with_max_subsets(1 << 22);
        assert!(gscat_upper(&w.k_prime, &wide).unwrap().0 <= n);
    }

    #[test]
    fn corrupted_witnesses_fail() {
        let k = std(Family::Cycle, 4);
        let id = SimplicialMap::identity(&k);
        let (n, cover) = scat(&k, &SearchLimits::default()).unwrap();
        let w = build_factorization(&id, &cover).unwrap();

        let mut bad = w.clone();
        let mut a = bad.ell.assignment().to_vec();
        a.swap(0, 2);
        bad.ell = SimplicialMap::new(k.clone(), w.k_prime.clone(), a).unwrap();
        assert!(!verify_factorization(&bad, &id, n));

        let mut swapped = w.clone();
        swapped.k_prime = k.clone();
        assert!(!verify_factorization(&swapped, &id, n));
    }
}
