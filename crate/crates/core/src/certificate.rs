//! Self-contained certificate files and their re-checking.
//!
//! Checking a certificate never searches: it re-validates maps, contiguity
//! steps, fence comparabilities and coverage directly.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::category::{
    verify_collapsible_cover, verify_factorization, verify_map_cover, verify_subspace_cover, Cover, CoverCheck,
    FactorizationWitness,
};
use crate::contiguity::{verify_chain, ContiguityChain, SimplicialMap};
use crate::error::{Error, Result};
use crate::finite_space::{verify_fence, verify_space_cover, Fence, MonotoneMap, SpaceCover};
use crate::io::{
    assignment_labels, map_between, Assignment, ChainFile, ComplexFile, CoverFile, MapFile, PartTarget, SpaceFile,
    SpaceMapFile,
};
use crate::scomplex::{SimplicialComplex, Subcomplex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Certificate {
    /// Consecutive maps are contiguous.
    Chain { domain: ComplexFile, codomain: ComplexFile, maps: Vec<Assignment> },
    /// `value + 1` parts on each of which `map` is null-contiguous.
    MapCover { map: MapFile, value: usize, cover: CoverFile },
    /// `value + 1` parts each with null-contiguous identity.
    CollapsibleCover { complex: ComplexFile, value: usize, cover: CoverFile },
    /// Parts are listed by indices into `subcomplex`; each part's inclusion
    /// into `complex` is null-contiguous.
    SubspaceCover { complex: ComplexFile, subcomplex: Vec<Vec<String>>, value: usize, cover: CoverFile },
    /// `map` factors as `g ∘ ell` through `k_prime` up to `comm_chain`.
    Factorization {
        map: MapFile,
        level: usize,
        k_prime: ComplexFile,
        ell: Assignment,
        g: Assignment,
        gscat_cover: CoverFile,
        comm_chain: ChainFile,
    },
    /// Consecutive monotone maps are pointwise comparable.
    Fence { domain: SpaceFile, codomain: SpaceFile, maps: Vec<Assignment> },
    /// `value + 1` open sets, each a union of minimal opens of the listed
    /// maximal points, with a fence to a constant per part.
    SpaceCover { map: SpaceMapFile, value: usize, parts: Vec<Vec<String>>, fences: Vec<ChainFile> },
}

/// Outcome of re-checking a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateCheck {
    pub ok: bool,
    pub detail: String,
}

impl CertificateCheck {
    fn pass() -> Self {
        CertificateCheck { ok: true, detail: "valid".into() }
    }

    fn fail(detail: impl Into<String>) -> Self {
        CertificateCheck { ok: false, detail: detail.into() }
    }
}

fn label_list(k: &SimplicialComplex, s: crate::Simplex) -> String {
    let v: Vec<&str> = s.vertices().map(|x| k.label(x)).collect();
    format!("[{}]", v.join(","))
}

fn cover_detail(check: CoverCheck, targets: &[crate::Simplex], k: &SimplicialComplex) -> CertificateCheck {
    if check.ok {
        return CertificateCheck::pass();
    }
    if let Some(i) = check.uncovered_facet {
        return CertificateCheck::fail(format!("facet {} is not covered by any part", label_list(k, targets[i])));
    }
    CertificateCheck::fail(format!("part {} is not certified by its chain", check.bad_part.unwrap_or(0)))
}

fn count_check(found: usize, value: usize) -> Option<CertificateCheck> {
    (found != value + 1).then(|| CertificateCheck::fail(format!("{found} parts do not match claimed value {value}")))
}

/// Non-parse errors while rebuilding a certificate mean the certificate is wrong.
fn rejected(e: Error) -> Result<CertificateCheck> {
    match e {
        Error::Parse(_) => Err(e),
        other => Ok(CertificateCheck::fail(other.to_string())),
    }
}

impl Certificate {
    pub fn chain(c: &ContiguityChain) -> Self {
        let ChainFile { maps } = ChainFile::from_chain(c);
        Certificate::Chain {
            domain: ComplexFile::from_complex(c.domain()),
            codomain: ComplexFile::from_complex(c.codomain()),
            maps,
        }
    }

    pub fn map_cover(f: &SimplicialMap, value: usize, cover: &Cover) -> Self {
        Certificate::MapCover { map: MapFile::from_map(f), value, cover: CoverFile::from_cover(cover, None) }
    }

    pub fn collapsible_cover(k: &SimplicialComplex, value: usize, cover: &Cover) -> Self {
        Certificate::CollapsibleCover {
            complex: ComplexFile::from_complex(k),
            value,
            cover: CoverFile::from_cover(cover, None),
        }
    }

    pub fn subspace_cover(a: &Subcomplex, value: usize, cover: &Cover) -> Self {
        let k = a.parent();
        Certificate::SubspaceCover {
            complex: ComplexFile::from_complex(k),
            subcomplex: a.generators().iter().map(|s| s.vertices().map(|v| k.label(v).to_owned()).collect()).collect(),
            value,
            cover: CoverFile::from_cover(cover, Some(a.generators())),
        }
    }

    pub fn factorization(f: &SimplicialMap, level: usize, w: &FactorizationWitness) -> Self {
        Certificate::Factorization {
            map: MapFile::from_map(f),
            level,
            k_prime: ComplexFile::from_complex(&w.k_prime),
            ell: assignment_labels(w.ell.domain().labels(), w.ell.codomain().labels(), w.ell.assignment()),
            g: assignment_labels(w.g.domain().labels(), w.g.codomain().labels(), w.g.assignment()),
            gscat_cover: CoverFile::from_cover(&w.gscat_cover, None),
            comm_chain: ChainFile::from_chain(&w.comm_chain),
        }
    }

    pub fn fence(fence: &Fence) -> Self {
        let ChainFile { maps } = ChainFile::from_fence(fence);
        Certificate::Fence {
            domain: SpaceFile::from_space(fence.domain()),
            codomain: SpaceFile::from_space(fence.codomain()),
            maps,
        }
    }

    pub fn space_cover(f: &MonotoneMap, value: usize, cover: &SpaceCover) -> Self {
        let x = f.domain();
        Certificate::SpaceCover {
            map: SpaceMapFile::from_map(f),
            value,
            parts: cover.parts.iter().map(|p| p.iter().map(|&q| x.label(q).to_owned()).collect()).collect(),
            fences: cover.fences.iter().map(ChainFile::from_fence).collect(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Chain { .. } => "chain",
            Certificate::MapCover { .. } => "map_cover",
            Certificate::CollapsibleCover { .. } => "collapsible_cover",
            Certificate::SubspaceCover { .. } => "subspace_cover",
            Certificate::Factorization { .. } => "factorization",
            Certificate::Fence { .. } => "fence",
            Certificate::SpaceCover { .. } => "space_cover",
        }
    }

    /// Re-checks the certificate. `Err` only for malformed content.
    pub fn verify(&self) -> Result<CertificateCheck> {
        self.verify_inner().or_else(rejected)
    }

    fn verify_inner(&self) -> Result<CertificateCheck> {
        match self {
            Certificate::Chain { domain, codomain, maps } => {
                let k = Arc::new(domain.to_complex()?);
                let l = Arc::new(codomain.to_complex()?);
                let chain = ChainFile { maps: maps.clone() }.to_chain(&k, &l)?;
                let check = verify_chain(&chain);
                Ok(match check.first_failure {
                    None => CertificateCheck::pass(),
                    Some(i) => CertificateCheck::fail(format!("map {i} is not simplicial or not contiguous to map {}", i.saturating_sub(1))),
                })
            }
            Certificate::MapCover { map, value, cover } => {
                let f = map.to_map()?;
                let c = cover.to_cover(f.domain(), None, PartTarget::Map(f.codomain()))?;
                if let Some(bad) = count_check(c.len(), *value) {
                    return Ok(bad);
                }
                Ok(cover_detail(verify_map_cover(&f, &c), f.domain().facets(), f.domain()))
            }
            Certificate::CollapsibleCover { complex, value, cover } => {
                let k = Arc::new(complex.to_complex()?);
                let c = cover.to_cover(&k, None, PartTarget::Itself)?;
                if let Some(bad) = count_check(c.len(), *value) {
                    return Ok(bad);
                }
                Ok(cover_detail(verify_collapsible_cover(&k, &c), k.facets(), &k))
            }
            Certificate::SubspaceCover { complex, subcomplex, value, cover } => {
                let k = Arc::new(complex.to_complex()?);
                let gens = subcomplex
                    .iter()
                    .map(|s| {
                        let ids = s
                            .iter()
                            .map(|l| k.vertex(l).ok_or_else(|| Error::Parse(format!("unknown vertex {l:?}"))))
                            .collect::<Result<Vec<_>>>()?;
                        crate::Simplex::from_vertices(ids)
                    })
                    .collect::<Result<Vec<_>>>()?;
                let a = Subcomplex::generated(&k, gens.clone())?;
                let c = cover.to_cover(&k, Some(&gens), PartTarget::Map(&k))?;
                if let Some(bad) = count_check(c.len(), *value) {
                    return Ok(bad);
                }
                Ok(cover_detail(verify_subspace_cover(&k, &a, &c), a.generators(), &k))
            }
            Certificate::Factorization { map, level, k_prime, ell, g, gscat_cover, comm_chain } => {
                let f = map.to_map()?;
                let kp = Arc::new(k_prime.to_complex()?);
                let ell = map_between(f.domain(), &kp, ell)?;
                let g = map_between(&kp, f.codomain(), g)?;
                let gscat_cover = gscat_cover.to_cover(&kp, None, PartTarget::Itself)?;
                let comm_chain = comm_chain.to_chain(f.domain(), f.codomain())?;
                let w = FactorizationWitness { k_prime: kp, ell, g, gscat_cover, comm_chain };
                Ok(if verify_factorization(&w, &f, *level) {
                    CertificateCheck::pass()
                } else {
                    CertificateCheck::fail("factorization does not verify")
                })
            }
            Certificate::Fence { domain, codomain, maps } => {
                let x = Arc::new(domain.to_space()?);
                let y = Arc::new(codomain.to_space()?);
                let fence = ChainFile { maps: maps.clone() }.to_fence(&x, &y)?;
                Ok(match verify_fence(&fence).first_failure {
                    None => CertificateCheck::pass(),
                    Some(i) => CertificateCheck::fail(format!("map {i} is not monotone or not comparable to its predecessor")),
                })
            }
            Certificate::SpaceCover { map, value, parts, fences } => {
                let f = map.to_map()?;
                let x = f.domain();
                let parts = parts
                    .iter()
                    .map(|p| {
                        p.iter()
                            .map(|l| {
                                x.labels().iter().position(|m| m == l).ok_or_else(|| Error::Parse(format!("unknown element {l:?}")))
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                if let Some(bad) = count_check(parts.len(), *value) {
                    return Ok(bad);
                }
                let mut fs = Vec::with_capacity(fences.len());
                for (part, fence) in parts.iter().zip(fences) {
                    let mask = part.iter().fold(0u64, |acc, &p| acc | x.down_set(p));
                    let (r, _) = f.restrict(mask)?;
                    fs.push(fence.to_fence(r.domain(), r.codomain())?);
                }
                if fs.len() != fences.len() {
                    return Ok(CertificateCheck::fail("fence count does not match part count"));
                }
                let cover = SpaceCover { parts, fences: fs };
                Ok(if verify_space_cover(&f, &cover) {
                    CertificateCheck::pass()
                } else {
                    CertificateCheck::fail("space cover does not verify")
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{build_factorization, gscat_upper, scat, scat_map, subspace_scat};
    use crate::io::{parse, to_pretty};
    use crate::scomplex::{standard_complex, Family};
    use crate::SearchLimits;

    fn lim() -> SearchLimits {
        SearchLimits::default()
    }

    fn round(c: &Certificate) -> CertificateCheck {
        let back: Certificate = parse(&to_pretty(c)).unwrap();
        assert_eq!(&back, c);
        back.verify().unwrap()
    }

    #[test]
    fn emitted_certificates_verify() {
        let k = Arc::new(standard_complex(Family::Cycle, 4).unwrap());
        let id = SimplicialMap::identity(&k);
        let (n, cover) = scat(&k, &lim()).unwrap();
        assert!(round(&Certificate::map_cover(&id, n, &cover)).ok);
        assert!(round(&Certificate::chain(&cover.chains[0])).ok);
        let (g, gc) = gscat_upper(&k, &lim()).unwrap();
        assert!(round(&Certificate::collapsible_cover(&k, g, &gc)).ok);
        let a = Subcomplex::from_facet_indices(&k, &[0, 1]);
        let (s, sc) = subspace_scat(&k, &a, &lim()).unwrap();
        assert!(round(&Certificate::subspace_cover(&a, s, &sc)).ok);
        let c = SimplicialMap::constant(&k, &k, 0).unwrap();
        let (m, mc) = scat_map(&c, &lim()).unwrap();
        let w = build_factorization(&c, &mc).unwrap();
        assert!(round(&Certificate::factorization(&c, m, &w)).ok);
    }

    #[test]
    fn missing_facet_is_named() {
        let k = Arc::new(standard_complex(Family::Cycle, 4).unwrap());
        let id = SimplicialMap::identity(&k);
        let (n, mut cover) = scat(&k, &lim()).unwrap();
        let dropped = cover.parts[1].facet_indices();
        cover.parts.truncate(1);
        cover.chains.truncate(1);
        let cert = Certificate::map_cover(&id, n - 1, &cover);
        let check = round(&cert);
        assert!(!check.ok);
        let missing = dropped.iter().find(|&&i| !cover.parts[0].contains(k.facets()[i])).unwrap();
        assert!(check.detail.contains(&label_list(&k, k.facets()[*missing])));
    }

    #[test]
    fn wrong_value_and_bad_chain_fail() {
        let k = Arc::new(standard_complex(Family::Cycle, 4).unwrap());
        let id = SimplicialMap::identity(&k);
        let (n, cover) = scat(&k, &lim()).unwrap();
        assert!(!round(&Certificate::map_cover(&id, n + 1, &cover)).ok);
        // constants at opposite vertices of C4 are not contiguous
        let a = SimplicialMap::constant(&k, &k, 0).unwrap();
        let c = SimplicialMap::constant(&k, &k, 2).unwrap();
        let chain = ContiguityChain::from_assignments(k.clone(), k.clone(), vec![a.assignment().to_vec(), c.assignment().to_vec()]);
        let check = round(&Certificate::chain(&chain));
        assert!(!check.ok);
        assert!(check.detail.contains("map 1"));
    }
}
