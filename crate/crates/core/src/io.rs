//! JSON file formats for complexes, maps, chains, covers and finite spaces.
//!
//! Vertices are referred to by label everywhere. Unknown fields are rejected.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::category::Cover;
use crate::contiguity::{ContiguityChain, SimplicialMap};
use crate::error::{Error, Result};
use crate::finite_space::{Fence, FiniteSpace, MonotoneMap};
use crate::scomplex::{Corpus, SimplicialComplex, Subcomplex, VertexId};

/// `{"vertices": [...], "facets": [[...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
}

/// Label-to-label vertex function.
pub type Assignment = BTreeMap<String, String>;

/// `{"domain": <complex>, "codomain": <complex>, "map": {"a": "x", ...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub domain: ComplexFile,
    pub codomain: ComplexFile,
    pub map: Assignment,
}

/// `{"maps": [<assignment>, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainFile {
    pub maps: Vec<Assignment>,
}

/// `{"parts": [[facet indices], ...], "chains": [<chain>, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverFile {
    pub parts: Vec<Vec<usize>>,
    pub chains: Vec<ChainFile>,
}

/// `{"elements": [...], "covers": [["a", "c"], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub elements: Vec<String>,
    pub covers: Vec<[String; 2]>,
}

/// A monotone map between finite spaces, in the shape of `MapFile`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceMapFile {
    pub domain: SpaceFile,
    pub codomain: SpaceFile,
    pub map: Assignment,
}

/// An enumerated corpus with per-vertex-count class counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusFile {
    pub max_vertices: usize,
    pub max_facets: usize,
    pub exhaustive: bool,
    /// Isomorphism classes per vertex count.
    pub counts: BTreeMap<usize, usize>,
    pub complexes: Vec<ComplexFile>,
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("file types serialize")
}

impl ComplexFile {
    pub fn from_complex(k: &SimplicialComplex) -> Self {
        ComplexFile { vertices: k.labels().to_vec(), facets: k.facet_labels() }
    }

    /// Vertices listed but in no facet become isolated points.
    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        if self.vertices.is_empty() {
            return Err(Error::EmptyInput("vertex list"));
        }
        let index: BTreeMap<&str, VertexId> =
            self.vertices.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        if index.len() != self.vertices.len() {
            return Err(Error::Parse("duplicate vertex label".into()));
        }
        let mut facets = Vec::with_capacity(self.facets.len());
        let mut used = vec![false; self.vertices.len()];
        for f in &self.facets {
            let ids = f
                .iter()
                .map(|l| index.get(l.as_str()).copied().ok_or_else(|| Error::Parse(format!("unknown vertex {l:?}"))))
                .collect::<Result<Vec<_>>>()?;
            for &v in &ids {
                used[v] = true;
            }
            facets.push(ids);
        }
        facets.extend(used.iter().enumerate().filter(|(_, u)| !**u).map(|(v, _)| vec![v]));
        SimplicialComplex::with_labels(self.vertices.clone(), &facets)
    }
}

pub fn assignment_labels(domain: &[String], codomain: &[String], a: &[usize]) -> Assignment {
    domain.iter().zip(a).map(|(d, &c)| (d.clone(), codomain[c].clone())).collect()
}

pub fn assignment_ids(domain: &[String], codomain: &[String], a: &Assignment) -> Result<Vec<usize>> {
    if let Some(extra) = a.keys().find(|k| !domain.contains(k)) {
        return Err(Error::Parse(format!("map names unknown vertex {extra:?}")));
    }
    domain
        .iter()
        .map(|d| {
            let img = a.get(d).ok_or_else(|| Error::Parse(format!("map has no image for {d:?}")))?;
            codomain
                .iter()
                .position(|c| c == img)
                .ok_or_else(|| Error::Parse(format!("image {img:?} is not in the codomain")))
        })
        .collect()
}

impl MapFile {
    pub fn from_map(f: &SimplicialMap) -> Self {
        MapFile {
            domain: ComplexFile::from_complex(f.domain()),
            codomain: ComplexFile::from_complex(f.codomain()),
            map: assignment_labels(f.domain().labels(), f.codomain().labels(), f.assignment()),
        }
    }

    pub fn to_map(&self) -> Result<SimplicialMap> {
        let k = Arc::new(self.domain.to_complex()?);
        let l = Arc::new(self.codomain.to_complex()?);
        map_between(&k, &l, &self.map)
    }
}

pub fn map_between(k: &Arc<SimplicialComplex>, l: &Arc<SimplicialComplex>, a: &Assignment) -> Result<SimplicialMap> {
    let ids = assignment_ids(k.labels(), l.labels(), a)?;
    SimplicialMap::new(Arc::clone(k), Arc::clone(l), ids)
}

impl ChainFile {
    pub fn from_chain(c: &ContiguityChain) -> Self {
        let (d, t) = (c.domain().labels(), c.codomain().labels());
        ChainFile { maps: c.assignments().iter().map(|a| assignment_labels(d, t, a)).collect() }
    }

    /// Reads the maps without checking them; `verify_chain` does that.
    pub fn to_chain(&self, k: &Arc<SimplicialComplex>, l: &Arc<SimplicialComplex>) -> Result<ContiguityChain> {
        if self.maps.is_empty() {
            return Err(Error::EmptyInput("chain"));
        }
        let maps = self
            .maps
            .iter()
            .map(|a| assignment_ids(k.labels(), l.labels(), a))
            .collect::<Result<Vec<_>>>()?;
        Ok(ContiguityChain::from_assignments(Arc::clone(k), Arc::clone(l), maps))
    }

    pub fn from_fence(fence: &Fence) -> Self {
        let (d, t) = (fence.domain().labels(), fence.codomain().labels());
        ChainFile { maps: fence.assignments().iter().map(|a| assignment_labels(d, t, a)).collect() }
    }

    pub fn to_fence(&self, x: &Arc<FiniteSpace>, y: &Arc<FiniteSpace>) -> Result<Fence> {
        if self.maps.is_empty() {
            return Err(Error::EmptyInput("fence"));
        }
        let maps = self
            .maps
            .iter()
            .map(|a| assignment_ids(x.labels(), y.labels(), a))
            .collect::<Result<Vec<_>>>()?;
        Ok(Fence::from_assignments(Arc::clone(x), Arc::clone(y), maps))
    }
}

/// How the chain of a cover part relates to the part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartTarget<'a> {
    /// Chains run from `f` restricted to the part; codomain is `f`'s.
    Map(&'a Arc<SimplicialComplex>),
    /// Chains run from the identity of the standalone part.
    Itself,
}

impl CoverFile {
    /// Parts are listed by facet indices of `parent`, or by indices into
    /// `generators` when those are given.
    pub fn from_cover(cover: &Cover, generators: Option<&[crate::Simplex]>) -> Self {
        let parts = match generators {
            None => cover.part_facets(),
            Some(gens) => cover
                .parts
                .iter()
                .map(|p| (0..gens.len()).filter(|&i| p.contains(gens[i])).collect())
                .collect(),
        };
        CoverFile { parts, chains: cover.chains.iter().map(ChainFile::from_chain).collect() }
    }

    pub fn to_cover(
        &self,
        parent: &Arc<SimplicialComplex>,
        generators: Option<&[crate::Simplex]>,
        target: PartTarget<'_>,
    ) -> Result<Cover> {
        let pool = generators.unwrap_or(parent.facets());
        let mut parts = Vec::with_capacity(self.parts.len());
        for idx in &self.parts {
            if let Some(&bad) = idx.iter().find(|&&i| i >= pool.len()) {
                return Err(Error::Parse(format!("part index {bad} out of range")));
            }
            if idx.is_empty() {
                return Err(Error::Parse("empty cover part".into()));
            }
            parts.push(Subcomplex::generated(parent, idx.iter().map(|&i| pool[i]))?);
        }
        let mut chains = Vec::with_capacity(self.chains.len());
        for (j, c) in self.chains.iter().enumerate() {
            let domain = match parts.get(j) {
                Some(p) => Arc::new(p.standalone()?.0),
                None => return Err(Error::Parse("more chains than parts".into())),
            };
            let codomain = match target {
                PartTarget::Map(l) => Arc::clone(l),
                PartTarget::Itself => Arc::clone(&domain),
            };
            chains.push(c.to_chain(&domain, &codomain)?);
        }
        Ok(Cover { parts, chains })
    }
}

impl CorpusFile {
    pub fn from_corpus(c: &Corpus) -> Self {
        let mut counts = BTreeMap::new();
        for k in c.iter() {
            *counts.entry(k.n_vertices()).or_default() += 1;
        }
        CorpusFile {
            max_vertices: c.bounds.0,
            max_facets: c.bounds.1,
            exhaustive: c.exhaustive,
            counts,
            complexes: c.iter().map(ComplexFile::from_complex).collect(),
        }
    }

    /// Members must be connected; the listed counts are not trusted.
    pub fn to_corpus(&self) -> Result<Corpus> {
        let complexes = self.complexes.iter().map(ComplexFile::to_complex).collect::<Result<Vec<_>>>()?;
        if complexes.iter().any(|k| !k.is_connected()) {
            return Err(Error::DisconnectedComplex);
        }
        if complexes.is_empty() {
            return Err(Error::EmptyInput("corpus"));
        }
        Ok(Corpus { complexes, bounds: (self.max_vertices, self.max_facets), exhaustive: self.exhaustive })
    }
}

impl SpaceFile {
    pub fn from_space(x: &FiniteSpace) -> Self {
        let l = x.labels();
        SpaceFile {
            elements: l.to_vec(),
            covers: x.covers().into_iter().map(|(a, b)| [l[a].clone(), l[b].clone()]).collect(),
        }
    }

    pub fn to_space(&self) -> Result<FiniteSpace> {
        let pairs: Vec<(&str, &str)> = self.covers.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
        let elements: Vec<&str> = self.elements.iter().map(String::as_str).collect();
        FiniteSpace::from_labels(&elements, &pairs)
    }
}

impl SpaceMapFile {
    pub fn from_map(f: &MonotoneMap) -> Self {
        SpaceMapFile {
            domain: SpaceFile::from_space(f.domain()),
            codomain: SpaceFile::from_space(f.codomain()),
            map: assignment_labels(f.domain().labels(), f.codomain().labels(), f.assignment()),
        }
    }

    pub fn to_map(&self) -> Result<MonotoneMap> {
        let x = Arc::new(self.domain.to_space()?);
        let y = Arc::new(self.codomain.to_space()?);
        let ids = assignment_ids(x.labels(), y.labels(), &self.map)?;
        MonotoneMap::new(x, y, ids)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{scat, verify_map_cover};
    use crate::scomplex::{standard_complex, Family};
    use crate::SearchLimits;

    #[test]
    fn complex_round_trip() {
        let text = r#"{"vertices":["a","b","c","d"],"facets":[["a","b"],["b","c"],["c","d"],["a","d"]]}"#;
        let f: ComplexFile = parse(text).unwrap();
        let k = f.to_complex().unwrap();
        assert_eq!(k, standard_complex(Family::Cycle, 4).unwrap());
        assert_eq!(ComplexFile::from_complex(&k).to_complex().unwrap(), k);
        let bad = r#"{"vertices":["a"],"facets":[["a"]],"extra":1}"#;
        assert!(matches!(parse::<ComplexFile>(bad), Err(Error::Parse(_))));
        let unknown = ComplexFile { vertices: vec!["a".into()], facets: vec![vec!["b".into()]] };
        assert!(matches!(unknown.to_complex(), Err(Error::Parse(_))));
        let isolated = ComplexFile { vertices: vec!["a".into(), "b".into()], facets: vec![vec!["a".into()]] };
        assert!(!isolated.to_complex().unwrap().is_connected());
    }

    #[test]
    fn map_and_cover_round_trip() {
        let k = Arc::new(standard_complex(Family::Cycle, 4).unwrap());
        let f = SimplicialMap::new(k.clone(), k.clone(), vec![1, 2, 3, 0]).unwrap();
        let mf = MapFile::from_map(&f);
        let back: MapFile = parse(&to_pretty(&mf)).unwrap();
        assert_eq!(back.to_map().unwrap(), f);

        let (_, cover) = scat(&k, &SearchLimits::default()).unwrap();
        let cf = CoverFile::from_cover(&cover, None);
        let back: CoverFile = parse(&to_pretty(&cf)).unwrap();
        let c2 = back.to_cover(&k, None, PartTarget::Map(&k)).unwrap();
        assert!(verify_map_cover(&SimplicialMap::identity(&k), &c2).ok);
    }

    #[test]
    fn space_round_trip() {
        let text = r#"{"elements":["a","b","c","d"],"covers":[["a","c"],["b","c"],["a","d"],["b","d"]]}"#;
        let s: SpaceFile = parse(text).unwrap();
        let x = s.to_space().unwrap();
        assert_eq!(x.len(), 4);
        assert_eq!(SpaceFile::from_space(&x).to_space().unwrap(), x);
    }
}
