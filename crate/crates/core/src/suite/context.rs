use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use super::SuiteConfig;
use crate::category::{scat, scat_map, verify_map_cover, Cover};
use crate::contiguity::{class_partition, is_null_class, ClassPartition, SimplicialMap};
use crate::error::{Error, Result};
use crate::fibration_es::EsUniverse;
use crate::limits::SearchLimits;
use crate::scomplex::{enumerate_corpus, Corpus, SimplicialComplex};

/// A computed category value whose cover went through the independent checker.
#[derive(Debug, Clone)]
pub struct Certified {
    pub value: usize,
    pub cover: Cover,
    pub cover_ok: bool,
}

#[derive(Debug, Clone)]
pub struct MapData {
    pub scat: Result<Certified>,
    /// `is_null_class` on cores.
    pub null: Result<bool>,
}

/// Every map between two small corpus members, with naive classes.
#[derive(Debug)]
pub struct Block {
    /// Corpus indices of domain and codomain.
    pub k: usize,
    pub l: usize,
    pub partition: Result<ClassPartition>,
    pub data: Vec<MapData>,
}

impl Block {
    pub fn maps(&self) -> &[SimplicialMap] {
        match &self.partition {
            Ok(p) => &p.maps,
            Err(_) => &[],
        }
    }
}

/// Corpus and per-map data shared by all sections, computed on first use.
pub struct Context {
    pub cfg: SuiteConfig,
    pub limits: SearchLimits,
    pub corpus: Corpus,
    pub complexes: Vec<Arc<SimplicialComplex>>,
    /// Corpus indices of members small enough for map enumeration.
    pub small: Vec<usize>,
    complex_scat: OnceLock<Vec<Result<Certified>>>,
    blocks: OnceLock<Vec<Block>>,
    es_universes: OnceLock<Result<(EsUniverse, EsUniverse)>>,
}

impl Context {
    pub fn new(cfg: &SuiteConfig) -> Result<Self> {
        Context::with_corpus(cfg, enumerate_corpus(cfg.corpus_vertices, cfg.corpus_facets)?)
    }

    /// A context over a given corpus instead of the enumerated one.
    pub fn with_corpus(cfg: &SuiteConfig, corpus: Corpus) -> Result<Self> {
        if corpus.is_empty() {
            return Err(Error::EmptyInput("corpus"));
        }
        let complexes: Vec<_> = corpus.iter().cloned().map(Arc::new).collect();
        let small = (0..complexes.len()).filter(|&i| complexes[i].n_vertices() <= cfg.map_vertices).collect();
        Ok(Context {
            cfg: cfg.clone(),
            limits: cfg.limits,
            corpus,
            complexes,
            small,
            complex_scat: OnceLock::new(),
            blocks: OnceLock::new(),
            es_universes: OnceLock::new(),
        })
    }

    /// `scat(K)` for every corpus member.
    pub fn complex_scat(&self) -> &[Result<Certified>] {
        self.complex_scat.get_or_init(|| {
            self.complexes
                .par_iter()
                .map(|k| {
                    let (value, cover) = scat(k, &self.limits)?;
                    let cover_ok = verify_map_cover(&SimplicialMap::identity(k), &cover).ok;
                    Ok(Certified { value, cover, cover_ok })
                })
                .collect()
        })
    }

    pub fn scat_of(&self, corpus_index: usize) -> Result<&Certified> {
        self.complex_scat()[corpus_index].as_ref().map_err(Clone::clone)
    }

    /// Blocks for every ordered pair of small members, domain-major.
    pub fn blocks(&self) -> &[Block] {
        self.blocks.get_or_init(|| {
            let pairs: Vec<(usize, usize)> =
                self.small.iter().flat_map(|&k| self.small.iter().map(move |&l| (k, l))).collect();
            pairs.par_iter().map(|&(k, l)| self.build_block(k, l)).collect()
        })
    }

    fn build_block(&self, k: usize, l: usize) -> Block {
        let partition = class_partition(&self.complexes[k], &self.complexes[l], &self.limits);
        let data = match &partition {
            Ok(p) => p
                .maps
                .iter()
                .map(|f| MapData {
                    scat: scat_map(f, &self.limits).map(|(value, cover)| {
                        let cover_ok = verify_map_cover(f, &cover).ok;
                        Certified { value, cover, cover_ok }
                    }),
                    null: is_null_class(f, &self.limits).map(|c| c.is_some()),
                })
                .collect(),
            Err(_) => Vec::new(),
        };
        Block { k, l, partition, data }
    }

    /// Block with domain and codomain given by corpus index.
    pub fn block(&self, k: usize, l: usize) -> Option<&Block> {
        let i = self.small.iter().position(|&x| x == k)?;
        let j = self.small.iter().position(|&x| x == l)?;
        self.blocks().get(i * self.small.len() + j)
    }

    /// Every map in every block, as `(block index, map index)`.
    pub fn all_maps(&self) -> Vec<(usize, usize)> {
        self.blocks()
            .iter()
            .enumerate()
            .flat_map(|(b, blk)| (0..blk.maps().len()).map(move |m| (b, m)))
            .collect()
    }

    pub fn map_at(&self, (b, m): (usize, usize)) -> (&SimplicialMap, &MapData, &Block) {
        let blk = &self.blocks()[b];
        (&blk.maps()[m], &blk.data[m], blk)
    }

    /// Corpus members with at most `n` vertices, as a corpus of their own.
    pub fn universe(&self, n: usize) -> Result<Corpus> {
        if n > self.cfg.corpus_vertices {
            return enumerate_corpus(n, self.cfg.corpus_facets);
        }
        Ok(self.corpus.restricted(n))
    }

    /// The Es universe and the next smaller one, for antitonicity.
    pub fn es_universes(&self) -> Result<&(EsUniverse, EsUniverse)> {
        self.es_universes
            .get_or_init(|| {
                let n = self.cfg.es_universe;
                let big = EsUniverse::new(&self.universe(n)?, &self.limits)?;
                let small = EsUniverse::new(&self.universe(n.saturating_sub(1).max(1))?, &self.limits)?;
                Ok((big, small))
            })
            .as_ref()
            .map_err(Clone::clone)
    }
}

/// Category value that may be used in a comparison: certified or an error.
pub fn certified(r: &Result<Certified>) -> Result<usize> {
    match r {
        Ok(c) if c.cover_ok => Ok(c.value),
        Ok(c) => Err(Error::BadParameter(format!("cover for value {} failed the independent check", c.value))),
        Err(e) => Err(e.clone()),
    }
}
