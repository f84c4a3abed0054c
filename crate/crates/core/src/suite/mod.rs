//! Property replay over exhaustive corpora and sampled map sets.
//!
//! Every property is run over an explicit instance set. Each instance ends as
//! a pass, a failure carrying a replayable counterexample, a skip carrying the
//! resource limit that stopped it, or "not applicable" when it falls outside
//! the property's precondition. Resource exhaustion is never counted as a pass.

mod categories;
mod complexes;
mod contiguity;
mod context;
mod es;
mod factorization;
mod fibrations;
mod finite;
mod products;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::limits::SearchLimits;
use crate::scomplex::Corpus;

pub use context::Context;

/// Groups of properties, selectable one by one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Section {
    Complexes,
    Contiguity,
    Category,
    Products,
    Factorization,
    FiniteSpaces,
    Fibrations,
    Es,
}

impl Section {
    pub const ALL: [Section; 8] = [
        Section::Complexes,
        Section::Contiguity,
        Section::Category,
        Section::Products,
        Section::Factorization,
        Section::FiniteSpaces,
        Section::Fibrations,
        Section::Es,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Section::Complexes => "complexes",
            Section::Contiguity => "contiguity",
            Section::Category => "category",
            Section::Products => "products",
            Section::Factorization => "factorization",
            Section::FiniteSpaces => "finite_spaces",
            Section::Fibrations => "fibrations",
            Section::Es => "es",
        }
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Section {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Section::ALL
            .into_iter()
            .find(|x| x.name() == s || x.name().replace('_', "-") == s)
            .ok_or_else(|| Error::BadParameter(format!("unknown suite section {s:?}")))
    }
}

/// Bounds and sample sizes for one run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    /// Corpus of connected complexes on at most this many vertices.
    pub corpus_vertices: usize,
    pub corpus_facets: usize,
    /// Maps are enumerated between corpus members on at most this many vertices.
    pub map_vertices: usize,
    /// Largest product complex (vertex count) the product properties build.
    pub product_vertices: usize,
    /// Largest face poset (point count) fed to the finite-space category search.
    pub face_poset_points: usize,
    /// Posets on at most this many points for monotone-map sweeps.
    pub poset_points: usize,
    /// Posets on at most this many points for the space-category comparison.
    pub space_points: usize,
    /// Universe bound (vertices) for fibration checks.
    pub fibration_universe: usize,
    /// Universe bound (vertices) for Es.
    pub es_universe: usize,
    pub es_n_max: usize,
    /// Instances drawn by each sampled property.
    pub samples: usize,
    pub seed: u64,
    pub sections: Vec<Section>,
    pub limits: SearchLimits,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            corpus_vertices: 5,
            corpus_facets: 10,
            map_vertices: 4,
            product_vertices: 9,
            face_poset_points: 15,
            poset_points: 4,
            space_points: 5,
            fibration_universe: 3,
            es_universe: 4,
            es_n_max: 3,
            samples: 400,
            seed: 0x5ca7,
            sections: Section::ALL.to_vec(),
            limits: SearchLimits::default(),
        }
    }
}

impl SuiteConfig {
    /// Small bounds that still touch every property.
    pub fn quick() -> Self {
        SuiteConfig {
            corpus_vertices: 4,
            map_vertices: 3,
            product_vertices: 6,
            face_poset_points: 11,
            poset_points: 3,
            space_points: 4,
            fibration_universe: 2,
            es_universe: 3,
            samples: 40,
            ..SuiteConfig::default()
        }
    }
}

/// Theorems must hold; harness properties only report what they observe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Theorem,
    Harness,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Nothing was decided: every instance hit a limit.
    Skipped,
    /// Harness property; failures are observations, not defects.
    Reported,
}

/// Outcome of one instance.
#[derive(Debug, Clone)]
pub enum Case {
    Pass,
    Fail(Value),
    Skip(String),
    NotApplicable(String),
}

impl Case {
    pub fn check(ok: bool, counterexample: impl FnOnce() -> Value) -> Case {
        if ok {
            Case::Pass
        } else {
            Case::Fail(counterexample())
        }
    }
}

/// Turns errors into cases: limits become skips, anything else a failure.
pub fn settle(r: Result<Case>) -> Case {
    match r {
        Ok(c) => c,
        Err(e) if e.is_unknown() => Case::Skip(e.to_string()),
        Err(e) => Case::Fail(json!({ "error": e.to_string() })),
    }
}

/// Counts for one property.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Tally {
    pub checked: usize,
    pub failed: usize,
    pub skipped: usize,
    pub not_applicable: usize,
    pub skip_reasons: BTreeMap<String, usize>,
    pub not_applicable_reasons: BTreeMap<String, usize>,
    /// First failure in instance order.
    pub counterexample: Option<Value>,
}

impl Tally {
    pub fn add(&mut self, case: Case) {
        match case {
            Case::Pass => self.checked += 1,
            Case::Fail(cx) => {
                self.checked += 1;
                self.failed += 1;
                self.counterexample.get_or_insert(cx);
            }
            Case::Skip(reason) => {
                self.skipped += 1;
                *self.skip_reasons.entry(reason).or_default() += 1;
            }
            Case::NotApplicable(reason) => {
                self.not_applicable += 1;
                *self.not_applicable_reasons.entry(reason).or_default() += 1;
            }
        }
    }

    pub fn extend(&mut self, cases: impl IntoIterator<Item = Case>) {
        for c in cases {
            self.add(c);
        }
    }

    /// Runs `f` on every instance in parallel and tallies in instance order.
    pub fn run<T, F>(items: &[T], f: F) -> Tally
    where
        T: Sync,
        F: Fn(&T) -> Result<Case> + Sync,
    {
        let mut t = Tally::default();
        t.extend(Tally::cases(items, f));
        t
    }

    /// Cases for every instance, in instance order, for folding into a tally.
    pub fn cases<T, F>(items: &[T], f: F) -> Vec<Case>
    where
        T: Sync,
        F: Fn(&T) -> Result<Case> + Sync,
    {
        items.par_iter().map(|x| settle(f(x))).collect()
    }

    /// Like `run`, for instances that yield several cases each.
    pub fn run_many<T, F>(items: &[T], f: F) -> Tally
    where
        T: Sync,
        F: Fn(&T) -> Result<Vec<Case>> + Sync,
    {
        let cases: Vec<Vec<Case>> = items
            .par_iter()
            .map(|x| match f(x) {
                Ok(cs) => cs,
                Err(e) => vec![settle(Err(e))],
            })
            .collect();
        let mut t = Tally::default();
        t.extend(cases.into_iter().flatten());
        t
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyResult {
    pub section: Section,
    pub name: &'static str,
    pub kind: Kind,
    pub status: Status,
    #[serde(flatten)]
    pub tally: Tally,
    /// Extra counts specific to the property.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub notes: BTreeMap<String, Value>,
    pub elapsed_ms: u128,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub properties: Vec<PropertyResult>,
    pub all_pass: bool,
    /// SHA-256 of the report with every timing field removed.
    pub digest: String,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &PropertyResult> {
        self.properties.iter().filter(|p| p.status == Status::Fail)
    }

    pub fn property(&self, section: Section, name: &str) -> Option<&PropertyResult> {
        self.properties.iter().find(|p| p.section == section && p.name == name)
    }
}

/// SHA-256 of `value` after dropping every `elapsed_ms` and `digest` field.
pub fn timing_free_digest(value: &Value) -> String {
    fn strip(v: &mut Value) {
        match v {
            Value::Object(m) => {
                m.remove("elapsed_ms");
                m.remove("digest");
                m.values_mut().for_each(strip);
            }
            Value::Array(a) => a.iter_mut().for_each(strip),
            _ => {}
        }
    }
    let mut v = value.clone();
    strip(&mut v);
    hex::encode(Sha256::digest(v.to_string().as_bytes()))
}

/// Deterministic generator for one property, independent of run order.
pub(crate) fn rng_for(seed: u64, name: &str) -> ChaCha8Rng {
    let h = Sha256::digest(name.as_bytes());
    let stream = u64::from_le_bytes(h[..8].try_into().expect("eight bytes"));
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Collects properties as they run.
pub(crate) struct Recorder {
    section: Section,
    out: Vec<PropertyResult>,
}

impl Recorder {
    fn new(section: Section) -> Self {
        Recorder { section, out: Vec::new() }
    }

    pub(crate) fn theorem(&mut self, name: &'static str, body: impl FnOnce() -> Tally) {
        self.record(name, Kind::Theorem, || (body(), BTreeMap::new()));
    }

    pub(crate) fn theorem_with_notes(
        &mut self,
        name: &'static str,
        body: impl FnOnce() -> (Tally, BTreeMap<String, Value>),
    ) {
        self.record(name, Kind::Theorem, body);
    }

    pub(crate) fn harness(&mut self, name: &'static str, body: impl FnOnce() -> (Tally, BTreeMap<String, Value>)) {
        self.record(name, Kind::Harness, body);
    }

    fn record(&mut self, name: &'static str, kind: Kind, body: impl FnOnce() -> (Tally, BTreeMap<String, Value>)) {
        let t = Instant::now();
        let (tally, notes) = body();
        let status = match kind {
            Kind::Harness => Status::Reported,
            Kind::Theorem if tally.failed > 0 => Status::Fail,
            Kind::Theorem if tally.checked == 0 && tally.skipped > 0 => Status::Skipped,
            Kind::Theorem => Status::Pass,
        };
        self.out.push(PropertyResult {
            section: self.section,
            name,
            kind,
            status,
            tally,
            notes,
            elapsed_ms: t.elapsed().as_millis(),
        });
    }
}

/// Runs the selected sections in their fixed order.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    run_in(Context::new(config)?)
}

/// Runs the suite over a supplied corpus, e.g. one read from a file.
pub fn run_suite_on(config: &SuiteConfig, corpus: Corpus) -> Result<SuiteReport> {
    run_in(Context::with_corpus(config, corpus)?)
}

fn run_in(ctx: Context) -> Result<SuiteReport> {
    let config = &ctx.cfg;
    let mut properties = Vec::new();
    for section in Section::ALL.into_iter().filter(|s| config.sections.contains(s)) {
        let mut rec = Recorder::new(section);
        match section {
            Section::Complexes => complexes::run(&ctx, &mut rec),
            Section::Contiguity => contiguity::run(&ctx, &mut rec),
            Section::Category => categories::run(&ctx, &mut rec),
            Section::Products => products::run(&ctx, &mut rec),
            Section::Factorization => factorization::run(&ctx, &mut rec),
            Section::FiniteSpaces => finite::run(&ctx, &mut rec),
            Section::Fibrations => fibrations::run(&ctx, &mut rec),
            Section::Es => es::run(&ctx, &mut rec),
        }
        properties.extend(rec.out);
    }
    let all_pass = properties.iter().all(PropertyResult::passed);
    let mut report = SuiteReport { config: config.clone(), properties, all_pass, digest: String::new() };
    report.digest = timing_free_digest(&serde_json::to_value(&report).expect("report serializes"));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sections_parse_both_spellings() {
        assert_eq!("finite-spaces".parse::<Section>().unwrap(), Section::FiniteSpaces);
        assert_eq!("es".parse::<Section>().unwrap(), Section::Es);
        assert!("nope".parse::<Section>().is_err());
    }

    #[test]
    fn digest_ignores_timing() {
        let a = json!({"x": 1, "elapsed_ms": 5, "inner": [{"elapsed_ms": 7, "y": 2}]});
        let b = json!({"x": 1, "elapsed_ms": 9, "inner": [{"elapsed_ms": 1, "y": 2}]});
        assert_eq!(timing_free_digest(&a), timing_free_digest(&b));
        let c = json!({"x": 2});
        assert_ne!(timing_free_digest(&a), timing_free_digest(&c));
    }

    #[test]
    fn limits_become_skips() {
        let mut t = Tally::default();
        t.add(settle(Err(Error::limit("states", 3))));
        t.add(settle(Err(Error::DisconnectedComplex)));
        t.add(Case::Pass);
        assert_eq!((t.checked, t.failed, t.skipped), (2, 1, 1));
        assert!(t.counterexample.is_some());
    }
}
