use std::path::{Path, PathBuf};

use clap::Args;
use serde_json::{json, Value};

use scat_core::category::{gscat_exact, gscat_upper, scat, scat_map};
use scat_core::certificate::Certificate;
use scat_core::contiguity::{core, is_contiguous, same_contiguity_class, Product, SimplicialMap};
use scat_core::fibration_es::{
    es_bounded_in, es_crosscheck_in, fiber, is_fibration_over, test_maps, EsUniverse, FibrationStatus,
    FibrationVerdict,
};
use scat_core::finite_space::{cat_map, cat_space, chi_map, face_poset, k_map, order_complex, MonotoneMap};
use scat_core::io::{ComplexFile, CorpusFile, MapFile, SpaceFile, SpaceMapFile};
use scat_core::scomplex::{enumerate_corpus, Corpus};
use scat_core::suite::{run_suite, run_suite_on, Kind, Section, SuiteConfig, SuiteReport};
use scat_core::{SearchLimits, SimplicialComplex};

use crate::failure::Failure;
use crate::input::Inputs;
use crate::report::{write_json, Outcome};
use crate::{Command, UniverseArgs};

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    /// Small bounds that still exercise every property.
    #[arg(long)]
    quick: bool,
    /// Full suite configuration as JSON; other flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Corpus file to run over instead of the enumerated corpus.
    #[arg(long, conflicts_with_all = ["max_vertices", "max_facets"])]
    universe: Option<PathBuf>,
    #[arg(long)]
    max_vertices: Option<usize>,
    #[arg(long)]
    max_facets: Option<usize>,
    /// Comma-separated sections, e.g. `products,es`.
    #[arg(long, value_delimiter = ',')]
    sections: Vec<Section>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Directory for counterexample files (default `scat-counterexamples` when a property fails).
    #[arg(long)]
    counterexamples: Option<PathBuf>,
}

fn map_file(f: &SimplicialMap) -> MapFile {
    MapFile::from_map(f)
}

fn complex_file(k: &SimplicialComplex) -> ComplexFile {
    ComplexFile::from_complex(k)
}

fn certificate(out: &mut Outcome, key: &str, cert: Certificate) {
    out.witness(key, cert);
}

/// Turns a limit into an `"unknown"` result; other errors pass through.
fn or_unknown<T>(r: scat_core::Result<T>, out: &mut Outcome, key: &str) -> Result<Option<T>, Failure> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_unknown() => {
            out.unknown(key, e.to_string());
            out.status = Some(Failure::Unknown(e.to_string()));
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn universe(args: &UniverseArgs, inputs: &mut Inputs, default_vertices: usize) -> Result<Corpus, Failure> {
    match &args.universe {
        Some(p) => inputs.corpus(p),
        None => Ok(enumerate_corpus(args.universe_vertices.unwrap_or(default_vertices), args.universe_facets)?),
    }
}

fn verdict_json(v: &FibrationVerdict) -> Value {
    let cx = v.counterexample.as_ref().map(|c| {
        json!({
            "k": complex_file(&c.k),
            "f": map_file(&c.f),
            "g": map_file(&c.g),
            "f_hat": map_file(&c.f_hat),
            "g_lifts": c.g_lifts.iter().map(map_file).collect::<Vec<_>>(),
        })
    });
    json!({ "status": v.status, "checked": v.checked, "reason": v.reason, "counterexample": cx })
}

pub fn dispatch(cmd: &Command, inputs: &mut Inputs, lim: &SearchLimits) -> Result<Outcome, Failure> {
    let mut out = Outcome::default();
    match cmd {
        Command::Scat { complex } => {
            let k = inputs.complex(complex)?;
            out.result("complex", complex_file(&k));
            if let Some((v, cover)) = or_unknown(scat(&k, lim), &mut out, "value")? {
                out.result("value", v);
                certificate(&mut out, "cover", Certificate::map_cover(&SimplicialMap::identity(&k), v, &cover));
            }
        }
        Command::ScatMap { map } => {
            let f = inputs.map(map)?;
            if let Some((v, cover)) = or_unknown(scat_map(&f, lim), &mut out, "value")? {
                out.result("value", v);
                certificate(&mut out, "cover", Certificate::map_cover(&f, v, &cover));
            }
        }
        Command::Gscat { complex, exact } => {
            let k = inputs.complex(complex)?;
            if let Some((v, cover)) = or_unknown(gscat_upper(&k, lim), &mut out, "upper")? {
                out.result("upper", v);
                certificate(&mut out, "cover", Certificate::collapsible_cover(&k, v, &cover));
            }
            if *exact {
                if let Some(v) = or_unknown(gscat_exact(&k, lim), &mut out, "exact")? {
                    out.result("exact", v);
                }
            }
        }
        Command::Core { complex } => {
            let k = inputs.complex(complex)?;
            let c = core(&k)?;
            let removals: Vec<[&str; 2]> = c.removal_order.iter().map(|&(v, w)| [k.label(v), k.label(w)]).collect();
            out.result("complex", complex_file(&c.core))
                .result("vertices", c.core.n_vertices())
                .result("is_point", c.is_point())
                .result("removals", removals);
            certificate(&mut out, "identity_to_retraction", Certificate::chain(&c.idr_chain));
        }
        Command::Contiguous { map } => {
            if map.len() != 2 {
                return Err(Failure::Input("give exactly two --map files".into()));
            }
            let f = inputs.map(&map[0])?;
            let g = inputs.map(&map[1])?;
            out.result("contiguous", is_contiguous(&f, &g)?);
            if let Some(chain) = or_unknown(same_contiguity_class(&f, &g, lim), &mut out, "same_class")? {
                match chain {
                    Some(c) => {
                        out.result("same_class", true).result("chain_length", c.len());
                        certificate(&mut out, "chain", Certificate::chain(&c));
                    }
                    None => {
                        out.result("same_class", false).result("verdict", "different classes");
                    }
                }
            }
        }
        Command::Product { left, right } => {
            let p = Product::new(&inputs.complex(left)?, &inputs.complex(right)?)?;
            out.result("complex", complex_file(&p.complex)).result("p1", map_file(&p.p1())).result("p2", map_file(&p.p2()));
        }
        Command::Cone { complex } => {
            let k = inputs.complex(complex)?;
            out.result("complex", complex_file(&k.cone()?));
        }
        Command::Chi { complex, map } => match map {
            Some(m) => {
                let f = inputs.map(m)?;
                out.result("space_map", SpaceMapFile::from_map(&chi_map(&f, lim)?));
            }
            None => {
                let k = inputs.complex(complex.as_deref().unwrap_or(Path::new("-")))?;
                let fp = face_poset(&k, lim)?;
                out.result("space", SpaceFile::from_space(&fp.space)).result("points", fp.space.len());
            }
        },
        Command::OrderComplex { space, space_map } => match space_map {
            Some(m) => {
                let f = inputs.space_map(m)?;
                out.result("map", map_file(&k_map(&f)?));
            }
            None => {
                let x = inputs.space(space.as_deref().unwrap_or(Path::new("-")))?;
                out.result("complex", complex_file(&order_complex(&x)?));
            }
        },
        Command::CatSpace { space } => {
            let x = inputs.space(space)?;
            if let Some((v, cover)) = or_unknown(cat_space(&x, lim), &mut out, "value")? {
                out.result("value", v);
                certificate(&mut out, "cover", Certificate::space_cover(&MonotoneMap::identity(&x), v, &cover));
            }
        }
        Command::CatMap { space_map } => {
            let f = inputs.space_map(space_map)?;
            if let Some((v, cover)) = or_unknown(cat_map(&f, lim), &mut out, "value")? {
                out.result("value", v);
                certificate(&mut out, "cover", Certificate::space_cover(&f, v, &cover));
            }
        }
        Command::Fiber { map, vertex } => {
            let p = inputs.map(map)?;
            let b = p
                .codomain()
                .vertex(vertex)
                .ok_or_else(|| Failure::Input(format!("{vertex:?} is not a vertex of the base")))?;
            let (f, _) = fiber(&p, b)?.standalone()?;
            out.result("complex", complex_file(&f)).result("connected", f.is_connected());
        }
        Command::FibrationCheck { map, universe: u } => {
            let p = inputs.map(map)?;
            let corpus = universe(u, inputs, 3)?;
            let v = is_fibration_over(&p, &corpus, lim)?;
            if v.status == FibrationStatus::ResourceLimited {
                let reason = v.reason.clone().unwrap_or_default();
                out.limit_hits.push(reason.clone());
                out.status = Some(Failure::Unknown(reason));
            }
            out.result("universe", json!({ "bounds": corpus.bounds, "members": corpus.len() }));
            out.results.insert("verdict".into(), verdict_json(&v));
        }
        Command::Es { map, universe: u, n_max, crosscheck } => {
            let f = inputs.map(map)?;
            let corpus = universe(u, inputs, 4)?;
            let eu = EsUniverse::new(&corpus, lim)?;
            if let Some(r) = or_unknown(es_bounded_in(&f, &eu, *n_max, lim), &mut out, "es")? {
                out.result("es", r);
            }
            if let Some(n) = crosscheck {
                let t = test_maps(&eu, f.domain(), lim)?;
                if let Some(x) = or_unknown(es_crosscheck_in(&f, &eu, &t, *n, lim), &mut out, "crosscheck")? {
                    out.result("crosscheck", x);
                }
            }
        }
        Command::Generate { max_vertices, max_facets, out: path } => {
            let corpus = enumerate_corpus(*max_vertices, *max_facets)?;
            let file = CorpusFile::from_corpus(&corpus);
            out.result("members", corpus.len()).result("counts", &file.counts).result("exhaustive", corpus.exhaustive);
            match path {
                Some(p) => write_json(p, &file)?,
                None => {
                    out.result("corpus", &file);
                }
            }
        }
        Command::Verify(args) => verify(args, inputs, lim, &mut out)?,
        Command::VerifyCertificate { file } => {
            let cert: Certificate = inputs.json(file, "certificate")?;
            let check = cert.verify()?;
            out.result("kind", cert.kind()).result("ok", check.ok).result("detail", &check.detail);
            if !check.ok {
                out.status = Some(Failure::Input(format!("certificate rejected: {}", check.detail)));
            }
        }
    }
    Ok(out)
}

fn suite_config(args: &VerifyArgs, inputs: &mut Inputs, lim: &SearchLimits) -> Result<SuiteConfig, Failure> {
    let mut cfg = match &args.config {
        Some(p) => inputs.json(p, "config")?,
        None if args.quick => SuiteConfig::quick(),
        None => SuiteConfig { limits: *lim, ..SuiteConfig::default() },
    };
    if args.config.is_none() {
        cfg.limits = *lim;
    }
    if let Some(n) = args.max_vertices {
        cfg.corpus_vertices = n;
    }
    if let Some(n) = args.max_facets {
        cfg.corpus_facets = n;
    }
    if !args.sections.is_empty() {
        cfg.sections = args.sections.clone();
    }
    if let Some(n) = args.samples {
        cfg.samples = n;
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

fn verify(args: &VerifyArgs, inputs: &mut Inputs, lim: &SearchLimits, out: &mut Outcome) -> Result<(), Failure> {
    let mut cfg = suite_config(args, inputs, lim)?;
    let report: SuiteReport = match &args.universe {
        Some(p) => {
            let corpus = inputs.corpus(p)?;
            cfg.corpus_vertices = corpus.bounds.0;
            cfg.corpus_facets = corpus.bounds.1;
            run_suite_on(&cfg, corpus)?
        }
        None => run_suite(&cfg)?,
    };
    let failed: Vec<String> = report.failures().map(|p| format!("{}/{}", p.section, p.name)).collect();
    let skipped: Vec<Value> = report
        .properties
        .iter()
        .filter(|p| p.tally.skipped > 0)
        .map(|p| json!({ "property": format!("{}/{}", p.section, p.name), "skipped": p.tally.skipped, "reasons": p.tally.skip_reasons }))
        .collect();
    out.result("all_pass", report.all_pass)
        .result("suite_digest", &report.digest)
        .result("failed", &failed)
        .result("skipped", skipped)
        .result("config", &report.config)
        .result("properties", &report.properties);

    // theorem failures always get files; harness observations only on request
    let with_cx: Vec<_> = report
        .properties
        .iter()
        .filter(|p| p.tally.counterexample.is_some())
        .filter(|p| p.kind == Kind::Theorem || args.counterexamples.is_some())
        .collect();
    if !with_cx.is_empty() {
        let dir = args.counterexamples.clone().unwrap_or_else(|| PathBuf::from("scat-counterexamples"));
        std::fs::create_dir_all(&dir).map_err(|e| Failure::Input(format!("cannot create {}: {e}", dir.display())))?;
        let mut files = Vec::new();
        for p in with_cx {
            let path = dir.join(format!("{}__{}.json", p.section, p.name));
            let body = json!({
                "section": p.section,
                "property": p.name,
                "kind": p.kind,
                "counterexample": p.tally.counterexample,
                "config": report.config,
            });
            write_json(&path, &body)?;
            files.push(path.display().to_string());
        }
        out.witness("counterexample_files", files);
    }
    if !failed.is_empty() {
        out.status = Some(Failure::PropertyFailed(format!("failing properties: {}", failed.join(", "))));
    }
    Ok(())
}
