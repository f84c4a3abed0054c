//! `scat`: exact simplicial LS category from the command line.

mod commands;
mod failure;
mod input;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use failure::Failure;
use input::Inputs;
use report::RunReport;
use scat_core::{Fault, SearchLimits};

#[derive(Parser, Debug)]
#[command(name = "scat", version, about = "Simplicial Lusternik-Schnirelmann category with checkable certificates")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Also write the command's certificate (or certificates) to this file.
    #[arg(long, global = true)]
    certificate: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// JSON file with search limits; the flags below override single fields.
    #[arg(long, global = true)]
    limits: Option<PathBuf>,
    #[arg(long, global = true)]
    max_states: Option<usize>,
    #[arg(long, global = true)]
    max_subsets: Option<usize>,
    /// Deliberately break the search path (for testing the checkers).
    #[arg(long, global = true, hide = true, value_enum)]
    fault: Option<FaultArg>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum FaultArg {
    VertexwiseContiguity,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Category of a complex, with a cover certificate.
    Scat {
        #[arg(long, default_value = "-")]
        complex: PathBuf,
    },
    /// Category of a map, with a cover certificate.
    ScatMap {
        #[arg(long, default_value = "-")]
        map: PathBuf,
    },
    /// Geometric category: a certified upper bound, and the exact value with `--exact`.
    Gscat {
        #[arg(long, default_value = "-")]
        complex: PathBuf,
        #[arg(long)]
        exact: bool,
    },
    /// Core by strong collapses, with the chain from the identity to inclusion after retraction.
    Core {
        #[arg(long, default_value = "-")]
        complex: PathBuf,
    },
    /// Whether two maps are contiguous, and a chain when they share a class.
    Contiguous {
        #[arg(long, num_args = 1, required = true)]
        map: Vec<PathBuf>,
    },
    /// Categorical product of two complexes.
    Product {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Cone over a complex.
    Cone {
        #[arg(long, default_value = "-")]
        complex: PathBuf,
    },
    /// Face poset of a complex, or the induced monotone map of a simplicial map.
    Chi {
        #[arg(long, conflicts_with = "map")]
        complex: Option<PathBuf>,
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Order complex of a finite space, or the induced simplicial map of a monotone map.
    OrderComplex {
        #[arg(long, conflicts_with = "space_map")]
        space: Option<PathBuf>,
        #[arg(long)]
        space_map: Option<PathBuf>,
    },
    /// LS category of a finite space.
    CatSpace {
        #[arg(long, default_value = "-")]
        space: PathBuf,
    },
    /// LS category of a monotone map.
    CatMap {
        #[arg(long, default_value = "-")]
        space_map: PathBuf,
    },
    /// Fiber of a map over one base vertex.
    Fiber {
        #[arg(long, default_value = "-")]
        map: PathBuf,
        /// Label of the base vertex.
        #[arg(long)]
        vertex: String,
    },
    /// Checks the contiguity-lifting property over a universe of complexes.
    FibrationCheck {
        #[arg(long, default_value = "-")]
        map: PathBuf,
        #[command(flatten)]
        universe: UniverseArgs,
    },
    /// Essential category relative to a universe of complexes.
    Es {
        #[arg(long, default_value = "-")]
        map: PathBuf,
        #[command(flatten)]
        universe: UniverseArgs,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        /// Also evaluate the three equivalent conditions at this level.
        #[arg(long)]
        crosscheck: Option<usize>,
    },
    /// Enumerates connected complexes up to isomorphism.
    Generate {
        #[arg(long)]
        max_vertices: usize,
        #[arg(long, default_value_t = 10)]
        max_facets: usize,
        /// Write the corpus file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs the property suite and reports pass, fail or skip per property.
    Verify(commands::VerifyArgs),
    /// Re-checks a certificate file without running any search.
    VerifyCertificate {
        #[arg(long, default_value = "-")]
        file: PathBuf,
    },
}

#[derive(Args, Debug, Clone)]
pub struct UniverseArgs {
    /// Corpus file (from `generate`) to use as the universe.
    #[arg(long, conflicts_with = "universe_vertices")]
    universe: Option<PathBuf>,
    /// Enumerate the universe: all connected complexes up to this many vertices.
    #[arg(long)]
    universe_vertices: Option<usize>,
    #[arg(long, default_value_t = 10)]
    universe_facets: usize,
}

fn limits(g: &Global, inputs: &mut Inputs) -> Result<SearchLimits, Failure> {
    let mut l = match &g.limits {
        Some(p) => inputs.json(p, "limits")?,
        None => SearchLimits::default(),
    };
    if let Some(n) = g.max_states {
        l = l.with_max_states(n);
    }
    if let Some(n) = g.max_subsets {
        l = l.with_max_subsets(n);
    }
    if let Some(FaultArg::VertexwiseContiguity) = g.fault {
        l.fault = Fault::VertexwiseContiguity;
    }
    Ok(l)
}

fn run(cli: Cli, argv: Vec<String>) -> Result<(String, Option<Failure>), Failure> {
    if let Some(n) = cli.global.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .map_err(|e| Failure::Input(format!("cannot set --jobs: {e}")))?;
    }
    let start = Instant::now();
    let mut inputs = Inputs::default();
    let lim = limits(&cli.global, &mut inputs)?;
    let outcome = commands::dispatch(&cli.command, &mut inputs, &lim)?;
    if let Some(path) = &cli.global.certificate {
        report::write_json(path, &outcome.witnesses)?;
    }
    let status = outcome.status.clone();
    let report = RunReport::new(argv, &inputs.bytes, outcome, start.elapsed().as_millis());
    let text = report.render(cli.global.format == Format::Text);
    match &cli.global.output {
        Some(p) => {
            std::fs::write(p, &text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", p.display())))?;
            Ok((String::new(), status))
        }
        None => Ok((text, status)),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli, argv) {
        Ok((text, status)) => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            match status {
                None => ExitCode::SUCCESS,
                Some(f) => {
                    eprintln!("{f}");
                    ExitCode::from(f.exit_code() as u8)
                }
            }
        }
        Err(f) => {
            eprintln!("scat: {f}");
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
