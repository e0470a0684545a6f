//! Command-line interface: configuration ingestion, per-command reports,
//! DIMACS export, and the self-test gate.
//!
//! Exit codes: 0 success, 1 input/validation failure, 2 property violation
//! (a cross-check or theorem check failed — a modeling bug, not bad input).

use crate::boolean::boolean_colimit;
use crate::complexes::{
    color_search_with, parse_config, paste, subalgebra_diagram_with, to_cnf_with,
    validate_complex, ColorMode, FrameComplex, SolverOptions,
};
use crate::pba::{total_subalgebra_diagram, SubalgebraMode};
use crate::spectra::{
    gelfand, nogo_pipeline, pierce, spectra_diagram, stone_pipeline, zariski, PipelineReport,
    SpectrumFunctor,
};
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_PROPERTY: i32 = 2;

#[derive(Parser)]
#[command(
    name = "obstructa",
    about = "Finite-scale spectral obstruction workbench: exact Kochen-Specker search, \
             partial Boolean algebra pasting, locale limits, and spectrum functors",
    version
)]
struct Cli {
    /// Worker threads for the coloring solver (default: machine
    /// parallelism; the OBSTRUCTA_THREADS variable is honored when the
    /// flag is absent). Output is identical for every thread count.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArg {
    /// Path to a configuration JSON file.
    path: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a configuration: exact orthogonality, distinct rays,
    /// basis coverage.
    Validate(InputArg),
    /// Paste the configuration into its partial Boolean algebra.
    Paste {
        #[command(flatten)]
        input: InputArg,
        /// Also print element and sharing statistics.
        #[arg(long)]
        stats: bool,
    },
    /// Search for colorings (exactly one 1 per basis, consistent on
    /// shared subspaces).
    Color {
        #[command(flatten)]
        input: InputArg,
        /// Stop at the first coloring.
        #[arg(long, conflicts_with_all = ["count", "enumerate"])]
        find: bool,
        /// Count all colorings (default).
        #[arg(long, conflicts_with = "enumerate")]
        count: bool,
        /// List all colorings in lexicographic ray order.
        #[arg(long)]
        enumerate: bool,
        /// Write the CNF encoding in DIMACS format to this path.
        #[arg(long, value_name = "OUT")]
        dimacs: Option<PathBuf>,
    },
    /// Boolean colimit of the diagram of total subalgebras of the pasting.
    Colimit(InputArg),
    /// Apply a spectrum functor to the subalgebra diagram and report the
    /// node spectra.
    Spectrum {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        functor: SpectrumFunctor,
    },
    /// Run the full no-go pipeline and report all counts and checks.
    Pipeline {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        functor: SpectrumFunctor,
        /// Emit the machine-readable JSON report.
        #[arg(long)]
        json: bool,
    },
    /// Run the full acceptance self-test suite.
    Selftest,
}

impl clap::ValueEnum for SpectrumFunctor {
    fn value_variants<'a>() -> &'a [Self] {
        &SpectrumFunctor::ALL
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(self.name()))
    }
}

/// The canonical JSON serialisation of a pipeline report (pretty, stable
/// field order, trailing newline); byte-identical across runs and thread
/// counts.
pub fn report_json(report: &PipelineReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

fn plain_report(report: &PipelineReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("functor:              {}\n", report.functor));
    out.push_str(&format!("colorings:            {}\n", report.colorings));
    out.push_str(&format!(
        "boolean colimit size: {}\n",
        report.boolean_colimit_size
    ));
    out.push_str(&format!("limit opens:          {}\n", report.limit_opens));
    out.push_str(&format!("limit points:         {}\n", report.limit_points));
    out.push_str(&format!("initial locale:       {}\n", report.initial));
    for check in &report.checks {
        out.push_str(&format!(
            "check {:<40} {}\n",
            check.name,
            if check.pass { "pass" } else { "FAIL" }
        ));
    }
    out
}

fn load(path: &PathBuf) -> Result<FrameComplex, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let complex = parse_config(&text).map_err(|e| format!("{e}"))?;
    Ok(complex)
}

fn solver_options(threads: Option<usize>) -> SolverOptions {
    let threads = threads
        .or_else(|| {
            std::env::var("OBSTRUCTA_THREADS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
        .max(1);
    SolverOptions { threads }
}

fn validation_failure(message: String) -> i32 {
    eprintln!("error: {message}");
    EXIT_INPUT
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    let options = solver_options(cli.threads);
    match cli.command {
        Command::Validate(input) => match load(&input.path).and_then(|c| {
            validate_complex(&c).map_err(|e| format!("{e}"))
        }) {
            Ok(report) => {
                println!(
                    "valid: dimension {}, {} rays, {} bases{}",
                    report.dimension,
                    report.ray_count,
                    report.basis_count,
                    if report.meets_dimension_hypothesis {
                        ""
                    } else {
                        " (note: the no-go theorems require dimension >= 3)"
                    }
                );
                EXIT_OK
            }
            Err(e) => validation_failure(e),
        },
        Command::Paste { input, stats } => match load(&input.path).and_then(|c| {
            paste(&c).map_err(|e| format!("{e}"))
        }) {
            Ok(pasted) => {
                println!(
                    "pasted partial Boolean algebra: {} elements",
                    pasted.stats.elements
                );
                if stats {
                    println!("shared elements (beyond 0 and 1): {}", pasted.stats.shared);
                    let blocks = crate::pba::maximal_cliques(&pasted.pba);
                    println!("maximal blocks: {}", blocks.len());
                    let mut by_rank = std::collections::BTreeMap::new();
                    for s in &pasted.subspaces {
                        *by_rank.entry(s.rank()).or_insert(0usize) += 1;
                    }
                    for (rank, count) in by_rank {
                        println!("rank {rank}: {count} elements");
                    }
                }
                EXIT_OK
            }
            Err(e) => validation_failure(e),
        },
        Command::Color {
            input,
            find,
            count: _,
            enumerate,
            dimacs,
        } => {
            let complex = match load(&input.path) {
                Ok(c) => c,
                Err(e) => return validation_failure(e),
            };
            let pasted = match paste(&complex) {
                Ok(p) => p,
                Err(e) => return validation_failure(format!("{e}")),
            };
            let mode = if find {
                ColorMode::Find
            } else if enumerate {
                ColorMode::Enumerate
            } else {
                ColorMode::Count
            };
            if let Some(out_path) = &dimacs {
                match to_cnf_with(&complex, &pasted) {
                    Ok((_, text)) => {
                        if let Err(e) = std::fs::write(out_path, text) {
                            return validation_failure(format!(
                                "cannot write {}: {e}",
                                out_path.display()
                            ));
                        }
                    }
                    Err(e) => return validation_failure(format!("{e}")),
                }
            }
            match color_search_with(&complex, &pasted, mode, &options) {
                Ok(result) => {
                    match mode {
                        ColorMode::Count => println!("{}", result.count),
                        ColorMode::Find => match result.colorings.first() {
                            Some(coloring) => println!("{}", render_coloring(coloring)),
                            None => println!("uncolorable"),
                        },
                        ColorMode::Enumerate => {
                            for coloring in &result.colorings {
                                println!("{}", render_coloring(coloring));
                            }
                            println!("total {}", result.count);
                        }
                    }
                    EXIT_OK
                }
                Err(e) => validation_failure(format!("{e}")),
            }
        }
        Command::Colimit(input) => {
            let complex = match load(&input.path) {
                Ok(c) => c,
                Err(e) => return validation_failure(e),
            };
            let outcome = paste(&complex)
                .map_err(|e| format!("{e}"))
                .and_then(|p| {
                    total_subalgebra_diagram(&p.pba, SubalgebraMode::Maximal)
                        .map_err(|e| format!("{e}"))
                })
                .and_then(|(d, carriers)| {
                    boolean_colimit(&d)
                        .map(|(alg, _)| (alg, carriers.len()))
                        .map_err(|e| format!("{e}"))
                });
            match outcome {
                Ok((alg, nodes)) => {
                    println!(
                        "boolean colimit of {} total-subalgebra nodes: {} elements ({} atoms){}",
                        nodes,
                        alg.size(),
                        alg.atom_count(),
                        if alg.is_terminal() { " — terminal (0 = 1)" } else { "" }
                    );
                    EXIT_OK
                }
                Err(e) => validation_failure(e),
            }
        }
        Command::Spectrum { input, functor } => {
            let complex = match load(&input.path) {
                Ok(c) => c,
                Err(e) => return validation_failure(e),
            };
            let pasted = match paste(&complex) {
                Ok(p) => p,
                Err(e) => return validation_failure(format!("{e}")),
            };
            match functor {
                SpectrumFunctor::Stone => match stone_pipeline(&pasted.pba) {
                    Ok(out) => {
                        println!(
                            "stone spectra over {} total-subalgebra nodes; limit: {} opens, {} points{}",
                            out.node_count,
                            out.limit.open_count(),
                            out.limit_points,
                            if out.initial { " — initial locale" } else { "" }
                        );
                        EXIT_OK
                    }
                    Err(e) => validation_failure(format!("{e}")),
                },
                _ => {
                    let diagram = match subalgebra_diagram_with(&complex, &pasted) {
                        Ok(d) => d,
                        Err(e) => return validation_failure(format!("{e}")),
                    };
                    let on_obj = match functor {
                        SpectrumFunctor::Gelfand => gelfand,
                        SpectrumFunctor::Zariski => zariski,
                        SpectrumFunctor::Pierce => pierce,
                        SpectrumFunctor::Stone => unreachable!(),
                    };
                    println!(
                        "{} spectra of {} commutative algebra nodes:",
                        functor.name(),
                        diagram.nodes.len()
                    );
                    for (i, node) in diagram.nodes.iter().enumerate() {
                        let frame = on_obj(node);
                        println!(
                            "  node {i}: {} characters -> discrete frame with {} opens",
                            node.k(),
                            frame.open_count()
                        );
                    }
                    // the spectra diagram is functorial; build it to check
                    match spectra_diagram(&diagram, functor) {
                        Ok(_) => {
                            println!("functoriality: ok");
                            EXIT_OK
                        }
                        Err(e) => {
                            eprintln!("error: {e}");
                            EXIT_PROPERTY
                        }
                    }
                }
            }
        }
        Command::Pipeline {
            input,
            functor,
            json,
        } => {
            let complex = match load(&input.path) {
                Ok(c) => c,
                Err(e) => return validation_failure(e),
            };
            match nogo_pipeline(&complex, functor, &options) {
                Ok(report) => {
                    if json {
                        print!("{}", report_json(&report));
                    } else {
                        print!("{}", plain_report(&report));
                    }
                    EXIT_OK
                }
                Err(crate::spectra::SpectraError::Complex(e)) => {
                    validation_failure(format!("{e}"))
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    EXIT_PROPERTY
                }
            }
        }
        Command::Selftest => {
            let outcomes = crate::selftest::run_all(&options);
            let mut all_pass = true;
            for outcome in &outcomes {
                println!("{}", outcome.line());
                all_pass &= outcome.pass;
            }
            if all_pass {
                println!("all {} criteria pass", outcomes.len());
                EXIT_OK
            } else {
                EXIT_PROPERTY
            }
        }
    }
}

fn render_coloring(coloring: &[bool]) -> String {
    coloring
        .iter()
        .map(|&b| if b { '1' } else { '0' })
        .collect()
}
