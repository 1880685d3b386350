use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hypercx_cli::commands::{self, parse_support_family, AnalyzeOptions, CicOptions, ComplexChoice, CorpusOptions, FamilyArg};
use hypercx_cli::{formats, CliError, ExitStatus, Report};
use hypercx_core::graph_products::SupportFamily;
use hypercx_core::homology::FACE_GUARD_ENV;
use hypercx_harness::Invariant;

/// Hyperplane complexes of quasi-median graphs and homology verdicts.
///
/// Exit codes: 0 success, 1 checks failed, 2 usage or parse error,
/// 3 a size guard was exceeded. The face guard is read from
/// HYPERCX_FACE_GUARD.
#[derive(Parser)]
#[command(name = "hypercx", version)]
struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Cap on enumerated faces; overrides HYPERCX_FACE_GUARD.
    #[arg(long, global = true)]
    face_guard: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare two graphs through the homology of a complex built on each.
    RaagCompare {
        g1: PathBuf,
        g2: PathBuf,
        /// join, flag or commensurability.
        #[arg(long, default_value = "join")]
        invariant: Invariant,
    },
    /// Validate a graph and describe its hyperplanes, prisms and complexes.
    QmAnalyze {
        graph: PathBuf,
        /// contact, crossing, contiguity, small-crossing, crossing-model,
        /// relative-contact, relative-contact-model or skewering; repeatable.
        #[arg(long = "complex")]
        complexes: Vec<ComplexChoice>,
        #[arg(long)]
        pairs: bool,
        /// Directory for complex-text and dot-like files.
        #[arg(long)]
        emit_dir: Option<PathBuf>,
    },
    /// Run the theorem checks on one graph.
    QmVerify {
        graph: PathBuf,
        /// canonical-star, prisms, whole, or a members file; repeatable.
        /// Defaults to the first three.
        #[arg(long = "family")]
        families: Vec<FamilyArg>,
    },
    /// Build a fragment of the coset intersection complex of a graph product.
    GpCic {
        presentation: PathBuf,
        #[arg(long, default_value = "maximal-joins", value_parser = parse_support_family)]
        family: SupportFamily,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        #[arg(long, default_value_t = 1)]
        max_exp: i64,
        /// Also check the Cayley-graph ball of this radius.
        #[arg(long)]
        ball: Option<usize>,
        /// Write the fragment as complex-text.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Generate a seeded corpus of quasi-median graphs.
    GenCorpus {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 36)]
        count: usize,
        #[arg(long, default_value_t = 200)]
        max_vertices: usize,
        #[arg(long)]
        with_fixed: bool,
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long)]
        verify: bool,
    },
}

fn run(cli: Cli) -> Result<Report, CliError> {
    match cli.command {
        Command::RaagCompare { g1, g2, invariant } => commands::raag_compare(&g1, &g2, invariant),
        Command::QmAnalyze { graph, complexes, pairs, emit_dir } => {
            commands::qm_analyze(&graph, &AnalyzeOptions { complexes, pairs, emit_dir })
        }
        Command::QmVerify { graph, families } => commands::qm_verify(&graph, &families),
        Command::GpCic { presentation, family, radius, max_dim, max_exp, ball, emit } => {
            commands::gp_cic(&presentation, &CicOptions { family, radius, max_dim, max_exp, ball, emit })
        }
        Command::GenCorpus { seed, count, max_vertices, with_fixed, out_dir, verify } => {
            commands::gen_corpus(&CorpusOptions { seed, count, max_vertices, with_fixed, out_dir, verify })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(g) = cli.face_guard {
        // still single-threaded here; the homology layer reads the variable
        std::env::set_var(FACE_GUARD_ENV, g.to_string());
    }
    let out = cli.out.clone();
    let status = match run(cli) {
        Ok(report) => {
            let text = report.render();
            let written = match &out {
                Some(p) => formats::write_file(p, &text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => report.status,
                Err(e) => {
                    eprintln!("hypercx: {e}");
                    ExitStatus::Usage
                }
            }
        }
        Err(e) => {
            eprintln!("hypercx: {e}");
            e.exit_status()
        }
    };
    ExitCode::from(status.code() as u8)
}
