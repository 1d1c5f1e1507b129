//! `lpakt`: K-theory and grading invariants of Leavitt path algebras.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{CliError, Output};

#[derive(Parser, Debug)]
#[command(name = "lpakt", version, about = "Invariants of Leavitt path algebras of finite graphs")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// Graph file, JSON or the `v`/`e` line format.
    #[arg(long, global = true, value_name = "PATH")]
    graph: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized checks; falls back to LPA_KT_SEED, then 0.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Expansion depth for `monoid-eq`.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    depth: Option<u64>,
    /// Frontier cap (`monoid-eq`), sample count (`verify-exact`) or graph count (`verify-all`).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
    /// Largest degree for the symbolic strong-grading check, 1 to 3.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..=3))]
    nmax: Option<u32>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// K0 with the class of the unit.
    K0,
    /// Graded K0 as a stationary inductive limit.
    Kgr,
    /// Whether L(E) is strongly graded.
    Strong,
    /// Decide p = q in the graph monoid, e.g. `monoid-eq v1 "v2 + v3"`.
    MonoidEq { p: String, q: String },
    /// Multiply terms in L(E) and print the normal form.
    LpaEval {
        #[arg(required = true)]
        terms: Vec<String>,
    },
    /// Corner skew Laurent polynomial realization.
    Cskl {
        #[command(subcommand)]
        action: CsklAction,
    },
    /// Check the exact sequence relating K0^gr and K0.
    VerifyExact,
    /// Run every check on a seeded random corpus, or on --graph.
    VerifyAll,
    /// Recompute the built-in examples and assert their values.
    PaperExamples,
}

#[derive(Subcommand, Debug)]
enum CsklAction {
    /// Print t+, t-, p and check the defining rules.
    Realize {
        #[arg(value_name = "GRAPH")]
        file: Option<PathBuf>,
        /// Edge chosen for a vertex, as `vertex=edge`.
        #[arg(long = "choose", value_name = "VERTEX=EDGE")]
        choose: Vec<String>,
    },
    /// Strong-grading verdict with its certificate.
    CheckStrong {
        #[arg(value_name = "GRAPH")]
        file: Option<PathBuf>,
    },
}

fn seed(opts: &Options) -> Result<u64, CliError> {
    if let Some(s) = opts.seed {
        return Ok(s);
    }
    match std::env::var("LPA_KT_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Usage(format!("LPA_KT_SEED is not an integer: {s:?}"))),
        Err(_) => Ok(0),
    }
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let opts = &cli.opts;
    let seed = seed(opts)?;
    match cli.command {
        Command::K0 => commands::k0(&commands::load(opts.graph.as_deref())?),
        Command::Kgr => commands::kgr(&commands::load(opts.graph.as_deref())?),
        Command::Strong => commands::strong(&commands::load(opts.graph.as_deref())?, opts.nmax),
        Command::MonoidEq { p, q } => {
            let g = commands::load(opts.graph.as_deref())?;
            commands::monoid_eq(&g, &p, &q, opts.depth, opts.budget)
        }
        Command::LpaEval { terms } => commands::lpa_eval(&commands::load(opts.graph.as_deref())?, &terms),
        Command::Cskl { action } => match action {
            CsklAction::Realize { file, choose } => {
                let g = commands::load(file.as_deref().or(opts.graph.as_deref()))?;
                commands::cskl_realize(&g, &choose)
            }
            CsklAction::CheckStrong { file } => {
                commands::cskl_check_strong(&commands::load(file.as_deref().or(opts.graph.as_deref()))?)
            }
        },
        Command::VerifyExact => commands::verify_exact(&commands::load(opts.graph.as_deref())?, opts.budget, seed),
        Command::VerifyAll => {
            let g = opts.graph.as_deref().map(|p| commands::load(Some(p))).transpose()?;
            commands::verify_all(g, opts.budget, seed)
        }
        Command::PaperExamples => Ok(commands::example_report()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::try_parse().unwrap_or_else(|e| e.exit());
    let format = cli.opts.format;
    match run(cli) {
        Ok(out) => {
            out.print(format);
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(e) => {
            e.print(format);
            ExitCode::from(e.code())
        }
    }
}
