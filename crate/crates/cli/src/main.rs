//! `ortho`: reproducible checks on orthogonality spaces and quadratic spaces,
//! reported as JSON or text.

mod error;
mod graph;
mod nonarch;
mod report;
mod rot;

use clap::{Args, Parser, Subcommand, ValueEnum};
use error::Result;
use graph::GraphCheck;
use report::Session;
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(name = "ortho", version, about = "Exact checks on orthogonality spaces, rotations and non-Archimedean spaces")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Cap on square roots adjoined beyond the input's field.
    #[arg(long, default_value_t = 4, global = true)]
    max_adjunctions: usize,
    /// Include wall-clock timings (makes output non-reproducible).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Checks on a finite orthogonality space given as a graph document.
    Graph {
        path: String,
        /// Checks to run; all by default.
        #[arg(long, value_enum, value_delimiter = ',')]
        checks: Vec<GraphCheck>,
    },
    /// Rotations of a quadratic space.
    #[command(subcommand)]
    Rot(RotCommand),
    /// The infinitesimal-closeness relation over Q(eps).
    #[command(subcommand)]
    Nonarch(NonarchCommand),
}

#[derive(Debug, Subcommand)]
enum RotCommand {
    /// Checks that a matrix is orthogonal for the form with determinant 1.
    Verify { matrix: String },
    /// Images of projective points and preservation of orthogonality.
    Map {
        matrix: String,
        #[arg(long)]
        points: String,
    },
    /// A 2^k-th root of a basic rotation.
    Sqrt {
        rotation: String,
        #[arg(long, default_value_t = 2)]
        root: u32,
    },
    /// Factors a rotation into coordinate-plane rotations.
    Givens { matrix: String },
    /// Classifies the block [[alpha, -beta], [beta, alpha]] by its fixpoints.
    Fixclass(FixclassArgs),
}

#[derive(Debug, Args)]
struct FixclassArgs {
    #[arg(long, allow_hyphen_values = true, requires = "beta", conflicts_with = "block")]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "alpha")]
    beta: Option<String>,
    /// A full 2x2 block, e.g. "[[0, -1], [1, 0]]".
    #[arg(long, allow_hyphen_values = true, required_unless_present = "alpha")]
    block: Option<String>,
    /// Radicands adjoined to Q, in order.
    #[arg(long)]
    adjoin: Vec<String>,
}

#[derive(Debug, Subcommand)]
enum NonarchCommand {
    /// Infinitesimal, medial or neither.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        /// Gram diagonal; the standard form by default.
        #[arg(long, allow_hyphen_values = true)]
        gram: Option<String>,
    },
    /// Decides whether two projective points are infinitesimally close.
    Approx {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, allow_hyphen_values = true)]
        gram: Option<String>,
    },
    /// Equivalence, congruence and rotation invariance on a sample.
    Suite {
        #[arg(long, default_value_t = 4)]
        dim: usize,
        /// Sample seed; falls back to ORTHO_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn run(cli: &Cli, s: &mut Session) -> Result<()> {
    let cap = cli.max_adjunctions;
    match &cli.command {
        Command::Graph { path, checks } => graph::run(s, path, checks),
        Command::Rot(c) => match c {
            RotCommand::Verify { matrix } => rot::verify(s, matrix),
            RotCommand::Map { matrix, points } => rot::map(s, matrix, points),
            RotCommand::Sqrt { rotation, root } => rot::sqrt(s, rotation, *root, cap),
            RotCommand::Givens { matrix } => rot::givens(s, matrix, cap),
            RotCommand::Fixclass(a) => {
                let source = match (&a.alpha, &a.beta, &a.block) {
                    (Some(alpha), Some(beta), _) => rot::BlockSource::Params { alpha, beta },
                    (_, _, Some(block)) => rot::BlockSource::Block(block),
                    _ => unreachable!("clap enforces --alpha/--beta or --block"),
                };
                rot::fixclass(s, source, &a.adjoin)
            }
        },
        Command::Nonarch(c) => match c {
            NonarchCommand::Classify { v, gram } => nonarch::classify(s, v, gram.as_deref()),
            NonarchCommand::Approx { p, q, gram } => nonarch::approx(s, p, q, gram.as_deref()),
            NonarchCommand::Suite { dim, seed } => nonarch::suite(s, *dim, nonarch::resolve_seed(*seed)?),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut session = Session::default();
    if let Err(e) = run(&cli, &mut session) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let command: Vec<String> = std::env::args().skip(1).collect();
    let doc = session.finish(command, cli.timings);
    let out = match cli.format {
        Format::Json => doc.to_json(),
        Format::Text => doc.to_text(),
    };
    print!("{out}");
    if doc.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
