mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::output::Session;

/// Twisted cohomology, Torelli twists, random walks and period checks for
/// characters of closed surface groups.
#[derive(Parser, Debug)]
#[command(name = "affchar", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for every random choice the command makes.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Directory for JSON/CSV artifacts and the append-only manifest.jsonl.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Numerical tolerance for classification and signature checks.
    #[arg(long, global = true, default_value_t = affchar::characters::DEFAULT_TOL)]
    pub tol: f64,
    /// Exact rational arithmetic: exact inputs are required for classify and
    /// haupt (floating periods are read as the exact doubles they are), and
    /// walk sp runs on rationals.
    #[arg(long, global = true)]
    pub exact: bool,
    /// Compact single-line JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Basis and dimensions of Z¹ and H¹ with the rank certificate.
    Cohomology {
        /// Character JSON file, or `-` for stdin.
        character: PathBuf,
    },
    /// Torelli generator matrices, handle parameters and discreteness hints.
    Twist { character: PathBuf },
    /// Seeded random walks.
    Walk {
        #[command(subcommand)]
        kind: WalkKind,
    },
    /// Haupt realizability verdict for a period character.
    Haupt { periods: PathBuf },
    /// Trivial / unitary / real / almost-real flags.
    Classify { character: PathBuf },
    /// Hermitian volume form on H¹: Gram matrix and signature.
    Volume {
        character: PathBuf,
        /// Cocycle JSON whose volume is also reported.
        #[arg(long)]
        cocycle: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct WalkOptions {
    #[arg(long, default_value_t = 10_000)]
    pub steps: usize,
    #[arg(long, default_value_t = 0)]
    pub burn_in: usize,
    #[arg(long, default_value_t = 0)]
    pub stream: u64,
}

#[derive(Subcommand, Debug)]
pub enum WalkKind {
    /// Sp(2g,ℤ) acting on a pair of vectors, with the symplectic pairing monitored.
    Sp {
        #[arg(long, default_value_t = 2)]
        genus: usize,
        /// Comma-separated coordinates (rationals like `1/3` allowed); random if omitted.
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
        /// Record `x mod ℤ^{2g}` and its equidistribution statistic.
        #[arg(long)]
        torus: bool,
        #[command(flatten)]
        walk: WalkOptions,
    },
    /// The Torelli twist representation acting on ℙH¹.
    Torelli {
        character: PathBuf,
        /// Start vector as `re,im;re,im;…`; random if omitted.
        #[arg(long, allow_hyphen_values = true)]
        start: Option<String>,
        #[command(flatten)]
        walk: WalkOptions,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Usage errors are input errors; clap's own status would read as a
            // precondition failure.
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let mut session = Session::new(cli.global.clone());
    match commands::run(&cli.command, &mut session) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let (code, body) = output::describe_error(&e);
            eprintln!("{body}");
            ExitCode::from(code)
        }
    }
}
