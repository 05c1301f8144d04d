//! `lexind`: independence complexes of lexicographic products from the shell.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lexind_core::Error;

#[derive(Parser, Debug)]
#[command(
    name = "lexind",
    version,
    about = "Homotopy types of independence complexes of lexicographic products"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Coefficient fields: comma-separated primes, or Q.
    #[arg(long, global = true, default_value = "2,1000003")]
    field: String,

    /// Abort enumeration beyond this many faces.
    #[arg(long, global = true, default_value_t = lexind_core::limits::DEFAULT_MAX_FACES)]
    max_faces: u64,

    /// Wall-clock budget per instance, in seconds.
    #[arg(long, global = true, default_value_t = lexind_core::limits::DEFAULT_TIME_BUDGET.as_secs())]
    time_budget: u64,

    /// Seed for random generation; overrides a campaign's seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads; overrides a campaign's jobs.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// JSON output for gen and complex.
    #[arg(long, global = true)]
    json: bool,

    /// Output file, or directory for campaign.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Include per-route wall-clock timings in reports.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a graph as an edge list.
    Gen {
        /// Graph expression, e.g. lex(path:4,cycle:5).
        expr: Option<String>,
        /// Random forest on this many vertices instead of an expression.
        #[arg(long, conflicts_with = "expr")]
        random_forest: Option<usize>,
        /// Edge probability for --random-forest.
        #[arg(long, default_value_t = 0.7)]
        density: f64,
    },
    /// Print the facets of I(G).
    Complex { expr: String },
    /// Reduced Betti numbers of I(G).
    Homology { expr: String },
    /// Symbolic homotopy type of I(G ∘ H).
    Predict {
        /// Forest G.
        #[arg(long)]
        forest: Option<String>,
        /// Graph H with known I(H) (cycle or complete).
        #[arg(long = "H", conflicts_with = "wedge")]
        h: Option<String>,
        /// I(H) given directly as n copies of S^k: "n,k".
        #[arg(long)]
        wedge: Option<String>,
        /// Closed form for a path on m vertices.
        #[arg(long, requires_all = ["n", "k"], conflicts_with = "forest")]
        m: Option<u32>,
        #[arg(long, requires = "m")]
        n: Option<u64>,
        #[arg(long, requires = "m")]
        k: Option<u32>,
    },
    /// Cross-check every applicable route on G ∘ H.
    Verify {
        g: String,
        h: String,
        /// Override the homotopy type of I(H): "n,k".
        #[arg(long)]
        wedge: Option<String>,
    },
    /// Domination and independent domination numbers.
    Domination {
        expr: String,
        /// Evaluate the connectivity prediction even when G is not a forest.
        #[arg(long = "unsafe")]
        unchecked: bool,
    },
    /// Run a campaign spec file.
    Campaign { spec: PathBuf },
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidArgument(_) => "invalid_argument",
        Error::Parse { .. } => "parse",
        Error::InvalidVertex { .. } => "invalid_vertex",
        Error::NotAForest => "not_a_forest",
        Error::ResourceLimit { .. } => "resource_limit",
        Error::UnknownHomotopyType(_) => "unknown_homotopy_type",
        Error::Io(_) => "io",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => code,
        Err(e) => {
            let mut report = serde_json::json!({"error": error_kind(&e), "message": e.to_string()});
            if let Error::ResourceLimit { bound, .. } = &e {
                report["bound"] = serde_json::json!(bound);
            }
            eprintln!("{report}");
            ExitCode::from(if e.is_resource_limit() {
                commands::EXIT_GUARD
            } else {
                commands::EXIT_USAGE
            })
        }
    }
}
