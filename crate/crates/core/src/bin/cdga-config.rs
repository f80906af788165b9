use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cdga_config::commands;
use cdga_config::expr;
use cdga_config::report::{Report, Status};

/// Exact CDGA models of two-point configuration spaces.
///
/// FILE arguments accept a path to an algebra JSON file or a preset name
/// (point, s2, s3, s4, s5, cp2, s2xs3, s3xs4, with or without `.json`).
#[derive(Parser)]
#[command(name = "cdga-config", version)]
struct Cli {
    /// Print only the machine-readable report.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// CDGA axioms, Poincaré duality and Betti numbers.
    Check { file: String },
    /// Diagonal class, dual basis and the δ-table of C(Δ!).
    Diagonal { file: String },
    /// Betti numbers of A⊗A/(Δ) against C(Δ!).
    #[command(name = "betti-fm2")]
    BettiFm2 { file: String },
    /// Builds and checks the twisted model C(ξ) or C(x).
    Cxi {
        file: String,
        /// Element of A⊗A of degree 2n-2, e.g. "y⊗xy" or "2*(y(x)xy)".
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<String>,
        /// Cocycle of A of degree n-2.
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        /// Samples a random ξ when neither --xi nor --x is given.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Pairwise equivalence verdicts for the S²×S³ family.
    #[command(name = "classify-example")]
    ClassifyExample {
        /// Comma separated rationals, e.g. 0,1,2,-1 or 1/2,3.
        #[arg(long, allow_hyphen_values = true, default_value = "0,1,2,-1")]
        q: String,
    },
    /// Product of two algebras and the diagonal correspondence.
    Product {
        a: String,
        b: String,
        /// Output path (default: <name>.json in the working directory).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// D² = 0 and chain-map checks on a generator table file or preset.
    #[command(name = "check-table")]
    CheckTable {
        #[arg(default_value = "s2xs3_table")]
        file: String,
    },
}

fn parse_q(list: &str) -> Result<Vec<cdga_config::linalg::Scalar>, String> {
    list.split(',')
        .map(|s| expr::parse_rational(s.trim()).map_err(|e| format!("--q {s:?}: {e}")))
        .collect()
}

fn main() -> ExitCode {
    // usage errors count as parse errors, not as failed checks
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let report = match &cli.command {
        Command::Check { file } => commands::check(file),
        Command::Diagonal { file } => commands::diagonal(file),
        Command::BettiFm2 { file } => commands::betti_fm2(file),
        Command::Cxi { file, xi, x, seed } => commands::cxi(file, xi.as_deref(), x.as_deref(), *seed),
        Command::ClassifyExample { q } => match parse_q(q) {
            Ok(q) => commands::classify_example(&q),
            Err(e) => Report::error(format!("classify-example --q {q}"), Status::ParseError, e),
        },
        Command::Product { a, b, out } => commands::product(a, b, out.as_deref()),
        Command::CheckTable { file } => commands::check_table(file),
    };
    if cli.json {
        print!("{}", report.json());
    } else {
        print!("{}", report.text());
    }
    ExitCode::from(report.exit_code() as u8)
}
