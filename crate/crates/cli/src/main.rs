mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "brauer", version, about = "Exact computations for the Brauer loop scheme")]
struct Cli {
    /// Directory for cached multidegree tables.
    #[arg(long, global = true, env = "BRAUER_TABLE_DIR")]
    table_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the multidegree table for one N and write it to the table directory.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=8))]
        n: u32,
        /// Replace an existing file whose contents differ.
        #[arg(long)]
        force: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a verification suite; exits nonzero if any check fails.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// A single size (N, or n for the commuting suite).
        #[arg(long, conflicts_with = "max_n")]
        n: Option<usize>,
        /// Largest size; the smallest is the suite's own minimum.
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Evaluation points per identity.
        #[arg(long, default_value_t = 20)]
        points: usize,
        /// Sample points per link pattern.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Random instances per algebra property.
        #[arg(long, default_value_t = 1000)]
        instances: usize,
        /// Points for the positivity check.
        #[arg(long, default_value_t = 100)]
        positivity: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Include wall times (the report is then no longer byte-stable).
        #[arg(long)]
        timings: bool,
    },
    /// Print degrees as exact integers.
    Degrees {
        #[arg(long, value_enum)]
        scheme: Scheme,
        #[arg(long, conflicts_with = "max_n")]
        n: Option<usize>,
        #[arg(long)]
        max_n: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Algebra,
    Geometry,
    Exchange,
    Sumrules,
    Markov,
    D1,
    Commuting,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scheme {
    #[value(name = "E")]
    E,
    #[value(name = "D1")]
    D1,
    #[value(name = "commuting")]
    Commuting,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = match cli.command {
        Command::Table { n, force, format } => commands::table(&mut out, cli.table_dir, n as usize, force, format),
        Command::Verify { suite, n, max_n, seed, points, samples, instances, positivity, format, timings } => {
            let cfg = brauer_core::suites::SuiteConfig { seed, points, samples, instances, positivity };
            commands::verify(&mut out, cli.table_dir, suite, n, max_n, &cfg, format, timings)
        }
        Command::Degrees { scheme, n, max_n } => commands::degrees(&mut out, cli.table_dir, scheme, n, max_n),
    };
    // a closed pipe (e.g. `| head`) is not an error
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
