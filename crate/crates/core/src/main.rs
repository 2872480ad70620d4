use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hallq::cli::{run, Command, Format, JobConfig, CACHE_ENV};

/// Twisted Hall algebras of bound quivers and the presentations of their
/// quantum groups.
#[derive(Parser, Debug)]
#[command(name = "hallq", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Size of the prime field
    #[arg(long, global = true, default_value_t = 3)]
    q: u32,

    /// Largest total dimension of an indecomposable
    #[arg(long, global = true, default_value_t = 8)]
    dim_cap: usize,

    /// Box size of the positive-root search
    #[arg(long, global = true, default_value_t = 6)]
    root_cap: u32,

    /// Largest total dimension kept in Hall algebra computations
    #[arg(long, global = true, default_value_t = 6)]
    degree_bound: i64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Cache directory for indecomposable tables
    #[arg(long, global = true, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,

    /// Report the wall-clock time of the command
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Unit form, global dimension, weak positivity, roots and relation checks
    Analyze { quiver: PathBuf },
    /// Positive roots of the unit form
    Roots { quiver: PathBuf },
    /// Indecomposable representations in a directed order
    Indecomposables { quiver: PathBuf },
    /// Hall numbers of pairs of classes up to the degree bound
    HallTable { quiver: PathBuf },
    /// Generated relations and graded dimensions
    Presentation { quiver: PathBuf },
    /// Evaluates the relations in the Hall algebra and compares dimensions
    VerifyRho { quiver: PathBuf },
    /// Runs every stage on a built-in example and matches its listed relations
    Examples {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=4))]
        n: u8,
        /// Number of vertices of the chain in example 2
        #[arg(long, default_value_t = 4)]
        length: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut cfg = JobConfig {
        quiver: None,
        q: cli.q,
        dim_cap: cli.dim_cap,
        root_cap: cli.root_cap,
        degree_bound: cli.degree_bound,
        format: cli.format,
        cache_dir: cli.cache_dir,
        timing: cli.timing,
    };
    let command = match cli.command {
        Cmd::Analyze { quiver } => {
            cfg.quiver = Some(quiver);
            Command::Analyze
        }
        Cmd::Roots { quiver } => {
            cfg.quiver = Some(quiver);
            Command::Roots
        }
        Cmd::Indecomposables { quiver } => {
            cfg.quiver = Some(quiver);
            Command::Indecomposables
        }
        Cmd::HallTable { quiver } => {
            cfg.quiver = Some(quiver);
            Command::HallTable
        }
        Cmd::Presentation { quiver } => {
            cfg.quiver = Some(quiver);
            Command::Presentation
        }
        Cmd::VerifyRho { quiver } => {
            cfg.quiver = Some(quiver);
            Command::VerifyRho
        }
        Cmd::Examples { n, length } => Command::Examples {
            n: n as usize,
            length,
        },
    };
    match run(&command, &cfg) {
        Ok(report) => {
            print!("{}", report.render(cfg.format));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("hallq {}: {e}", command.name());
            ExitCode::from(2)
        }
    }
}
