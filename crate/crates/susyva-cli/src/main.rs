use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use susyva::charmod::Complex64;
use susyva::Rat;
use susyva_cli::commands::{self, Output};
use susyva_cli::config::{default_taus, parse_rat, parse_tau, RunConfig, Setup, DEFAULT_MAX_STATES, DEFAULT_SEED};
use susyva_cli::{suites, CliError};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "susyva", version, about = "Exact bracket, Fock space and character computations for SUSY lattice vertex algebras")]
struct Cli {
    /// Lattice configuration (JSON with `gram`, optional `cocycle`, `n2`, `n4`).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Energy cutoff for Fock truncations.
    #[arg(long = "emax", global = true, value_parser = parse_rat, default_value = "7/2")]
    e_max: Rat,
    /// Series order past the leading exponent.
    #[arg(long, global = true, value_parser = parse_rat, default_value = "8")]
    order: Rat,
    /// Sample point `RE,IM`; repeat for several. Defaults to five fixed points.
    #[arg(long, global = true, value_parser = parse_tau, allow_hyphen_values = true)]
    tau: Vec<Complex64>,
    /// Relative tolerance for numerical checks.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized property sampling.
    #[arg(long, env = "SUSYVA_SEED", global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Largest Fock truncation enumerated by the characters suite.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_STATES)]
    max_states: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank, determinant, parity and discriminant group.
    LatticeInfo,
    /// Cocycle signs on basis pairs.
    Cocycle,
    /// `[A Λ B]` of two superfield expressions.
    Bracket { a: String, b: String },
    /// Basis of a truncated Fock sector.
    Fock {
        /// Index of the coset representative.
        #[arg(long, default_value_t = 0)]
        sector: usize,
        #[arg(long)]
        twisted: bool,
        /// List states as well as dimensions.
        #[arg(long)]
        states: bool,
    },
    /// Closed-form characters of every coset.
    Characters,
    /// Numerical S and T identities.
    ModularCheck,
    /// Run verification suites.
    Verify {
        /// Comma-separated suites or `all`.
        #[arg(long, default_value = "all")]
        suites: String,
    },
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let cfg = RunConfig {
        e_max: cli.e_max,
        order: cli.order,
        taus: if cli.tau.is_empty() { default_taus() } else { cli.tau },
        tol: cli.tol,
        seed: cli.seed,
        max_states: cli.max_states,
    };
    cfg.validate()?;
    let setup = match &cli.config {
        Some(p) => Setup::load(p)?,
        None => return Err(CliError::Usage("--config PATH is required".to_string())),
    };
    match cli.command {
        Command::LatticeInfo => Ok(commands::lattice_info(&setup)),
        Command::Cocycle => Ok(commands::cocycle(&setup)),
        Command::Bracket { a, b } => commands::bracket(&setup, &a, &b),
        Command::Fock { sector, twisted, states } => commands::fock(&setup, &cfg, sector, twisted, states),
        Command::Characters => commands::characters(&setup, &cfg),
        Command::ModularCheck => commands::modular(&setup, &cfg),
        Command::Verify { suites: spec } => {
            let selected = suites::select(&spec).map_err(CliError::Usage)?;
            Ok(commands::verify(&setup, &cfg, &selected))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(out) => {
            let body = match format {
                Format::Text => out.text,
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&out.json).expect("json")),
            };
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(e) => {
            match format {
                Format::Text => eprintln!("error: {e}"),
                Format::Json => println!("{}", serde_json::json!({ "error": e.to_string(), "exit": e.exit_code() })),
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
