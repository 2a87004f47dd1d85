use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sdom_cli::commands;
use sdom_cli::{ConeChoice, GenParams};
use sdom_core::OrderKind;

/// Exact stochastic dominance with verifiable witnesses.
///
/// Exit codes: 0 = dominates / pass, 1 = not dominated / fail, 2 = input error.
#[derive(Parser)]
#[command(name = "sdom", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Icv,
    Cv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConeArg {
    Orthant,
    Ray,
    Halfspace,
    Generators,
}

#[derive(Subcommand)]
enum Command {
    /// Decide dominance and optionally write the witness.
    Check {
        problem: PathBuf,
        #[arg(short, long)]
        witness: Option<PathBuf>,
    },
    /// Re-verify a witness file against a problem.
    Verify { problem: PathBuf, witness: PathBuf },
    /// Closed-form verdict (scalar or halfspace-cone problems only).
    Oracle { problem: PathBuf },
    /// Generate a seeded random problem file.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long)]
        ny: usize,
        #[arg(long)]
        nz: usize,
        #[arg(long, value_enum, default_value = "icv")]
        order: Order,
        #[arg(long, value_enum, default_value = "orthant")]
        cone: ConeArg,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Write x,u,s samples of a scalar certificate's utility as CSV.
    Plot {
        problem: PathBuf,
        witness: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut stdout = io::stdout();
    let code = match cli.command {
        Command::Check { problem, witness } => {
            commands::check(&problem, witness.as_deref(), &mut stdout)
        }
        Command::Verify { problem, witness } => commands::verify(&problem, &witness, &mut stdout),
        Command::Oracle { problem } => commands::oracle(&problem, &mut stdout),
        Command::Gen {
            seed,
            dim,
            ny,
            nz,
            order,
            cone,
            out,
        } => {
            let params = GenParams {
                dimension: dim,
                benchmark_atoms: ny,
                candidate_atoms: nz,
                order: match order {
                    Order::Icv => OrderKind::Icv,
                    Order::Cv => OrderKind::Cv,
                },
                cone: match cone {
                    ConeArg::Orthant => ConeChoice::Orthant,
                    ConeArg::Ray => ConeChoice::Ray,
                    ConeArg::Halfspace => ConeChoice::Halfspace,
                    ConeArg::Generators => ConeChoice::Generators,
                },
            };
            commands::gen(seed, &params, &out, &mut stdout)
        }
        Command::Plot {
            problem,
            witness,
            out,
        } => commands::plot(&problem, &witness, &out, &mut stdout),
    };
    ExitCode::from(code as u8)
}
