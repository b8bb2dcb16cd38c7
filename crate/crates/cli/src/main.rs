use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use qsylv_cli::commands::{parse_dims, GenOptions, GenTarget, ParamChoice, SolveOptions};
use qsylv_cli::error::EXIT_USAGE;
use qsylv_cli::{run_check, run_gen, run_solve, run_verify, CliError};
use qsylv_core::genval::CoefRank;
use qsylv_core::{Branch, EtaAxis};

/// Solvability checks and general solutions for Sylvester-type quaternion
/// matrix equations.
///
/// Exit status: 0 consistent/verified, 1 usage or parse error,
/// 2 inconsistent/failed, 3 indeterminate, 4 generation failure.
#[derive(Parser)]
#[command(name = "qsylv", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Params {
    Zero,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    F1,
    F2,
}

#[derive(Clone, Copy, ValueEnum)]
enum EtaArg {
    I,
    J,
    K,
}

impl From<EtaArg> for EtaAxis {
    fn from(e: EtaArg) -> Self {
        match e {
            EtaArg::I => EtaAxis::I,
            EtaArg::J => EtaAxis::J,
            EtaArg::K => EtaAxis::K,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKindArg {
    Consistent,
    Inconsistent,
    Eta,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoefRankArg {
    Full,
    Random,
}

#[derive(clap::Args)]
struct SolveArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    #[arg(long, value_enum, default_value = "zero")]
    params: Params,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "f1")]
    branch: BranchArg,
    /// Residual bound for projector-form conditions.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the solvability conditions of a problem.
    Check {
        #[arg(long)]
        input: PathBuf,
        /// Residual bound for projector-form conditions.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Check a problem and write one solution from its general solution.
    Solve {
        #[command(flatten)]
        args: SolveArgs,
    },
    /// Recompute the residual of a solution file.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        solution: PathBuf,
        /// Residual bound (default 1e-8 * (1 + |rhs|_F)).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Generate a seeded test problem.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKindArg,
        /// `n`, or `m,n,p,q,k2,l2,k3,l3,k4,l4` (`m,p,k2,k3,k4` for eta).
        #[arg(long, default_value = "2")]
        dims: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "i")]
        eta: EtaArg,
        #[arg(long, value_enum, default_value = "full")]
        coef_rank: CoefRankArg,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        #[arg(long)]
        output: PathBuf,
        /// Witness path for consistent kinds (default `<output stem>.witness.json`).
        #[arg(long)]
        solution: Option<PathBuf>,
    },
    /// Solve the η-Hermitian equation.
    EtaSolve {
        #[command(flatten)]
        args: SolveArgs,
        /// Overrides the axis stored in the problem file.
        #[arg(long, value_enum)]
        eta: Option<EtaArg>,
    },
}

fn solve_options(a: SolveArgs, eta: Option<EtaArg>) -> SolveOptions {
    SolveOptions {
        input: a.input,
        output: a.output,
        params: ParamChoice { random: matches!(a.params, Params::Random), seed: a.seed },
        branch: match a.branch {
            BranchArg::F1 => Branch::F1,
            BranchArg::F2 => Branch::F2,
        },
        tol: a.tol,
        eta: eta.map(EtaAxis::from),
    }
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Check { input, tol } => run_check(&input, tol, out),
        Command::Solve { args } => run_solve(&solve_options(args, None), false, out),
        Command::EtaSolve { args, eta } => run_solve(&solve_options(args, eta), true, out),
        Command::Verify { input, solution, tol } => run_verify(&input, &solution, tol, out),
        Command::Gen { kind, dims, seed, eta, coef_rank, scale, output, solution } => {
            let opts = GenOptions {
                target: match kind {
                    GenKindArg::Consistent => GenTarget::Consistent,
                    GenKindArg::Inconsistent => GenTarget::Inconsistent,
                    GenKindArg::Eta => GenTarget::Eta(eta.into()),
                },
                dims: parse_dims(&dims)?,
                seed,
                coef_rank: match coef_rank {
                    CoefRankArg::Full => CoefRank::Full,
                    CoefRankArg::Random => CoefRank::Random,
                },
                scale,
                output,
                witness: solution,
            };
            run_gen(&opts, out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            return ExitCode::from(code as u8);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = match run(cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
