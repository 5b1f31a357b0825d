use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use weil_jacobi::cli::{self, CheckOptions, Outcome};
use weil_jacobi::problem::{Problem, Suite};

#[derive(Parser)]
#[command(name = "weil-jacobi", version, about = "Exact Jacobi-bracket checks on near-point manifolds over Weil algebras")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Prop1,
    LieRinehart,
    JacobiAxioms,
    Prolongation,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the algebra is local and the structure section is well formed.
    Validate {
        file: PathBuf,
        /// Write the JSON report to a file, or `-` for stdout.
        #[arg(long)]
        json: Option<String>,
        #[arg(long)]
        quiet: bool,
    },
    /// Run identity suites on seeded random samples.
    Check {
        file: PathBuf,
        /// May be repeated; defaults to the file's `checks`, else all suites.
        #[arg(long, value_enum)]
        suite: Vec<SuiteArg>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
        /// Write the JSON report to a file, or `-` for stdout.
        #[arg(long)]
        json: Option<String>,
        #[arg(long)]
        quiet: bool,
    },
    /// Print {F, G} for two named or literal A-valued polynomials.
    Bracket { file: PathBuf, f: String, g: String },
}

fn suites(args: &[SuiteArg]) -> Option<Vec<Suite>> {
    if args.is_empty() {
        return None;
    }
    if args.iter().any(|s| matches!(s, SuiteArg::All)) {
        return Some(Suite::ALL.to_vec());
    }
    Some(
        args.iter()
            .map(|s| match s {
                SuiteArg::Prop1 => Suite::Prop1,
                SuiteArg::LieRinehart => Suite::LieRinehart,
                SuiteArg::JacobiAxioms => Suite::JacobiAxioms,
                SuiteArg::Prolongation => Suite::Prolongation,
                SuiteArg::All => unreachable!(),
            })
            .collect(),
    )
}

fn emit(outcome: &Outcome, json: Option<&str>, quiet: bool) -> std::io::Result<()> {
    let to_stdout = json == Some("-");
    if !quiet && !to_stdout {
        print!("{}", outcome.to_text());
    }
    match json {
        Some("-") => std::io::stdout().write_all(outcome.to_json().as_bytes())?,
        Some(path) => std::fs::write(path, outcome.to_json())?,
        None => {}
    }
    Ok(())
}

fn load(path: &Path) -> Result<Problem, ExitCode> {
    Problem::from_path(path).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        ExitCode::from(cli::error_code(&e))
    })
}

fn run(args: Args) -> Result<ExitCode, ExitCode> {
    let fail = |e: weil_jacobi::Error| {
        eprintln!("error: {e}");
        ExitCode::from(cli::error_code(&e))
    };
    let io_fail = |e: std::io::Error| {
        eprintln!("error: {e}");
        ExitCode::from(cli::EXIT_STRUCTURAL)
    };
    match args.command {
        Command::Validate { file, json, quiet } => {
            let outcome = cli::validate(&load(&file)?);
            emit(&outcome, json.as_deref(), quiet).map_err(io_fail)?;
            Ok(ExitCode::from(outcome.exit_code))
        }
        Command::Check { file, suite, seed, samples, json, quiet } => {
            let problem = load(&file)?;
            let options = CheckOptions { suites: suites(&suite), seed, samples };
            let outcome = cli::check(&problem, &options).map_err(fail)?;
            emit(&outcome, json.as_deref(), quiet).map_err(io_fail)?;
            Ok(ExitCode::from(outcome.exit_code))
        }
        Command::Bracket { file, f, g } => {
            let problem = load(&file)?;
            let out = cli::bracket(&problem, &f, &g).map_err(fail)?;
            print!("{}", out.to_text());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    run(args).unwrap_or_else(|code| code)
}
