mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use commands::Failure;

/// Exact Bernstein-Sato polynomials, the graded line model and gluing data.
///
/// Machine output goes to stdout as JSON; diagnostics go to stderr.
/// Exit codes: 1 bad input, 2 bounds/window/time budget exhausted,
/// 3 invariant violation. BSATLAB_MAX_MS sets a global time budget.
#[derive(Parser, Debug)]
#[command(name = "bsatlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bernstein-Sato polynomial b(s) and operator P with P f^(s+1) = b(s) f^s.
    Bsat(BsatArgs),
    /// Roots of b(s) modulo 1.
    Lambda(SolverArgs),
    /// Graded model of f = t on the line.
    Line(LineArgs),
    /// Gluing data from a JSON file {"dim", "S", "K"}.
    Glue(GlueArgs),
}

#[derive(Args, Debug)]
struct SolverArgs {
    /// Polynomial, e.g. "x^2+y^3".
    f: String,
    /// Variable order, comma separated (default: identifiers of f, sorted).
    #[arg(long, value_delimiter = ',')]
    vars: Option<Vec<String>>,
    /// Largest operator order to try.
    #[arg(long)]
    max_order: Option<u32>,
    /// Largest x-degree of operator coefficients.
    #[arg(long)]
    max_xdeg: Option<u32>,
    /// Largest s-degree of operator coefficients.
    #[arg(long)]
    max_sdeg: Option<u32>,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args, Debug)]
struct BsatArgs {
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("mode").required(true).multiple(false)))]
struct LineArgs {
    /// Specialize at s = lambda and classify.
    #[arg(long, group = "mode", allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Report the quotient by the submodule generated by t^s.
    #[arg(long, group = "mode")]
    quotient: bool,
    /// Specialize at a positive integer n and check it is the !-extension.
    #[arg(long, group = "mode")]
    shriek: Option<u32>,
    /// Degrees -N..=N are modeled.
    #[arg(long, default_value_t = 8)]
    window: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug)]
struct GlueArgs {
    /// JSON input file.
    input: std::path::PathBuf,
    /// Add the full list of consistency checks; exit 3 if any fails.
    #[arg(long)]
    checks: bool,
}

fn deadline_from_env() -> Result<Option<Instant>, Failure> {
    match std::env::var("BSATLAB_MAX_MS") {
        Ok(text) => {
            let ms: u64 = text
                .trim()
                .parse()
                .map_err(|_| Failure::Input(format!("BSATLAB_MAX_MS: not a number: {text:?}")))?;
            Ok(Some(Instant::now() + Duration::from_millis(ms)))
        }
        Err(_) => Ok(None),
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    let deadline = deadline_from_env()?;
    let out = match cli.command {
        Command::Bsat(args) => commands::bsat(&args.solver, deadline)?,
        Command::Lambda(args) => commands::lambda(&args, deadline)?,
        Command::Line(args) => commands::line(&args)?,
        Command::Glue(args) => commands::glue(&args)?,
    };
    if deadline.is_some_and(|d| Instant::now() > d) {
        return Err(Failure::Limit("time budget exhausted".into()));
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(text) => {
            // A closed pipe on stdout is not an error of the computation.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.code())
        }
    }
}
