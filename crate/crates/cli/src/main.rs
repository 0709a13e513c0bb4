//! `bohr`: solve, tabulate, verify and sweep sharp Bohr-type radii.

mod commands;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use bohr_core::{ClassId, FunctionalKind, TheoremId};
use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::CliError;

#[derive(Parser)]
#[command(
    name = "bohr",
    version,
    about = "Sharp Bohr-type radii for close-to-convex classes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one radius and check sharpness against the extremal function.
    Radius(RadiusArgs),
    /// Tabulate the coefficient-power radius over a range of p.
    Table(TableArgs),
    /// Run the full verification suite.
    Verify(VerifyArgs),
    /// Sample the majorant and extremal curves on a grid of radii.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

/// Problem selection shared by `radius` and `sweep`.
#[derive(Args, Debug)]
pub struct ProblemArgs {
    /// Theorem token `t2.1` .. `t4.4`.
    #[arg(long, conflicts_with_all = ["class", "functional"])]
    pub theorem: Option<TheoremId>,
    /// Class token when no theorem is given.
    #[arg(long)]
    pub class: Option<ClassId>,
    /// Functional token when no theorem is given.
    #[arg(long)]
    pub functional: Option<FunctionalKind>,
    /// Exponent for f2 (real, at least 1).
    #[arg(long)]
    pub p: Option<f64>,
    /// Truncation index for f3 and f4 (at least 2).
    #[arg(long = "N", value_name = "N")]
    pub n: Option<usize>,
    /// Bracket tolerance of the solver.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Args, Debug)]
pub struct RadiusArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// `1` tabulates class c1, `2` tabulates class c2.
    #[arg(value_parser = clap::value_parser!(u8).range(1..=2))]
    pub which: u8,
    #[arg(long, default_value_t = 2)]
    pub p_min: u32,
    #[arg(long, default_value_t = 8)]
    pub p_max: u32,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Largest N in the f3/f4 monotonicity sweep.
    #[arg(long, default_value_t = 10)]
    pub n_max: usize,
    /// Replace d* for a class, e.g. `c2=0.51`. Used for fault injection.
    #[arg(long, hide = true, value_parser = parse_override)]
    pub override_d_star: Vec<(ClassId, f64)>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, default_value_t = 400)]
    pub points: usize,
    #[arg(long, default_value_t = 0.0)]
    pub r_min: f64,
    #[arg(long, default_value_t = 0.6)]
    pub r_max: f64,
    /// Destination CSV file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_override(s: &str) -> Result<(ClassId, f64), String> {
    let (class, value) = s.split_once('=').ok_or("expected CLASS=VALUE")?;
    let class = class.parse::<ClassId>().map_err(|e| e.to_string())?;
    let value = value.parse::<f64>().map_err(|e| e.to_string())?;
    Ok((class, value))
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        }),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Write {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let (text, ok, out) = match cli.command {
        Command::Radius(args) => {
            let (text, ok) = commands::radius(&args)?;
            (text, ok, args.out)
        }
        Command::Table(args) => (commands::table(&args)?, true, args.out),
        Command::Verify(args) => {
            let (text, ok) = commands::verify(&args)?;
            (text, ok, args.out)
        }
        Command::Sweep(args) => (commands::sweep(&args)?, true, args.out),
    };
    emit(&text, out.as_ref())?;
    Ok(ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
