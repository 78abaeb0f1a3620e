//! `qmeasure`: q-integrals, verification suites, worked examples and sweeps.

mod check;
mod demo;
mod export;
mod failure;
mod integrate;
mod output;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use failure::Failure;
use output::Format;

#[derive(Parser, Debug)]
#[command(name = "qmeasure", version, about = "Quantum measures and the q-integral")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = qmeasure::finite_space::DEFAULT_SEED)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// q-integral of a function over an interval of [0, 1].
    Integrate(integrate::Args),
    /// Run verification suites on a measure-space or matrix file.
    Check(check::Args),
    /// Reproduce a worked example.
    Demo(demo::Args),
    /// Emit a parameter sweep against closed forms.
    Table(table::Args),
    /// Print a built-in measure space as JSON.
    Export(export::Args),
}

fn run(cli: &Cli) -> Result<i32, Failure> {
    let (rendered, code) = match &cli.command {
        Command::Integrate(args) => integrate::run(args)?,
        Command::Check(args) => check::run(args, cli.seed)?,
        Command::Demo(args) => demo::run(args)?,
        Command::Table(args) => table::run(args)?,
        Command::Export(args) => export::run(args)?,
    };
    output::write(&rendered.render(cli.format), cli.output.as_deref())?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = run(&cli).unwrap_or_else(|f| {
        eprintln!("error: {f}");
        f.code
    });
    ExitCode::from(code as u8)
}
