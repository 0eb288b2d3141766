use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ratinv::verify::DEFAULT_SEED;
use ratinv_cli::{render, run_source, CliError, Command, Format, Options};

/// Exact inversion and properness testing for rational curves and surfaces.
///
/// Exit status: 0 when a verdict was reached, 2 when inconclusive, 1 on error.
#[derive(Parser)]
#[command(name = "ratinv", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: FormatArg,
    /// Largest t-degree tried when searching for moving surfaces.
    #[arg(long, default_value_t = 3, global = true)]
    m_max: u32,
    /// 0-based column to mark (and erase) in the implicitization matrix.
    #[arg(long, global = true)]
    marked_column: Option<usize>,
    /// Seed for random-point pre-checks; never changes a verdict.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
    /// Report wall-clock time in milliseconds.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sylvester-matrix inversion of a plane curve.
    CurveInvert { input: PathBuf },
    /// Properness test and inverse of a surface (Dixon first for affine
    /// inputs with a shared denominator, otherwise moving surfaces).
    SurfaceInvert { input: PathBuf },
    /// Print the moving surfaces found and the assembled matrix.
    MovingMatrix { input: PathBuf },
    /// Dixon route only.
    Dixon { input: PathBuf },
    /// Check a supplied inverse or implicit equation.
    Verify { input: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Structured,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let (command, path) = match cli.command {
        Cmd::CurveInvert { input } => (Command::CurveInvert, input),
        Cmd::SurfaceInvert { input } => (Command::SurfaceInvert, input),
        Cmd::MovingMatrix { input } => (Command::MovingMatrix, input),
        Cmd::Dixon { input } => (Command::Dixon, input),
        Cmd::Verify { input } => (Command::Verify, input),
    };
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Structured => Format::Structured,
    };
    let opts = Options { m_max: cli.m_max, marked_column: cli.marked_column, seed: cli.seed, timing: cli.timing };
    let outcome = std::fs::read_to_string(&path)
        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })
        .and_then(|src| run_source(command, &src, &opts));
    let (out, err, code) = render(&outcome, format);
    let _ = std::io::stdout().write_all(out.as_bytes());
    let _ = std::io::stderr().write_all(err.as_bytes());
    ExitCode::from(code as u8)
}
