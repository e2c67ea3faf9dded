use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use qbs_cli::commands::{
    cmd_complexity, cmd_differential, cmd_scan, cmd_search, cmd_theorems, CmdOutput, OutputFormat,
    DEFAULT_SEED,
};
use qbs_cli::{max_qubits_from_env, CliError};

/// Usage, file, and parse problems exit with this code; search semantics
/// use 0/1/2 as documented on the subcommands.
const EXIT_USAGE: u8 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "qbs",
    version,
    about = "Bit-by-bit quantum binary search simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
            Format::Text => OutputFormat::Text,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the staged quantum search (exit 0 found, 1 no solution, 2
    /// internal inconsistency).
    Search {
        /// Oracle file (JSON: {"n", "kind": table|minterms|expr, "data"}).
        #[arg(long)]
        oracle: PathBuf,
        /// Logistic map parameter in [0, 4].
        #[arg(long, default_value_t = 3.71)]
        a: f64,
        /// Override the per-stage amplifier budget (default 2n).
        #[arg(long)]
        kmax: Option<usize>,
        /// Override T(U_f) in the complexity block.
        #[arg(long)]
        tuf: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the classical linear scan (exit 0 found, 1 reject).
    Scan {
        #[arg(long)]
        oracle: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep the amplifier crossing bounds over a range of bit counts.
    Theorems {
        #[arg(long, default_value_t = 1)]
        n_lo: usize,
        #[arg(long, default_value_t = 20)]
        n_hi: usize,
        #[arg(long, default_value_t = 3.71)]
        a: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the gate/channel formulas, optionally reconciled against a
    /// measured run of an oracle file.
    Complexity {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        tuf: Option<u64>,
        /// Oracle to measure; expression oracles are compiled for T(U_f).
        #[arg(long)]
        oracle: Option<PathBuf>,
        #[arg(long, default_value_t = 3.71)]
        a: f64,
        #[arg(long)]
        kmax: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the quantum search against the classical scan over many
    /// functions (exit 1 on any disagreement).
    Differential {
        /// Bit count; n <= 4 defaults to exhaustive enumeration.
        #[arg(long)]
        n: usize,
        /// Sample count; forces sampled mode.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 3.71)]
        a: f64,
        #[arg(long)]
        kmax: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: Cli) -> qbs_cli::Result<u8> {
    let max_qubits = max_qubits_from_env()?;
    let (output, out_path) = match cli.command {
        Command::Search {
            oracle,
            a,
            kmax,
            tuf,
            format,
            out,
        } => (
            cmd_search(&oracle, a, kmax, tuf, format.into(), max_qubits)?,
            out,
        ),
        Command::Scan {
            oracle,
            format,
            out,
        } => (cmd_scan(&oracle, format.into())?, out),
        Command::Theorems {
            n_lo,
            n_hi,
            a,
            format,
            out,
        } => (cmd_theorems(n_lo, n_hi, a, format.into())?, out),
        Command::Complexity {
            n,
            tuf,
            oracle,
            a,
            kmax,
            format,
            out,
        } => (
            cmd_complexity(
                n,
                tuf,
                oracle.as_deref(),
                a,
                kmax,
                format.into(),
                max_qubits,
            )?,
            out,
        ),
        Command::Differential {
            n,
            samples,
            seed,
            a,
            kmax,
            format,
            out,
        } => (
            cmd_differential(n, samples, seed, a, kmax, format.into(), max_qubits)?,
            out,
        ),
    };
    emit(&output, out_path.as_deref())?;
    Ok(output.exit_code)
}

fn emit(output: &CmdOutput, out_path: Option<&std::path::Path>) -> qbs_cli::Result<()> {
    match out_path {
        Some(path) => std::fs::write(path, &output.payload).map_err(|source| CliError::Io {
            path: Some(path.to_path_buf()),
            source,
        }),
        None => {
            print!("{}", output.payload);
            Ok(())
        }
    }
}
