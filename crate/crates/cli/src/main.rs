use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use osp12_cli::{
    cmd_bratteli, cmd_rep, cmd_verify_conjecture, cmd_verify_corollary, cmd_verify_theorem1, default_mode,
    DiagramFormat, Outcome, RunOptions,
};
use osp12_core::bratteli::Level;
use osp12_core::closure::Mode;
use osp12_core::linalg::Rational;
use osp12_core::osp::Parity;

/// Exact checks for osp(1|2) centralizers, the Bannai-Ito algebra and B3.
#[derive(Parser)]
#[command(name = "osp12", version)]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = ReportFormat::Text, global = true)]
    report: ReportFormat,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Krylov seed; results do not depend on it.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Worker threads (default: OSP12_THREADS, else all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Include per-check wall times.
    #[arg(long, global = true)]
    timings: bool,
    /// Abort closures after this many seconds (exit code 2).
    #[arg(long, global = true)]
    time_budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    SpectraOnly,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Modular,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Relations and Casimir of every irrep up to a given 2j.
    Rep {
        #[arg(long, default_value_t = 6)]
        max_two_j: u32,
    },
    /// Brauer presentation, Psi-images, reductions and omega-quotients.
    VerifyTheorem1 {
        #[arg(long, default_value = "-1", allow_hyphen_values = true)]
        eta: String,
    },
    /// The fundamental threefold product.
    VerifyCorollary,
    /// The conjectured quotient on the threefold product of [j].
    VerifyConjecture {
        #[arg(long)]
        two_j: u32,
        #[arg(long, value_enum, default_value_t = LevelArg::SpectraOnly)]
        level: LevelArg,
        /// Default: exact up to 125 dimensions, modular above.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        parity: Parity,
    },
    /// Export the three-level Bratteli diagram.
    Bratteli {
        #[arg(long)]
        two_j: u32,
        #[arg(long, value_enum, default_value_t = FormatArg::Dot)]
        format: FormatArg,
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        parity: Parity,
    },
}

fn threads(flag: Option<usize>) -> Option<usize> {
    flag.or_else(|| std::env::var("OSP12_THREADS").ok().and_then(|v| v.parse().ok()))
}

fn emit(text: &str, out: Option<&PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    if let Some(n) = threads(cli.threads) {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring the thread pool")?;
    }
    let opts = RunOptions { seed: cli.seed, timings: cli.timings, budget: cli.time_budget.map(Duration::from_secs) };
    let outcome: Outcome = match cli.command {
        Command::Rep { max_two_j } => cmd_rep(max_two_j, &opts).into(),
        Command::VerifyTheorem1 { eta } => {
            let eta: Rational = eta.parse().map_err(|e| anyhow::anyhow!("bad --eta: {e}"))?;
            cmd_verify_theorem1(&eta, &opts).into()
        }
        Command::VerifyCorollary => cmd_verify_corollary(&opts).into(),
        Command::VerifyConjecture { two_j, level, mode, parity } => {
            let level = match level {
                LevelArg::SpectraOnly => Level::SpectraOnly,
                LevelArg::Full => Level::Full,
            };
            let mode = match mode {
                Some(ModeArg::Exact) => Mode::Exact,
                Some(ModeArg::Modular) => Mode::Modular,
                None => default_mode(two_j),
            };
            cmd_verify_conjecture(two_j, parity, level, mode, &opts)
        }
        Command::Bratteli { two_j, format, parity } => {
            let f = match format {
                FormatArg::Dot => DiagramFormat::Dot,
                FormatArg::Json => DiagramFormat::Json,
            };
            let text = cmd_bratteli(two_j, parity, f).map_err(anyhow::Error::msg)?;
            emit(&text, cli.out.as_ref())?;
            return Ok(0);
        }
    };
    let text = match cli.report {
        ReportFormat::Text => outcome.report.to_text(),
        ReportFormat::Json => outcome.report.to_json(),
    };
    emit(&text, cli.out.as_ref())?;
    Ok(outcome.code)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
