use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use baccara_cli::{CliResult, Failure, Level, Model};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact Nash equilibria of baccara chemin de fer.
#[derive(Parser)]
#[command(name = "baccara", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    B2,
    B3,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    None,
    Sampled,
    Full,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value = "b2")]
    model: ModelArg,
    /// Deck count `6`, or an inclusive range `1..20` where allowed.
    #[arg(long, default_value = "6")]
    decks: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Equilibrium schedule for one deck count.
    Solve {
        #[command(flatten)]
        common: Common,
        /// Exact rational such as `3/100`; also lists the equilibria there.
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Statistics and regimes over a range of deck counts.
    Sweep {
        #[command(flatten)]
        common: Common,
    },
    /// Best-response-discontinuity curves and their crossings.
    Curves {
        #[command(flatten)]
        common: Common,
        /// Samples per curve over [0, 1/10].
        #[arg(long, default_value_t = 512)]
        resolution: usize,
    },
    /// Pass/fail checks; exits 1 on any failure.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "sampled")]
        level: LevelArg,
        #[arg(long)]
        alpha: Option<String>,
        /// Compare Foster's algorithm with brute force on random games instead.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 500)]
        seeds: u64,
    },
}

fn model(m: ModelArg) -> Model {
    match m {
        ModelArg::B2 => Model::B2,
        ModelArg::B3 => Model::B3,
    }
}

fn single(decks: &str) -> CliResult<baccara::cards::DeckCount> {
    match baccara_cli::parse_decks(decks)?.as_slice() {
        [d] => Ok(*d),
        _ => Err(Failure::Usage(format!("expected a single deck count, got {decks:?}"))),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> CliResult<()> {
    let res = match out {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    res.map_err(|e| Failure::Usage(format!("cannot write output: {e}")))
}

fn unsupported(f: &str, cmd: &str) -> Failure {
    Failure::Usage(format!("format {f} is not available for {cmd}"))
}

/// Returns whether every check passed.
fn run(cli: Cli) -> CliResult<bool> {
    match cli.command {
        Command::Solve { common, alpha } => {
            let d = single(&common.decks)?;
            let alpha = alpha.as_deref().map(baccara_cli::parse_alpha).transpose()?;
            let r = baccara_cli::solve(model(common.model), d, alpha.as_ref())?;
            let text = match common.format {
                Format::Json => baccara_cli::to_json(&r),
                Format::Text => baccara_cli::solve_text(&r),
                Format::Csv => return Err(unsupported("csv", "solve")),
            };
            emit(&common.out, &text)?;
        }
        Command::Sweep { common } => {
            let decks = baccara_cli::parse_decks(&common.decks)?;
            let r = baccara_cli::sweep(model(common.model), &decks)?;
            let text = match common.format {
                Format::Json => baccara_cli::to_json(&r),
                Format::Csv => baccara_cli::sweep_csv(&r),
                Format::Text => baccara_cli::sweep_text(&r),
            };
            emit(&common.out, &text)?;
        }
        Command::Curves { common, resolution } => {
            let d = single(&common.decks)?;
            let r = baccara_cli::curves(model(common.model), d, resolution)?;
            let text = match common.format {
                Format::Json => baccara_cli::to_json(&r),
                Format::Csv | Format::Text => baccara_cli::curves_csv(&r),
            };
            emit(&common.out, &text)?;
        }
        Command::Verify { common, level, alpha, oracle, seeds } => {
            let r = if oracle {
                baccara_cli::verify_oracle(seeds)
            } else {
                let decks = baccara_cli::parse_decks(&common.decks)?;
                let alpha = alpha.as_deref().map(baccara_cli::parse_alpha).transpose()?;
                let level = match level {
                    LevelArg::None => Level::None,
                    LevelArg::Sampled => Level::Sampled,
                    LevelArg::Full => Level::Full,
                };
                baccara_cli::verify_models(model(common.model), &decks, level, alpha.as_ref())?
            };
            let text = match common.format {
                Format::Json => baccara_cli::to_json(&r),
                Format::Text => baccara_cli::verify_text(&r),
                Format::Csv => return Err(unsupported("csv", "verify")),
            };
            emit(&common.out, &text)?;
            return Ok(r.passed);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("{f}");
            ExitCode::from(f.code() as u8)
        }
    }
}
