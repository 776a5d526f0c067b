mod commands;
mod outcome;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use singcurve_core::JetConfig;

use outcome::{Failure, Outcome};

#[derive(Parser)]
#[command(name = "singcurve", version, about = "Invariants of plane curve singularities")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Semigroup, closed-form Poincaré series and zeta function of a branch.
    Branch {
        fixture: PathBuf,
        /// Compare expansions up to t^BOUND.
        #[arg(long, default_value_t = 100)]
        bound: i64,
    },
    /// Multiplicities, zeta function and Alexander polynomial of a graph.
    Graph {
        fixture: PathBuf,
        /// Bound for the diagonal comparison.
        #[arg(long, default_value_t = 60)]
        bound: i64,
    },
    /// Jet-space computation of P_C and X_C for a parameterized curve.
    Curve {
        fixture: PathBuf,
        /// Laurent window `LO..HI`, one range for all axes or a comma
        /// separated range per axis.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        /// Cap on the jet degree of the precision ladder.
        #[arg(long)]
        jet_cap: Option<usize>,
        /// Bound for the diagonal comparison.
        #[arg(long, default_value_t = 60)]
        bound: i64,
    },
    /// Poincaré series of a semigroup at infinity given by its δ-sequence.
    Infinity {
        fixture: PathBuf,
        #[arg(long, default_value_t = 60)]
        bound: i64,
    },
    /// Run every applicable check on every fixture of a directory.
    Verify {
        /// Corpus directory (alternative to `--corpus`).
        dir: Option<PathBuf>,
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        jet_cap: Option<usize>,
    },
}

/// `--jet-cap` wins over `SINGCURVE_PRECISION_CAP`, which wins over the
/// library defaults.
fn jet_config(flag: Option<usize>) -> Result<JetConfig, Failure> {
    if let Some(c) = flag {
        return Ok(JetConfig::with_cap(c));
    }
    match std::env::var("SINGCURVE_PRECISION_CAP") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(JetConfig::with_cap)
            .map_err(|_| Failure::input(format!("SINGCURVE_PRECISION_CAP must be a positive integer, got {v:?}"))),
        Err(_) => Ok(JetConfig::default()),
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Branch { fixture, bound } => commands::branch(fixture, *bound),
        Command::Graph { fixture, bound } => commands::graph(fixture, *bound),
        Command::Curve { fixture, window, jet_cap, bound } => {
            let window = window.as_deref().map(commands::parse_window).transpose()?;
            commands::curve(fixture, window, jet_config(*jet_cap)?, *bound)
        }
        Command::Infinity { fixture, bound } => commands::infinity(fixture, *bound),
        Command::Verify { dir, corpus, jet_cap } => {
            let dir =
                corpus.as_ref().or(dir.as_ref()).ok_or_else(|| Failure::input("verify needs a corpus directory"))?;
            commands::verify(dir, jet_config(*jet_cap)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
            }
            ExitCode::from(out.code as u8)
        }
        Err(f) => {
            if cli.format == Format::Json {
                println!("{}", serde_json::json!({ "error": f.kind, "message": f.message }));
            }
            eprintln!("error ({}): {}", f.kind, f.message);
            ExitCode::from(f.code as u8)
        }
    }
}
