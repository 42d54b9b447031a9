use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qfilter::commands::{cmd_counterexample, cmd_laws, cmd_quantale, Overrides};
use qfilter::error::{CliError, Result};
use qfilter::format::parse_rational;
use qfilter::report::Document;

#[derive(Parser)]
#[command(name = "qfilter", version, about = "Quantale-valued filters and their monads")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(clap::Args, Default)]
struct Common {
    /// Builtin name or path to a quantale file.
    #[arg(long)]
    quantale: Option<String>,
    /// Scenario file; flags given on the command line take precedence.
    #[arg(long)]
    scenario: Option<String>,
    #[arg(long)]
    variant: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Kleisli extension cap for `laws`, catalog cap for `counterexample`.
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Check axioms, condition (S) and residuum continuity of a quantale.
    Quantale {
        #[arg(long)]
        quantale: String,
        /// axioms, adjunction, s or grid; repeatable. Default: all that apply.
        #[arg(long = "check")]
        checks: Vec<String>,
        /// Grid step for t-norms, 1/n.
        #[arg(long, default_value = "1/64")]
        step: String,
    },
    /// Monad laws, naturality and the classical oracle on a finite quantale.
    Laws {
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate the two-step coreflection counterexample on a t-norm.
    Counterexample {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        t: Option<String>,
        #[arg(long)]
        s: Option<String>,
        #[arg(long)]
        epsilon: Option<String>,
        #[arg(long)]
        truncation: Option<u64>,
    },
}

fn workers() -> Result<Option<usize>> {
    match std::env::var("QFILTER_WORKERS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::input(format!("QFILTER_WORKERS must be a positive integer, got {v:?}"))),
        },
        Err(_) => Ok(None),
    }
}

fn overrides(c: Common) -> Result<Overrides> {
    Ok(Overrides {
        quantale: c.quantale,
        scenario: c.scenario,
        seed: c.seed,
        budget: c.budget,
        variant: c.variant,
        workers: workers()?,
        ..Overrides::default()
    })
}

fn run(cli: Cli) -> Result<Document> {
    match cli.command {
        Command::Quantale { quantale, checks, step } => cmd_quantale(&quantale, &checks, parse_rational(&step)?),
        Command::Laws { common } => cmd_laws(&overrides(common)?),
        Command::Counterexample { common, t, s, epsilon, truncation } => {
            let o = Overrides { t, s, epsilon, truncation, ..overrides(common)? };
            cmd_counterexample(&o)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out, format) = (cli.out.clone(), cli.format);
    let doc = match run(cli) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("qfilter: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let text = match format {
        Format::Text => doc.to_text(),
        Format::Structured => doc.to_structured(),
    };
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &text) {
                let e = CliError::Io { path: path.display().to_string(), source: e };
                eprintln!("qfilter: {e}");
                return ExitCode::from(e.exit_code() as u8);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(doc.exit_code as u8)
}
