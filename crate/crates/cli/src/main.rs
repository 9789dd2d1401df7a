//! `cascade-bench`: run a cascade bandit regret experiment and write its
//! CSVs (and optionally SVG charts).
//!
//! Exit codes: 0 success, 1 configuration error, 2 runtime error.

use std::path::PathBuf;
use std::process::ExitCode;

use cascade_core::config::load_config;
use cascade_core::harness::{run_experiment, Execution};
use cascade_core::policies::PolicyKind;
use cascade_core::report::emit;
use cascade_core::Error;
use clap::Parser;

#[derive(Debug, Parser)]
#[command(
    name = "cascade-bench",
    version,
    about = "Cascade bandit regret experiments"
)]
struct Cli {
    /// JSON experiment configuration.
    #[arg(long, value_name = "PATH")]
    config: PathBuf,

    /// Output directory, created if absent.
    #[arg(long, value_name = "DIR")]
    out: PathBuf,

    /// Also write one SVG line chart per CSV.
    #[arg(long)]
    svg: bool,

    /// Run only these policies (comma-separated subset of ec,ae,lcb,ts).
    #[arg(long, value_name = "LIST", value_delimiter = ',')]
    policies: Option<Vec<String>>,

    /// Override the configured master seed.
    #[arg(long, value_name = "U64")]
    seed: Option<u64>,

    /// Run every replication on the calling thread.
    #[arg(long)]
    serial: bool,
}

const CONFIG_ERROR: u8 = 1;
const RUNTIME_ERROR: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(CONFIG_ERROR);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("cascade-bench: {e}");
            ExitCode::from(if e.is_config_error() {
                CONFIG_ERROR
            } else {
                RUNTIME_ERROR
            })
        }
    }
}

fn run(cli: &Cli) -> Result<(), Error> {
    let mut config = load_config(&cli.config).map_err(|e| match e {
        // An unreadable config file is a configuration problem, not a failed run.
        Error::Io { path, source } => Error::Config(format!("{}: {source}", path.display())),
        other => other,
    })?;
    if let Some(names) = &cli.policies {
        let wanted = names
            .iter()
            .map(|n| n.trim().parse::<PolicyKind>())
            .collect::<Result<Vec<_>, _>>()?;
        config.policies.retain(|p| wanted.contains(p));
        if config.policies.is_empty() {
            return Err(Error::Config(
                "--policies selects none of the configured policies".into(),
            ));
        }
    }
    if let Some(seed) = cli.seed {
        config.master_seed = seed;
    }
    let execution = if cli.serial {
        Execution::Serial
    } else {
        Execution::Parallel
    };
    let results = run_experiment(&config, execution)?;
    for path in emit(&results, &cli.out, cli.svg)? {
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}
