use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use ballerg::experiments::{self, ExperimentConfig, Outcome, CATALOG};
use clap::{Parser, Subcommand};
use rayon::prelude::*;

#[derive(Parser)]
#[command(
    name = "ballerg",
    version,
    about = "Composition-operator dynamics on the unit ball"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and write its artifacts.
    Run {
        experiment: String,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output directory [default: out/<experiment>]
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every catalog experiment concurrently, one directory each.
    RunAll {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Print the experiment catalog.
    List,
}

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_INVALID: u8 = 2;

fn load_config(path: Option<&Path>) -> anyhow::Result<ExperimentConfig> {
    let cfg = match path {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    let cfg = cfg.with_env_seed()?;
    cfg.validate()?;
    Ok(cfg)
}

fn run_one(id: &str, cfg: &ExperimentConfig, dir: &Path) -> anyhow::Result<Outcome> {
    let outcome = experiments::run(id, cfg)?;
    outcome
        .write_to(dir)
        .with_context(|| format!("writing artifacts to {}", dir.display()))?;
    Ok(outcome)
}

fn print_result(id: &str, outcome: &Outcome, dir: &Path) {
    for c in &outcome.report.checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {id}: {}", c.name);
    }
    println!(
        "{id}: {} -> {}",
        if outcome.passed() { "pass" } else { "fail" },
        dir.display()
    );
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::List => {
            for e in CATALOG {
                println!("{:<24} {}", e.id, e.checks);
            }
            ExitCode::SUCCESS
        }
        Command::Run {
            experiment,
            config,
            out,
        } => {
            if experiments::info(&experiment).is_none() {
                eprintln!("error: unknown experiment {experiment:?}; see `ballerg list`");
                return ExitCode::from(EXIT_INVALID);
            }
            let cfg = match load_config(config.as_deref()) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: invalid config: {e:#}");
                    return ExitCode::from(EXIT_INVALID);
                }
            };
            let dir = out
                .or_else(|| cfg.out.clone())
                .unwrap_or_else(|| Path::new("out").join(&experiment));
            match run_one(&experiment, &cfg, &dir) {
                Ok(o) => {
                    print_result(&experiment, &o, &dir);
                    if o.passed() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(EXIT_CHECK_FAILED)
                    }
                }
                Err(e) => {
                    eprintln!("error: {e:#}");
                    ExitCode::from(EXIT_INVALID)
                }
            }
        }
        Command::RunAll { config, out } => {
            let cfg = match load_config(config.as_deref()) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: invalid config: {e:#}");
                    return ExitCode::from(EXIT_INVALID);
                }
            };
            let results: Vec<_> = CATALOG
                .par_iter()
                .map(|e| {
                    let dir = out.join(e.id);
                    (e.id, run_one(e.id, &cfg, &dir), dir)
                })
                .collect();
            let mut code = ExitCode::SUCCESS;
            let mut invalid = false;
            for (id, res, dir) in results {
                match res {
                    Ok(o) => {
                        print_result(id, &o, &dir);
                        if !o.passed() {
                            code = ExitCode::from(EXIT_CHECK_FAILED);
                        }
                    }
                    Err(e) => {
                        eprintln!("error: {id}: {e:#}");
                        invalid = true;
                    }
                }
            }
            if invalid {
                ExitCode::from(EXIT_INVALID)
            } else {
                code
            }
        }
    }
}
