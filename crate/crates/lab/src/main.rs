use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use conelab_lab::{
    describe, list, load, run, shipped, ExperimentConfig, LabError, Suite, EXIT_CONFIG, EXIT_FAIL,
};

#[derive(Parser)]
#[command(
    name = "conelab",
    version,
    about = "Index experiments on a curve with a conical point"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the suites of a config and write the report.
    Run {
        config: PathBuf,
        /// Output directory, overriding `output_dir`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Restrict to these suites (repeatable).
        #[arg(long = "suite", value_name = "NAME")]
        suites: Vec<String>,
        /// Cells run concurrently.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Print the certificate of a battery entry.
    Describe {
        name: String,
        /// Config whose battery is searched; the shipped one by default.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// List the battery entries.
    List {
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

fn code(c: i32) -> ExitCode {
    ExitCode::from(c as u8)
}

fn config_error(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("{e}");
    code(EXIT_CONFIG)
}

fn battery_config(path: Option<PathBuf>) -> Result<conelab_lab::ValidatedConfig, ExitCode> {
    match path {
        Some(p) => load(&p).map_err(config_error),
        None => Ok(shipped()),
    }
}

fn run_command(
    config: PathBuf,
    out: Option<PathBuf>,
    suites: Vec<String>,
    jobs: usize,
) -> ExitCode {
    let mut raw = match ExperimentConfig::load(&config) {
        Ok(c) => c,
        Err(e) => return config_error(e),
    };
    if !suites.is_empty() {
        let mut chosen = Vec::new();
        for name in &suites {
            match Suite::parse(name) {
                Some(s) if raw.suites.contains(&s) => chosen.push(s),
                Some(s) => {
                    return config_error(format!(
                        "config error at `suites`: `{s}` is not in the config"
                    ))
                }
                None => {
                    return config_error(format!(
                        "config error at `--suite`: unknown suite `{name}`"
                    ))
                }
            }
        }
        raw.suites.retain(|s| chosen.contains(s));
    }
    let out_dir = out.unwrap_or_else(|| raw.output_dir.clone());
    let cfg = match conelab_lab::validate(raw) {
        Ok(c) => c,
        Err(e) => return config_error(e),
    };
    let report = match run(&cfg, jobs.max(1)) {
        Ok(r) => r,
        Err(LabError::Config(e)) => return config_error(e),
        Err(e) => {
            eprintln!("{e}");
            return code(EXIT_FAIL);
        }
    };
    let dir = match report.write(&out_dir) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("cannot write the report: {e}");
            return code(EXIT_FAIL);
        }
    };
    let summary = report.summary();
    for s in &summary.suites {
        println!(
            "{:<11} {:<13} pass {:>4}  fail {:>3}  inconclusive {:>3}",
            s.suite.name(),
            s.verdict.name(),
            s.counts.pass,
            s.counts.fail,
            s.counts.inconclusive
        );
    }
    println!("run {} -> {}", report.run_id, dir.display());
    code(report.exit_code())
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run {
            config,
            out,
            suites,
            jobs,
        } => run_command(config, out, suites, jobs),
        Command::Describe { name, config } => {
            let cfg = match battery_config(config) {
                Ok(c) => c,
                Err(c) => return c,
            };
            match describe(&cfg, &name) {
                Ok(text) => {
                    print!("{text}");
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("{e}");
                    code(EXIT_FAIL)
                }
            }
        }
        Command::List { config } => match battery_config(config) {
            Ok(cfg) => {
                print!("{}", list(&cfg));
                ExitCode::SUCCESS
            }
            Err(c) => c,
        },
    }
}
