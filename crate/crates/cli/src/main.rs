mod commands;
mod config;
mod input;
mod output;

use std::io::Write;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use crate::commands::*;
use crate::config::{Config, Format};

/// Partition functions of graph lifts.
#[derive(Parser, Debug)]
#[command(name = "twolift", version, about)]
struct Cli {
    /// `key = value` configuration file; flags override it.
    #[arg(long, global = true)]
    config: Option<String>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads for parallel scans.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest colouring sum to attempt, in table entries.
    #[arg(long, global = true)]
    cap_assignments: Option<u128>,
    /// Largest deletion–contraction expansion count.
    #[arg(long, global = true)]
    cap_expansions: Option<u64>,
    /// Largest number of signings to enumerate.
    #[arg(long, global = true)]
    cap_signings: Option<u64>,
    /// Belief-propagation tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact partition function, random-cluster value or homomorphism count.
    Z(ZArgs),
    /// Independent set and matching counts by size.
    Counts(CountsArgs),
    /// Build, enumerate or search 2-lifts and k-lifts.
    Lift(LiftArgs),
    /// Repeated 2-lifts that raise the girth.
    GirthBoost(GirthBoostArgs),
    /// Decide which lift is extremal for a model.
    Classify(ClassifyArgs),
    /// Belief-propagation fixed points and Bethe values on regular trees.
    Bethe(BetheArgs),
    /// Run the verification suites.
    Verify(VerifyArgs),
}

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_PARSE: u8 = 4;
const EXIT_CAP: u8 = 5;
const EXIT_INPUT: u8 = 6;
const EXIT_CONVERGENCE: u8 = 7;

fn core_code(e: &twolift_core::Error) -> u8 {
    use twolift_core::Error::*;
    match e {
        Parse { .. } | Json(_) => EXIT_PARSE,
        CapExceeded { .. } => EXIT_CAP,
        NoConvergence { .. } => EXIT_CONVERGENCE,
        LiftFailed { source, .. } => core_code(source),
        _ => EXIT_INPUT,
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<twolift_core::Error>() {
            return core_code(e);
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return EXIT_IO;
        }
        if cause.downcast_ref::<serde_json::Error>().is_some() {
            return EXIT_PARSE;
        }
    }
    EXIT_INPUT
}

fn config(cli: &Cli) -> Result<Config> {
    let mut cfg = Config::default();
    if let Some(path) = &cli.config {
        cfg = cfg.merge_file(&input::read(path)?)?;
    }
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    if let Some(t) = cli.threads {
        cfg.threads = Some(t);
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(c) = cli.cap_assignments {
        cfg.caps.assignments = c;
    }
    if let Some(c) = cli.cap_expansions {
        cfg.caps.expansions = c;
    }
    if let Some(c) = cli.cap_signings {
        cfg.caps.signings = c;
    }
    if let Some(t) = cli.tol {
        cfg.tol = t;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<u8> {
    let cfg = config(cli)?;
    if let Some(t) = cfg.threads {
        // fails only if a pool already exists, which is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let (out, ok) = match &cli.command {
        Command::Z(a) => (z(a, &cfg)?, true),
        Command::Counts(a) => (counts(a, &cfg)?, true),
        Command::Lift(a) => (lift(a, &cfg)?, true),
        Command::GirthBoost(a) => (boost(a, &cfg)?, true),
        Command::Classify(a) => (classify_cmd(a, &cfg)?, true),
        Command::Bethe(a) => (bethe(a, &cfg)?, true),
        Command::Verify(a) => verify(a, &cfg)?,
    };
    let text = out.render(cfg.format)?;
    std::io::stdout().lock().write_all(text.as_bytes())?;
    Ok(if ok { 0 } else { EXIT_FAILED })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
