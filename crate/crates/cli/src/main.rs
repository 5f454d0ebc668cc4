use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use zbw_lab::config::{parse_config, Scenario};
use zbw_lab::error::{CliError, Result};
use zbw_lab::output::{to_json, write_file};
use zbw_lab::scenario::{write_scenario, Frame};
use zbw_lab::verify::{run_verify, Status};

#[derive(Parser)]
#[command(
    name = "zbwlab",
    version,
    about = "Zitterbewegung laboratory: scenarios and verification suite"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct RunArgs {
    /// Flat `key = value` configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Output directory for `<scenario>.csv` and `<scenario>.json`.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Output unit frame: SI or natural.
    #[arg(long, default_value = "natural")]
    frame: Frame,
    /// Overrides the `seed` key.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Free-packet ZBW trajectory at fixed azimuth.
    #[command(name = "zbw-traj")]
    ZbwTraj(RunArgs),
    /// Commutative ZBW magnetic moment time series.
    Moment(RunArgs),
    /// Moment with the space-noncommutative correction.
    #[command(name = "nc-moment")]
    NcMoment(RunArgs),
    /// Landau level table.
    Landau(RunArgs),
    /// Graphene packet trajectory in the η-induced field.
    #[command(name = "graphene-traj")]
    GrapheneTraj(RunArgs),
    /// Runs the closed-form-vs-oracle suite.
    Verify {
        /// Restrict to one module (default: all).
        #[arg(long)]
        module: Option<String>,
        /// Writes the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Optional configuration; only `seed` affects verification.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn read_config(path: &PathBuf, scenario: Scenario) -> Result<zbw_lab::ScenarioConfig> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.clone(),
        source,
    })?;
    parse_config(&text, scenario)
}

fn run(cli: Cli) -> Result<()> {
    let (scenario, args) = match cli.command {
        Command::ZbwTraj(a) => (Scenario::ZbwTraj, a),
        Command::Moment(a) => (Scenario::Moment, a),
        Command::NcMoment(a) => (Scenario::NcMoment, a),
        Command::Landau(a) => (Scenario::Landau, a),
        Command::GrapheneTraj(a) => (Scenario::GrapheneTraj, a),
        Command::Verify {
            module,
            json,
            config,
            seed,
        } => {
            let cfg = match &config {
                Some(p) => read_config(p, Scenario::Verify)?,
                None => parse_config("", Scenario::Verify)?,
            };
            let report = run_verify(module.as_deref(), seed.unwrap_or(cfg.seed))?;
            for c in &report.checks {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Info => "INFO",
                };
                println!(
                    "{tag} {}/{}: deviation {:e} (tolerance {:e})",
                    c.module, c.name, c.deviation, c.tolerance
                );
                if let Some(note) = &c.note {
                    println!("     {note}");
                }
            }
            if let Some(path) = json {
                write_file(&path, &to_json(&report))?;
            }
            return if report.passed() {
                Ok(())
            } else {
                Err(CliError::ChecksFailed(report.failures))
            };
        }
    };
    let mut cfg = read_config(&args.config, scenario)?;
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    let (csv, json) = write_scenario(&cfg, args.frame, &args.out)?;
    println!("wrote {} and {}", csv.display(), json.display());
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("zbwlab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
