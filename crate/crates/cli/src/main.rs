use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use fogsim_cli::{cases, check, load, Failure};
use fogsim_engine::{random_scenario, run, RandomScenarioBounds};
use fogsim_scenario_io::{export_metrics, ExportFormat};

/// Fog-layer request handling simulator: load-balanced serving with per-user
/// quotas and attacker quarantine on sleeping attack fogs.
#[derive(Parser)]
#[command(name = "fogsim", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and export per-second metrics.
    Run {
        /// Scenario file path, or a built-in name (case-a, case-b, case-c,
        /// case-d, case-2, eval-fig12).
        scenario: String,
        /// Output shape: rows | events.
        #[arg(long, default_value = "rows")]
        format: String,
        /// Write metrics to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the seed used by [workload] documents.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Parse and validate a scenario without running it.
    Validate { scenario: String },
    /// Replay a built-in case and compare its serving traces cell by cell
    /// against the expected values embedded in the binary.
    Case { name: String },
    /// Run the engine and the stand-alone reference simulator on the same
    /// scenario(s) and compare every observable.
    OracleCheck {
        /// Scenario file path or built-in name.
        scenario: Option<String>,
        /// Check this many generated random scenarios instead.
        #[arg(long)]
        random: Option<u64>,
        /// Base seed for --random: scenario i uses seed base+i.
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) =>
        {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("fogsim: {}", failure.message());
            ExitCode::from(failure.exit_code())
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Run {
            scenario,
            format,
            out,
            seed,
        } => cmd_run(&scenario, &format, out, seed),
        Command::Validate { scenario } => cmd_validate(&scenario),
        Command::Case { name } => cmd_case(&name),
        Command::OracleCheck {
            scenario,
            random,
            seed,
        } => cmd_oracle_check(scenario.as_deref(), random, seed),
    }
}

fn cmd_run(
    scenario_arg: &str,
    format: &str,
    out: Option<PathBuf>,
    seed: Option<u64>,
) -> Result<(), Failure> {
    let format = ExportFormat::from_str(format).map_err(Failure::Invalid)?;
    let scenario = load::load_scenario(scenario_arg, seed)?;
    let metrics = run(&scenario).map_err(|e| Failure::Contract(e.to_string()))?;
    let text = export_metrics(&metrics, format);
    match out {
        Some(path) => fs::write(&path, text)
            .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    let fog_total: u64 = metrics.iter().map(|m| m.fog_served_total()).sum();
    let cloud_total: u64 = metrics.iter().map(|m| m.cloud_served).sum();
    let blacklist = metrics.last().map_or(0, |m| m.blacklist_size);
    eprintln!(
        "simulated {} seconds: fog_served={fog_total} cloud_served={cloud_total} blacklist={blacklist}",
        metrics.len(),
    );
    Ok(())
}

fn cmd_validate(scenario_arg: &str) -> Result<(), Failure> {
    let scenario = load::load_scenario(scenario_arg, None)?;
    println!(
        "valid: {} users, {} fogs, {} scheduled seconds",
        scenario.params.users.len(),
        scenario.params.fogs.len(),
        scenario.schedule.len(),
    );
    Ok(())
}

fn cmd_case(name: &str) -> Result<(), Failure> {
    let mut out = String::new();
    let matched = cases::replay_case(name, &mut out)?;
    print!("{out}");
    if matched {
        Ok(())
    } else {
        Err(Failure::Contract(format!(
            "case '{name}' does not reproduce its expected table"
        )))
    }
}

fn cmd_oracle_check(
    scenario_arg: Option<&str>,
    random: Option<u64>,
    seed: Option<u64>,
) -> Result<(), Failure> {
    let scenarios = match (scenario_arg, random) {
        (Some(_), Some(_)) => {
            return Err(Failure::Invalid(
                "give either a scenario or --random, not both".into(),
            ))
        }
        (None, None) => {
            return Err(Failure::Invalid(
                "give a scenario path/name or --random <n>".into(),
            ))
        }
        (Some(arg), None) => vec![(arg.to_string(), load::load_scenario(arg, None)?)],
        (None, Some(n)) => {
            let base = seed.unwrap_or(0);
            let bounds = RandomScenarioBounds::default();
            (0..n)
                .map(|i| {
                    let s = base.wrapping_add(i);
                    (format!("random(seed={s})"), random_scenario(&bounds, s))
                })
                .collect()
        }
    };
    let total = scenarios.len();
    for (label, scenario) in scenarios {
        if let Some(divergence) = check::check_scenario(&scenario)? {
            return Err(Failure::Contract(format!("{label}: {divergence}")));
        }
    }
    println!("oracle-check: {total} scenario(s) matched");
    Ok(())
}
