//! Command-line front end: parameter resolution, scenario dispatch and
//! output writing.

pub mod config;
pub mod output;
pub mod scenarios;

use std::path::PathBuf;
use std::time::Instant;

use anyhow::{anyhow, Result};
use clap::{Parser, Subcommand};

use config::{ConfigError, Params, Value};
use output::Format;
use scenarios::{figure, scenario, FIGURES, SCENARIOS};

#[derive(Debug, Parser)]
#[command(name = "whichway", version, about = "Which-way entanglement, interference visibility and double-well tunneling")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Flat TOML file of scenario parameters.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Output directory (default `output`).
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[arg(long, global = true, value_name = "N")]
    pub grid_points: Option<usize>,

    /// Reserved; every scenario is deterministic.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Parameter override, repeatable; wins over the config file.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    Slits,
    Entangled,
    Schmidt,
    Coherence,
    Ammonia,
    Qubits,
    Tomography,
    /// Reproduce a catalogued figure.
    Figures { name: String },
    /// Show scenarios and the figure catalog.
    List,
}

pub fn catalog() -> String {
    let mut s = String::from("scenarios:\n");
    for sc in SCENARIOS {
        s.push_str(&format!("  {:<12} {}\n", sc.name, sc.about));
    }
    s.push_str("figures:\n");
    for f in FIGURES {
        s.push_str(&format!("  {:<16} {:<22} {}\n", f.name, f.anchor, f.about));
    }
    s
}

fn resolve_params(cli: &Cli) -> Result<Params, ConfigError> {
    let mut params = match &cli.config {
        Some(path) => Params::load(path)?,
        None => Params::default(),
    };
    params.apply_overrides(&cli.overrides)?;
    if let Some(n) = cli.grid_points {
        params.set("grid_points", Value::Num(n as f64));
    }
    Ok(params)
}

fn take_format(params: &mut Params, cli: &Cli) -> Result<Format, ConfigError> {
    let from_file = match params.take("format") {
        None => None,
        Some(Value::Text(t)) if t == "csv" => Some(Format::Csv),
        Some(Value::Text(t)) if t == "json" => Some(Format::Json),
        Some(other) => {
            return Err(ConfigError::Field { key: "format".into(), reason: format!("expected csv or json, got {other:?}") })
        }
    };
    Ok(cli.format.or(from_file).unwrap_or(Format::Csv))
}

fn take_out(params: &mut Params, cli: &Cli) -> Result<PathBuf, ConfigError> {
    let from_file = match params.take("out") {
        None => None,
        Some(Value::Text(t)) => Some(PathBuf::from(t)),
        Some(other) => {
            return Err(ConfigError::Field { key: "out".into(), reason: format!("expected a path, got {other:?}") })
        }
    };
    Ok(cli.out.clone().or(from_file).unwrap_or_else(|| PathBuf::from("output")))
}

/// Run the parsed command, printing a short summary to stdout.
pub fn run(cli: Cli) -> Result<()> {
    let (name, anchor, preset) = match &cli.command {
        Command::List => {
            print!("{}", catalog());
            return Ok(());
        }
        Command::Figures { name } => {
            let f = figure(name).ok_or_else(|| anyhow!("unknown figure `{name}`; run `whichway list`"))?;
            (f.scenario, Some(f.anchor), f.preset)
        }
        Command::Slits => ("slits", None, &[][..]),
        Command::Entangled => ("entangled", None, &[][..]),
        Command::Schmidt => ("schmidt", None, &[][..]),
        Command::Coherence => ("coherence", None, &[][..]),
        Command::Ammonia => ("ammonia", None, &[][..]),
        Command::Qubits => ("qubits", None, &[][..]),
        Command::Tomography => ("tomography", None, &[][..]),
    };
    let sc = scenario(name).ok_or_else(|| anyhow!("no scenario `{name}`"))?;

    let mut params = resolve_params(&cli)?;
    let format = take_format(&mut params, &cli)?;
    let out_dir = take_out(&mut params, &cli)?;
    for (k, v) in preset {
        params.set_default(k, Value::parse(v));
    }

    let start = Instant::now();
    let outcome = (sc.run)(&mut params)?;
    params.finish(sc.name)?;
    let label = match &cli.command {
        Command::Figures { name } => name.as_str(),
        _ => sc.name,
    };
    let report = outcome.report(label, anchor, params.echo(), format);
    let paths = outcome.write(&out_dir, &report, format)?;
    println!("{label}: wrote {} files to {} in {:.3} s", paths.len(), out_dir.display(), start.elapsed().as_secs_f64());
    for (k, v) in report["scalars"].as_object().into_iter().flatten() {
        println!("  {k} = {v}");
    }
    Ok(())
}
