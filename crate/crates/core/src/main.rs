use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use xprod::io::{parse_system, SystemSpec};
use xprod::lab::{analyze, LabConfig, SCHEMA_VERSION};
use xprod::symbolic::{parse_word, ShiftSystem};
use xprod::Error;

#[derive(Parser)]
#[command(name = "xprod", version, about = "Crossed products of covering maps on subshifts of finite type")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide topological freeness and certify the consequences.
    Analyze {
        spec: PathBuf,
        #[command(flatten)]
        flags: Flags,
    },
    /// Residuals of the defining relations on truncated bases.
    Residuals {
        spec: PathBuf,
        #[command(flatten)]
        flags: Flags,
    },
    /// Build and certify the witness f s^k (s*)^l f for f = 1_[w].
    Witness {
        spec: PathBuf,
        k: usize,
        l: usize,
        w: String,
        #[command(flatten)]
        flags: Flags,
    },
}

#[derive(Args)]
struct Flags {
    /// Length of the cylinders used as test functions.
    #[arg(long, default_value_t = 3)]
    depth: usize,
    /// Preimage depth of the orbit bases.
    #[arg(long, default_value_t = 3)]
    orbit_depth: usize,
    /// Forward iterates of the seed point included in the bases.
    #[arg(long, default_value_t = 1)]
    forward_depth: usize,
    /// Level window |n| <= W of the l^2(X x Z) truncation.
    #[arg(long, default_value_t = 3)]
    window: usize,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    probe_trials: usize,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

impl Flags {
    fn config(&self) -> LabConfig {
        LabConfig {
            depth: self.depth,
            orbit_depth: self.orbit_depth,
            forward_depth: self.forward_depth,
            window: self.window,
            tol: self.tol,
            seed: self.seed,
            probe_trials: self.probe_trials,
            ..LabConfig::default()
        }
    }
}

fn load_system(path: &Path) -> anyhow::Result<Arc<ShiftSystem>> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let sys = parse_system(&text).with_context(|| format!("in system spec {}", path.display()))?;
    Ok(Arc::new(sys))
}

fn header(sys: &ShiftSystem, config: &LabConfig) -> serde_json::Map<String, Value> {
    let mut config_json = serde_json::to_value(config).expect("config serializes");
    config_json["system"] = serde_json::to_value(SystemSpec::from_system(sys)).expect("spec serializes");
    let mut m = serde_json::Map::new();
    m.insert("schema".into(), json!(SCHEMA_VERSION));
    m.insert("config".into(), config_json);
    m
}

fn run(command: &Command) -> anyhow::Result<(Value, Option<&Path>)> {
    match command {
        Command::Analyze { spec, flags } => {
            let sys = load_system(spec)?;
            let report = analyze(&sys, &flags.config())?;
            Ok((serde_json::to_value(report)?, flags.output.as_deref()))
        }
        Command::Residuals { spec, flags } => {
            let sys = load_system(spec)?;
            let config = flags.config();
            let residuals = config.residuals(&sys)?;
            let mut out = header(&sys, &config);
            out.insert("pass".into(), json!(residuals.iter().all(|r| r.pass)));
            out.insert("residuals".into(), serde_json::to_value(residuals)?);
            Ok((Value::Object(out), flags.output.as_deref()))
        }
        Command::Witness { spec, k, l, w, flags } => {
            let sys = load_system(spec)?;
            let config = flags.config();
            let word = parse_word(w, sys.alphabet_size())?;
            let report = config.witness(&sys, *k, *l, &word)?;
            let mut out = header(&sys, &config);
            out.insert("pass".into(), json!(report.pass));
            out.insert("witness".into(), serde_json::to_value(report)?);
            Ok((Value::Object(out), flags.output.as_deref()))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Input(_) | Error::InvalidSystem(_) | Error::Parse(_)) => 2,
        Some(Error::Ambiguous { .. }) => 3,
        Some(Error::Witness(_)) => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli.command).and_then(|(report, output)| {
        let mut text = serde_json::to_string_pretty(&report)?;
        text.push('\n');
        match output {
            Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?,
            None => print!("{text}"),
        }
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
