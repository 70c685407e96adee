//! `sumset-lab`: deterministic experiment runner.
//!
//! Exit codes: 0 success, 1 a check failed, 2 invalid configuration,
//! 3 any other error from the library.

mod commands;
mod parse;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use commands::Command;
use parse::{config_err, CliError, CliResult};

#[derive(Parser, Debug)]
#[command(name = "sumset-lab", version, about = "Exact verifiers for polynomial sumset experiments")]
struct Cli {
    #[command(subcommand)]
    top: Top,
    /// Seed for generic elements and random instances; falls back to SUMSET_SEED, then 0.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Top {
    /// Run a subcommand described by a JSON config file.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
    #[command(flatten)]
    Cmd(Command),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

/// `{"subcommand": "weyl", "params": {"N": "3..6", "demo": true}, "seed": 1, "format": "csv"}`
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExperimentConfig {
    subcommand: String,
    #[serde(default)]
    params: Map<String, Value>,
    seed: Option<u64>,
    format: Option<Format>,
    out: Option<PathBuf>,
}

fn config_to_args(cfg: &ExperimentConfig) -> CliResult<Vec<String>> {
    if cfg.subcommand == "run" {
        return Err(config_err("a config cannot run another config"));
    }
    let mut args = vec!["sumset-lab".to_string(), cfg.subcommand.clone()];
    for (key, v) in &cfg.params {
        let flag = format!("--{key}");
        match v {
            Value::Bool(true) => args.push(flag),
            Value::Bool(false) | Value::Null => {}
            Value::String(s) => args.extend([flag, s.clone()]),
            Value::Number(n) => args.extend([flag, n.to_string()]),
            Value::Array(items) => {
                let parts = items
                    .iter()
                    .map(|x| match x {
                        Value::String(s) => Ok(s.clone()),
                        Value::Number(n) => Ok(n.to_string()),
                        _ => Err(config_err(format!("parameter {key}: lists hold strings or numbers"))),
                    })
                    .collect::<CliResult<Vec<_>>>()?;
                args.extend([flag, parts.join(",")]);
            }
            Value::Object(_) => args.extend([flag, v.to_string()]),
        }
    }
    if let Some(s) = cfg.seed {
        args.extend(["--seed".into(), s.to_string()]);
    }
    if let Some(f) = cfg.format {
        args.extend(["--format".into(), if f == Format::Csv { "csv" } else { "json" }.into()]);
    }
    if let Some(o) = &cfg.out {
        args.extend(["--out".into(), o.display().to_string()]);
    }
    Ok(args)
}

fn parse_args(args: Vec<String>) -> Result<Cli, ExitCode> {
    match Cli::try_parse_from(args) {
        Ok(cli) => Ok(cli),
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return Err(ExitCode::SUCCESS);
            }
            Err(emit_error(&CliError::Config(e.render().to_string().trim_end().to_string())))
        }
    }
}

fn emit_error(e: &CliError) -> ExitCode {
    let (kind, code) = match e {
        CliError::Config(_) => ("ConfigInvalid", 2),
        CliError::Module(_) => ("ModuleError", 3),
    };
    let doc = json!({ "error": { "kind": kind, "message": e.to_string() } });
    println!("{}", serde_json::to_string_pretty(&doc).expect("error serializes"));
    ExitCode::from(code)
}

fn resolve_seed(flag: Option<u64>) -> CliResult<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("SUMSET_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| config_err(format!("SUMSET_SEED={s:?} is not an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

fn execute(cli: Cli) -> CliResult<bool> {
    let Top::Cmd(cmd) = cli.top else { unreachable!("run is expanded before execution") };
    let seed = resolve_seed(cli.seed)?;
    let format = cli.format.unwrap_or(if cmd.prefers_csv() { Format::Csv } else { Format::Json });
    let outcome = cmd.execute(seed)?;
    let config = json!({
        "subcommand": cmd.name(),
        "params": cmd.params(),
        "seed": seed,
        "format": format,
    });
    let text = match format {
        Format::Json => outcome.render_json(&config),
        Format::Csv => outcome
            .table
            .as_ref()
            .ok_or_else(|| config_err(format!("{} has no CSV form", cmd.name())))?
            .to_csv()
            .map_err(|e| config_err(format!("csv: {e}")))?,
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| config_err(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(!outcome.failed())
}

fn main() -> ExitCode {
    let cli = match parse_args(std::env::args().collect()) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let cli = match &cli.top {
        Top::Run { config } => {
            let loaded = std::fs::read_to_string(config)
                .map_err(|e| config_err(format!("cannot read config {}: {e}", config.display())))
                .and_then(|t| serde_json::from_str::<ExperimentConfig>(&t).map_err(|e| config_err(format!("bad config: {e}"))))
                .and_then(|c| config_to_args(&c));
            let mut args = match loaded {
                Ok(a) => a,
                Err(e) => return emit_error(&e),
            };
            // flags given next to `run` override the file
            if let Some(s) = cli.seed {
                args.extend(["--seed".into(), s.to_string()]);
            }
            if let Some(f) = cli.format {
                args.extend(["--format".into(), if f == Format::Csv { "csv" } else { "json" }.into()]);
            }
            if let Some(o) = &cli.out {
                args.extend(["--out".into(), o.display().to_string()]);
            }
            match parse_args(args) {
                Ok(c) if matches!(c.top, Top::Run { .. }) => return emit_error(&config_err("nested run")),
                Ok(c) => c,
                Err(code) => return code,
            }
        }
        Top::Cmd(_) => cli,
    };
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => emit_error(&e),
    }
}
