//! The `cqed` command line: `cqed <command> --config <path> [--output <path>]
//! [--format csv|json] [--seed <int>]`.
//!
//! A config is one JSON object holding the command's parameters plus the
//! optional run keys `seed`, `format`, and `output`. Flags override the
//! run keys. Output goes to stdout unless a path is given, in which case it
//! is written atomically.
//!
//! Exit codes: 0 on success, 2 on invalid input (the message names the
//! field), 1 on any other failure.

pub mod commands;
pub mod config;
pub mod table;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::error::{Error, Result};
pub use commands::RunContext;
pub use table::{Cell, Format, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Dressed-state ladder of the lossless system.
    Ladder,
    /// Lossless and lossy branches versus emitter detuning.
    Anticross,
    /// Empty-cavity and coupled transmission spectra.
    Spectrum,
    /// Purcell factor and β versus emitter detuning.
    Purcell,
    /// Light-light curve of the rate-equation laser.
    Laser,
    /// Quantum-dot levels, transition lines, or the Coulomb shift.
    Qd,
    /// Analytic g²(0) of photon-number distributions.
    G2,
    /// Simulated Hanbury Brown–Twiss records or g²(0) estimates.
    Hbt,
    /// Mode volume and emitter coupling of a sampled field.
    Modevolume,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Ladder => "ladder",
            Command::Anticross => "anticross",
            Command::Spectrum => "spectrum",
            Command::Purcell => "purcell",
            Command::Laser => "laser",
            Command::Qd => "qd",
            Command::G2 => "g2",
            Command::Hbt => "hbt",
            Command::Modevolume => "modevolume",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "cqed", version, about = "Cavity QED calculations from JSON configs")]
pub struct Cli {
    pub command: Command,
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub seed: Option<u64>,
}

/// Result of one run, before it is written anywhere.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub command: Command,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub config_echo: Value,
    pub table: Table,
    pub warnings: Vec<String>,
}

impl RunOutput {
    pub fn render(&self) -> Result<Vec<u8>> {
        table::render(self.format, self.command.name(), &self.config_echo, &self.table)
    }
}

fn parse<T: DeserializeOwned>(value: Value) -> Result<T> {
    Ok(serde_json::from_value(value)?)
}

/// Runs `command` on an already-parsed config object.
pub fn execute(command: Command, params: Value, ctx: &mut RunContext) -> Result<Table> {
    match command {
        Command::Ladder => commands::cmd_ladder(&parse(params)?),
        Command::Anticross => commands::cmd_anticross(&parse(params)?),
        Command::Spectrum => commands::cmd_spectrum(&parse(params)?),
        Command::Purcell => commands::cmd_purcell(&parse(params)?),
        Command::Laser => commands::cmd_laser(&parse(params)?),
        Command::Qd => commands::cmd_qd(&parse(params)?, ctx),
        Command::G2 => commands::cmd_g2(&parse(params)?),
        Command::Hbt => commands::cmd_hbt(&parse(params)?, ctx),
        Command::Modevolume => commands::cmd_modevolume(&parse(params)?, ctx),
    }
}

const RUN_KEYS: [&str; 4] = ["seed", "format", "output", "command"];

/// Loads the config, applies flag overrides, and computes the table.
pub fn run(cli: &Cli) -> Result<RunOutput> {
    let text = std::fs::read_to_string(&cli.config)
        .map_err(|e| Error::invalid("config", format!("cannot read {}: {e}", cli.config.display())))?;
    let mut doc: Value = serde_json::from_str(&text)?;
    let obj = doc.as_object_mut().ok_or_else(|| Error::invalid("config", "top level must be a JSON object"))?;

    if let Some(name) = obj.get("command") {
        let name = name.as_str().ok_or_else(|| Error::invalid("command", "must be a string"))?;
        if name != cli.command.name() {
            return Err(Error::invalid(
                "command",
                format!("config is for `{name}` but `{}` was requested", cli.command.name()),
            ));
        }
    }
    let seed = match (cli.seed, obj.get("seed")) {
        (Some(s), _) => s,
        (None, Some(v)) => v.as_u64().ok_or_else(|| Error::invalid("seed", "must be a non-negative integer"))?,
        (None, None) => 0,
    };
    let format = match (cli.format, obj.get("format")) {
        (Some(f), _) => f,
        (None, Some(v)) => {
            serde_json::from_value(v.clone()).map_err(|_| Error::invalid("format", "must be csv or json"))?
        }
        (None, None) => Format::Csv,
    };
    let output = match (&cli.output, obj.get("output")) {
        (Some(p), _) => Some(p.clone()),
        (None, Some(v)) => {
            Some(PathBuf::from(v.as_str().ok_or_else(|| Error::invalid("output", "must be a path string"))?))
        }
        (None, None) => None,
    };

    let mut params = obj.clone();
    for k in RUN_KEYS {
        params.remove(k);
    }
    let base_dir = cli.config.parent().map(Path::to_path_buf).unwrap_or_default();
    let mut ctx = RunContext::new(seed, base_dir);
    let table = execute(cli.command, Value::Object(params), &mut ctx)?;

    let mut echo = obj.clone();
    echo.insert("command".into(), Value::from(cli.command.name()));
    echo.insert("seed".into(), Value::from(seed));
    echo.insert("format".into(), serde_json::to_value(format)?);
    echo.remove("output");
    Ok(RunOutput {
        command: cli.command,
        format,
        output,
        config_echo: Value::Object(echo),
        table,
        warnings: ctx.warnings,
    })
}

/// Runs and writes the output; maps failures to exit codes.
pub fn main_with(cli: &Cli) -> ExitCode {
    let result = run(cli).and_then(|out| {
        for w in &out.warnings {
            eprintln!("warning: {w}");
        }
        let bytes = out.render()?;
        match &out.output {
            Some(path) => table::write_atomically(path, &bytes),
            None => {
                use std::io::Write;
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(&bytes)?;
                stdout.flush()?;
                Ok(())
            }
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        // reader went away, e.g. `cqed ... | head`
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_validation() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
