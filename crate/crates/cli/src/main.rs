//! `arens`: JSON in, deterministic reports out.
//!
//! Exit codes: 0 success (or a Regular verdict), 3 NotRegular,
//! 4 Inconclusive, 1 usage error, 2 invalid input.

mod args;
mod commands;
mod input;
mod render;

use std::fs;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Value};

use args::{Cli, Format};

pub const SCHEMA_VERSION: u64 = 1;

pub struct Outcome {
    pub exit: u8,
    pub report: Value,
}

impl Outcome {
    pub fn ok(report: Value) -> Self {
        Outcome { exit: 0, report }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub exit: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            exit: 1,
            message: message.into(),
        }
    }

    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            exit: 2,
            message: message.into(),
        }
    }
}

fn envelope(verb: &str, body: Value) -> Value {
    let mut out = json!({"schema_version": SCHEMA_VERSION, "command": verb});
    if let Value::Object(fields) = body {
        out.as_object_mut().expect("object").extend(fields);
    }
    out
}

fn emit(cli: &Cli, report: &Value) -> Result<(), Failure> {
    let text = match cli.format {
        Format::Json => render::json(report),
        Format::Text => {
            let stamp =
                (!cli.no_timestamp).then(|| chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
            render::text(report, stamp)
        }
    };
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let verb = cli.command.verb();
    let result = commands::run(&cli.command).and_then(|outcome| {
        emit(&cli, &envelope(verb, outcome.report))?;
        Ok(outcome.exit)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("arens {verb}: {}", f.message);
            if f.exit == 2 {
                let _ = emit(&cli, &envelope(verb, json!({"error": f.message})));
            }
            ExitCode::from(f.exit)
        }
    }
}
