use std::path::Path;

use anyhow::Context;
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub wall_ms: f64,
}

/// Envelope shared by every subcommand. `timing` stays null unless asked
/// for, so equal inputs and seed give byte-identical reports.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub parameters: Value,
    pub outputs: Value,
    pub timing: Option<Timing>,
    pub seed: u64,
}

impl RunReport {
    pub fn new(command: &str, seed: u64, parameters: Value, outputs: Value) -> Self {
        RunReport {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            parameters,
            outputs,
            timing: None,
            seed,
        }
    }

    pub fn to_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub struct Outcome {
    pub report: RunReport,
    /// Printed instead of the JSON report when set.
    pub raw: Option<String>,
    pub exit: u8,
}

impl Outcome {
    pub fn ok(report: RunReport) -> Self {
        Outcome {
            report,
            raw: None,
            exit: 0,
        }
    }

    /// Exit 1: the input was rejected or the decision is indeterminate.
    pub fn rejected(report: RunReport) -> Self {
        Outcome {
            report,
            raw: None,
            exit: 1,
        }
    }
}

/// Errors mapped to exit codes: domain errors 1, I/O and guards 2.
#[derive(Debug)]
pub enum Failure {
    Domain(lhqpf::Error),
    Guard(lhqpf::Error),
    Io(anyhow::Error),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Guard(_) | Failure::Io(_) => 2,
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Domain(e) | Failure::Guard(e) => e.to_string(),
            Failure::Io(e) => format!("{e:#}"),
        }
    }
}

impl From<lhqpf::Error> for Failure {
    fn from(e: lhqpf::Error) -> Self {
        if e.is_guard() {
            Failure::Guard(e)
        } else {
            Failure::Domain(e)
        }
    }
}

pub fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::Io)
}

pub fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
