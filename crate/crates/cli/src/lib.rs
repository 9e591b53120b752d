//! Command-line surface for `rigidity-core`.
//!
//! Every command produces a [`CommandResult`], printed as JSON by default or
//! as a short text summary with `--text`. Exit codes: 0 ok, 2 usage or
//! validation, 3 capacity, 4 arithmetic overflow.

mod commands;

use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rigidity_core::Error;
use serde::Serialize;
use serde_json::Value;

pub use commands::execute;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;
pub const EXIT_OVERFLOW: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "rigidity", version, about = "Ring multiplications compatible with a fixed abelian addition")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Emit JSON (default)
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,

    /// Emit a human-readable summary instead of JSON
    #[arg(long, global = true)]
    pub text: bool,

    /// Include elapsed wall time in the output
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    /// Worker threads for the exhaustive search
    #[arg(long, default_value_t = 1)]
    pub workers: usize,

    /// Largest number of candidate multiplications to examine
    #[arg(long, env = "RIGIDITY_BUDGET", default_value_t = rigidity_core::enumeration::DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate every ring multiplication on a finite abelian group
    Enumerate {
        /// Comma-separated moduli, e.g. "6" or "2,2"
        #[arg(long)]
        group: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Check the scaled multiplication a.n.m on a window of the integers
    VerifyScaled {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        /// Window is -bound..=bound
        #[arg(long)]
        bound: i64,
        /// Random triples for the ring-identity suite
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
    },
    /// Classify every multiplication on Z/N by its scale 1 o 1
    Classify {
        #[arg(long)]
        modulus: u64,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Standard and entrywise products on n x n matrices over Z/m
    MatrixDemo {
        #[arg(long)]
        n: usize,
        #[arg(long = "mod")]
        modulus: u64,
        /// Random triples per axiom check
        #[arg(long, default_value_t = 1_000)]
        samples: u64,
    },
    /// Unitality of the scaled rings a.x.y over Z/N
    #[command(name = "lemma23")]
    Units {
        #[arg(long)]
        modulus: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Rejected,
    Error,
}

#[derive(Debug, Clone, Serialize)]
pub struct CommandResult {
    pub command: String,
    pub parameters: Value,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub payload: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    #[serde(skip)]
    pub text: Vec<String>,
    #[serde(skip)]
    exit_code: i32,
}

impl CommandResult {
    pub(crate) fn finish(command: &str, parameters: Value, outcome: rigidity_core::Result<Success>) -> Self {
        let mut result = CommandResult {
            command: command.to_string(),
            parameters,
            status: Status::Ok,
            payload: None,
            message: None,
            elapsed_ms: None,
            text: Vec::new(),
            exit_code: EXIT_OK,
        };
        match outcome {
            Ok(success) => {
                result.payload = Some(success.payload);
                result.text = success.text;
            }
            Err(err) => {
                result.exit_code = exit_code_for(&err);
                result.status = if result.exit_code == EXIT_USAGE {
                    Status::Rejected
                } else {
                    Status::Error
                };
                result.message = Some(err.to_string());
            }
        }
        result
    }

    pub fn exit_code(&self) -> i32 {
        self.exit_code
    }
}

/// What a command handler returns on success.
pub(crate) struct Success {
    pub payload: Value,
    pub text: Vec<String>,
}

pub(crate) fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Usage(_) | Error::Precondition(_) => EXIT_USAGE,
        Error::Capacity { .. } => EXIT_CAPACITY,
        Error::Overflow(_) => EXIT_OVERFLOW,
        Error::Invariant(_) => EXIT_FAILURE,
    }
}

/// Runs the command and renders it for printing.
pub fn run(cli: &Cli) -> (CommandResult, String) {
    let started = Instant::now();
    let mut result = execute(&cli.command);
    if cli.output.timing {
        result.elapsed_ms = Some(started.elapsed().as_millis() as u64);
    }
    let rendered = if cli.output.text {
        render_text(&result)
    } else {
        let value = serde_json::to_value(&result).expect("results serialize");
        let mut s = String::new();
        write_json(&value, 0, &mut s);
        s.push('\n');
        s
    };
    (result, rendered)
}

fn render_text(result: &CommandResult) -> String {
    let mut out = format!("{} [{}]\n", result.command, status_word(result.status));
    if let Some(msg) = &result.message {
        out.push_str(msg);
        out.push('\n');
    }
    for line in &result.text {
        out.push_str(line);
        out.push('\n');
    }
    if let Some(ms) = result.elapsed_ms {
        out.push_str(&format!("elapsed: {ms} ms\n"));
    }
    out
}

fn status_word(status: Status) -> &'static str {
    match status {
        Status::Ok => "ok",
        Status::Rejected => "rejected",
        Status::Error => "error",
    }
}

/// Pretty JSON with two-space indentation, except that arrays holding only
/// scalars stay on one line (`[1, 0]`).
pub fn write_json(value: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match value {
        Value::Array(items) if items.iter().all(|v| !v.is_array() && !v.is_object()) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, v) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_json(v, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, v)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_json(v, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}
