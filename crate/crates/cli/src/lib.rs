//! Front-end for the `taumackey` library: job specifications, reports,
//! batch manifests and the on-disk cache.

pub mod batch;
pub mod run;
pub mod spec;

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use batch::{run_batch, BatchOutcome, Manifest};
pub use run::{run_job, Outcome};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CROSS_CHECK: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    CharTable,
    Fs,
    SimplyReducible,
    Gelfand,
    CliffordBattery,
    ConditionStar,
    PowerSums,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::CharTable => "char-table",
            Command::Fs => "fs",
            Command::SimplyReducible => "simply-reducible",
            Command::Gelfand => "gelfand",
            Command::CliffordBattery => "clifford-battery",
            Command::ConditionStar => "condition-star",
            Command::PowerSums => "power-sums",
        }
    }
}

/// One unit of work. Group, τ, σ and subgroup are kept as raw JSON so the
/// report can echo them verbatim.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget_pairs: Option<usize>,
}

impl JobSpec {
    pub fn new(command: Command) -> Self {
        JobSpec {
            command,
            group: None,
            tau: None,
            subgroup: None,
            sigma: None,
            n: None,
            seed: None,
            budget_pairs: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn cross_check(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_CROSS_CHECK,
            message: message.into(),
        }
    }

    pub fn from_core(e: taumackey::Error, context: &str) -> Self {
        let code = if e.is_cross_check() { EXIT_CROSS_CHECK } else { EXIT_USAGE };
        CliError {
            code,
            message: format!("{context}: {e}"),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

/// `key: value` lines for every leaf of a JSON document.
pub fn render_text(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(m) if !m.is_empty() => {
                for (k, x) in m {
                    let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&p, x, out);
                }
            }
            Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
                for (i, x) in a.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), x, out);
                }
            }
            Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
            other => out.push_str(&format!("{prefix}: {other}\n")),
        }
    }
    let mut out = String::new();
    walk("", v, &mut out);
    out
}
