//! Shared output plumbing: report sink, timestamps, and the one-line
//! machine summary every command emits on stderr.

use crate::Format;
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

pub struct Context {
    pub format: Format,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub timestamp: Option<u64>,
}

impl Context {
    /// Write the rendered report to the chosen sink.
    pub fn emit(&self, body: &str) -> std::io::Result<()> {
        match &self.out {
            Some(path) => {
                let mut file = std::fs::File::create(path)?;
                file.write_all(body.as_bytes())?;
                if !body.ends_with('\n') {
                    file.write_all(b"\n")?;
                }
            }
            None => {
                let stdout = std::io::stdout();
                let mut lock = stdout.lock();
                lock.write_all(body.as_bytes())?;
                if !body.ends_with('\n') {
                    lock.write_all(b"\n")?;
                }
            }
        }
        Ok(())
    }
}

pub fn unix_now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// The machine-readable summary line (stderr, one JSON object).
#[derive(Debug, Serialize)]
pub struct Summary {
    pub command: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Summary {
    pub fn pass(command: &str) -> Self {
        Summary {
            command: command.to_string(),
            pass: true,
            checks: None,
            violations: None,
            detail: None,
        }
    }

    pub fn with_counts(command: &str, checks: usize, violations: usize) -> Self {
        Summary {
            command: command.to_string(),
            pass: violations == 0,
            checks: Some(checks),
            violations: Some(violations),
            detail: None,
        }
    }

    pub fn failing(command: &str, detail: &str) -> Self {
        Summary {
            command: command.to_string(),
            pass: false,
            checks: None,
            violations: None,
            detail: Some(detail.to_string()),
        }
    }

    pub fn error(detail: &str) -> Self {
        Summary {
            command: "error".to_string(),
            pass: false,
            checks: None,
            violations: None,
            detail: Some(detail.to_string()),
        }
    }
}
