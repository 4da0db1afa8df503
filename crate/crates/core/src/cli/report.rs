use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Serialize, Serializer};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Status::Pass => s.serialize_str("pass"),
            Status::Fail => s.serialize_str("fail"),
            Status::Skipped(reason) => s.collect_str(&format_args!("skipped({reason})")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: serde_json::Value,
}

impl Check {
    pub fn new(name: &str, pass: bool, details: serde_json::Value) -> Check {
        Check { name: name.into(), status: if pass { Status::Pass } else { Status::Fail }, details }
    }

    pub fn skipped(name: &str, reason: &str) -> Check {
        Check { name: name.into(), status: Status::Skipped(reason.into()), details: serde_json::Value::Null }
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

/// SHA-256 of the given bytes, hex encoded.
pub fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub config_digest: String,
    pub checks: Vec<Check>,
    /// Milliseconds per check, plus `total`.
    pub timings: BTreeMap<String, f64>,
    pub seed: u64,
}

impl Report {
    pub fn passed(&self) -> bool {
        !self.checks.iter().any(Check::failed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} (seed {}, config {})\n", self.command, self.seed, &self.config_digest[..12]);
        for c in &self.checks {
            let status = match &c.status {
                Status::Pass => "PASS".to_string(),
                Status::Fail => "FAIL".to_string(),
                Status::Skipped(r) => format!("SKIP ({r})"),
            };
            let _ = writeln!(out, "  {status:<6} {}: {}", c.name, c.details);
        }
        let _ = writeln!(out, "{}", if self.passed() { "all checks passed" } else { "some checks failed" });
        out
    }
}
