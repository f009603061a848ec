//! Structured verification outcomes and their text and machine renderings.

use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

pub const SCHEMA: &str = "kappa-report/1";
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, PartialOrd, Ord, Hash)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The identity cannot be checked with the available data.
    Unverifiable,
    /// A computed value reported without judgment.
    Info,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Unverifiable => "unverifiable",
            Status::Info => "info",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Exact residual in the expression grammar ("0" on success).
    pub residual: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            status: Status::Pass,
            residual: "0".to_string(),
            certificate: None,
        }
    }

    pub fn fail(name: impl Into<String>, residual: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            status: Status::Fail,
            residual: residual.into(),
            certificate: None,
        }
    }

    /// Pass iff `residual` is the literal zero.
    pub fn from_residual(name: impl Into<String>, residual: String) -> Check {
        if residual == "0" {
            Check::pass(name)
        } else {
            Check::fail(name, residual)
        }
    }

    pub fn with_status(name: impl Into<String>, status: Status, residual: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            status,
            residual: residual.into(),
            certificate: None,
        }
    }

    pub fn certified(mut self, cert: impl Into<String>) -> Check {
        self.certificate = Some(cert.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema: String,
    pub suite: String,
    pub variant: String,
    pub metric: String,
    pub engine_version: String,
    pub degree_bound: usize,
    #[serde(default)]
    pub notes: Vec<String>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: &str, variant: &str, metric: &str, degree_bound: usize) -> Report {
        Report {
            schema: SCHEMA.to_string(),
            suite: suite.to_string(),
            variant: variant.to_string(),
            metric: metric.to_string(),
            engine_version: ENGINE_VERSION.to_string(),
            degree_bound,
            notes: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    /// Sorts checks by name for deterministic output.
    pub fn finish(mut self) -> Report {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
        self
    }

    /// Appends another report's checks under a name prefix.
    pub fn absorb(&mut self, other: Report) {
        for n in other.notes {
            if !self.notes.contains(&n) {
                self.notes.push(n);
            }
        }
        for mut c in other.checks {
            c.name = format!("{}/{}", other.suite, c.name);
            self.checks.push(c);
        }
    }

    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Fail).count()
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Pass).count()
    }

    pub fn all_pass(&self) -> bool {
        self.failed() == 0
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_machine(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_machine(text: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "suite {}  variant {}  metric {}  degree bound {}  engine {}",
            self.suite, self.variant, self.metric, self.degree_bound, self.engine_version
        );
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        let w = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(4).max(5);
        let _ = writeln!(out, "{:<w$}  {:<12}  residual", "check", "status");
        for c in &self.checks {
            let _ = write!(out, "{:<w$}  {:<12}  {}", c.name, c.status.as_str(), c.residual);
            if let Some(cert) = &c.certificate {
                let _ = write!(out, "  [{cert}]");
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "{} checks: {} pass, {} fail",
            self.checks.len(),
            self.passed(),
            self.failed()
        );
        out
    }
}
