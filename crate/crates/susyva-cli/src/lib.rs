//! Library half of the `susyva` command: configuration, verification suites and
//! report formatting.

pub mod commands;
pub mod config;
pub mod golden;
pub mod suites;

use std::fmt;

use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Engine(#[from] susyva::Error),
}

impl CliError {
    /// Exit status: 2 for usage and configuration problems, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => 2,
            CliError::Engine(susyva::Error::Parse(_)) => 2,
            CliError::Engine(_) => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of one suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub status: Status,
    pub reason: Option<String>,
    pub checks: Vec<CheckLine>,
}

impl SuiteReport {
    pub fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.to_string(), status: Status::Pass, reason: None, checks: Vec::new() }
    }

    pub fn skipped(suite: &str, reason: impl Into<String>) -> Self {
        SuiteReport { status: Status::Skipped, reason: Some(reason.into()), ..Self::new(suite) }
    }

    pub fn failed(suite: &str, reason: impl Into<String>) -> Self {
        SuiteReport { status: Status::Fail, reason: Some(reason.into()), ..Self::new(suite) }
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, lhs: impl fmt::Display, rhs: impl fmt::Display) {
        self.checks.push(CheckLine { name: name.into(), passed, lhs: lhs.to_string(), rhs: rhs.to_string() });
        if !passed {
            self.status = Status::Fail;
        }
    }

    pub fn absorb(&mut self, r: susyva::opecalc::Report) {
        for c in r.checks {
            self.push(c.name, c.passed, c.lhs, c.rhs);
        }
    }

    pub fn prefixed(&mut self, prefix: &str, r: susyva::opecalc::Report) {
        for c in r.checks {
            self.push(format!("{prefix}: {}", c.name), c.passed, c.lhs, c.rhs);
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn first_failure(&self) -> Option<&CheckLine> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "== {} {} ({} checks)", self.suite, self.status, self.checks.len())?;
        if let Some(r) = &self.reason {
            write!(f, ": {r}")?;
        }
        writeln!(f)?;
        for c in &self.checks {
            if c.passed {
                writeln!(f, "PASS {}", c.name)?;
            } else {
                writeln!(f, "FAIL {}\n  lhs: {}\n  rhs: {}", c.name, c.lhs, c.rhs)?;
            }
        }
        Ok(())
    }
}

/// All suite reports of one `verify` run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
    pub first_failure: Option<CheckLine>,
}

impl VerifyReport {
    pub fn new(suites: Vec<SuiteReport>) -> Self {
        let first_failure = suites.iter().find_map(|s| {
            s.first_failure().cloned().or_else(|| {
                (s.status == Status::Fail).then(|| CheckLine {
                    name: s.suite.clone(),
                    passed: false,
                    lhs: s.reason.clone().unwrap_or_default(),
                    rhs: String::new(),
                })
            })
        });
        VerifyReport { passed: suites.iter().all(SuiteReport::passed), suites, first_failure }
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            write!(f, "{s}")?;
        }
        if let Some(c) = &self.first_failure {
            writeln!(f, "first failure: {}\n  lhs: {}\n  rhs: {}", c.name, c.lhs, c.rhs)?;
        }
        writeln!(f, "overall {}", if self.passed { Status::Pass } else { Status::Fail })
    }
}
