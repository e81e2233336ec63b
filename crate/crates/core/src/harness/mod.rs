//! Seeded law suites with tri-state reports.

pub mod gen;
mod laws;
mod suites;

use std::fmt::Write;

use serde::Serialize;
use thiserror::Error;

pub use gen::Gen;
pub use suites::{hypothesis_violations, interval_square, run_suite, suite_names, SUITES};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenConfig {
    pub seed: u64,
    pub max_points: usize,
    pub max_degree: usize,
    pub instance_count: usize,
}

impl GenConfig {
    pub fn new(seed: u64) -> GenConfig {
        GenConfig { seed, max_points: 6, max_degree: 3, instance_count: 50 }
    }

    pub fn with_count(mut self, n: usize) -> GenConfig {
        self.instance_count = n;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    FailWithWitness,
    ExpectedFailConfirmed,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::FailWithWitness => "fail-with-witness",
            Status::ExpectedFailConfirmed => "expected-fail-confirmed",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LawReport {
    pub law: String,
    pub status: Status,
    pub instances: usize,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub config: GenConfig,
    pub laws: Vec<LawReport>,
}

impl SuiteReport {
    /// No law failed (expected failures that were confirmed count as success).
    pub fn ok(&self) -> bool {
        self.laws.iter().all(|l| l.status != Status::FailWithWitness)
    }

    pub fn law(&self, id: &str) -> Option<&LawReport> {
        self.laws.iter().find(|l| l.law == id)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite {} (seed {}, {} instances)", self.suite, self.config.seed, self.config.instance_count);
        for l in &self.laws {
            let _ = write!(out, "  {:<28} {:<24} n={}", l.law, l.status.label(), l.instances);
            if !l.detail.is_empty() {
                let _ = write!(out, "  {}", l.detail);
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("reports serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}`")]
    Unknown(String),
}

/// What a failing instance looked like.
#[derive(Debug, Clone)]
pub struct Failure {
    pub detail: String,
    pub witness: Option<serde_json::Value>,
}

impl Failure {
    pub fn new(detail: impl Into<String>) -> Failure {
        Failure { detail: detail.into(), witness: None }
    }

    pub fn with(detail: impl Into<String>, witness: serde_json::Value) -> Failure {
        Failure { detail: detail.into(), witness: Some(witness) }
    }
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure::new(e.to_string())
    }
}

/// A law that must hold on every instance.
pub(crate) fn holds<I>(law: &str, instances: &[I], check: impl Fn(&I) -> Result<(), Failure>) -> LawReport {
    for (k, inst) in instances.iter().enumerate() {
        if let Err(f) = check(inst) {
            return LawReport {
                law: law.into(),
                status: Status::FailWithWitness,
                instances: instances.len(),
                detail: format!("instance {k}: {}", f.detail),
                witness: f.witness,
            };
        }
    }
    LawReport { law: law.into(), status: Status::Pass, instances: instances.len(), detail: String::new(), witness: None }
}

/// A law that has to fail on every instance; `check` returns the failure witness, or `None`
/// when the law unexpectedly holds.
pub(crate) fn fails<I>(
    law: &str,
    instances: &[I],
    check: impl Fn(&I) -> Result<Option<Failure>, Failure>,
) -> LawReport {
    let mut first = None;
    for (k, inst) in instances.iter().enumerate() {
        match check(inst) {
            Ok(Some(f)) => {
                first.get_or_insert(f);
            }
            Ok(None) => {
                return LawReport {
                    law: law.into(),
                    status: Status::FailWithWitness,
                    instances: instances.len(),
                    detail: format!("instance {k}: expected failure not observed"),
                    witness: None,
                }
            }
            Err(f) => {
                return LawReport {
                    law: law.into(),
                    status: Status::FailWithWitness,
                    instances: instances.len(),
                    detail: format!("instance {k}: {}", f.detail),
                    witness: f.witness,
                }
            }
        }
    }
    let f = first.unwrap_or_else(|| Failure::new("no instances"));
    let status = if instances.is_empty() { Status::FailWithWitness } else { Status::ExpectedFailConfirmed };
    LawReport { law: law.into(), status, instances: instances.len(), detail: f.detail, witness: f.witness }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tri_state_helpers() {
        let xs = [1, 2, 3];
        assert_eq!(holds("pos", &xs, |&x| if x > 0 { Ok(()) } else { Err(Failure::new("neg")) }).status, Status::Pass);
        let r = holds("small", &xs, |&x| if x < 3 { Ok(()) } else { Err(Failure::new("big")) });
        assert_eq!(r.status, Status::FailWithWitness);
        assert!(r.detail.contains("instance 2"));
        let r = fails("never", &xs, |&x| Ok(Some(Failure::new(format!("saw {x}")))));
        assert_eq!(r.status, Status::ExpectedFailConfirmed);
        assert_eq!(r.detail, "saw 1");
        let r = fails("sometimes", &xs, |&x| Ok((x != 2).then(|| Failure::new("x"))));
        assert_eq!(r.status, Status::FailWithWitness);
    }
}
