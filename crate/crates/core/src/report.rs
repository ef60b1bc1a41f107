//! Verification reports.

use serde_json::{json, Value};

use crate::exactla::format_scalar;
use crate::graded::{BasisElement, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    /// Arity (or level) of the failing identity.
    pub n: usize,
    pub tuple: Vec<BasisElement>,
    pub residual: Vector,
    /// Which sub-identity failed, when an identity has several parts.
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub identity: String,
    pub passed: bool,
    pub first_failure: Option<Failure>,
    /// Every identity above this arity is vacuous for degree reasons.
    pub vacuity_bound: Option<usize>,
    /// Highest arity that was actually checked.
    pub checked_up_to: usize,
    pub notes: Vec<String>,
}

pub fn vector_json(v: &Vector) -> Value {
    let m: serde_json::Map<String, Value> = v
        .iter()
        .map(|(b, c)| (format!("{},{}", b.degree, b.index), Value::String(format_scalar(c))))
        .collect();
    Value::Object(m)
}

pub fn tuple_json(t: &[BasisElement]) -> Value {
    Value::Array(t.iter().map(|b| json!([b.degree, b.index])).collect())
}

impl Report {
    pub fn pass(identity: &str, checked_up_to: usize, vacuity_bound: Option<usize>) -> Self {
        Report {
            identity: identity.to_string(),
            passed: true,
            first_failure: None,
            vacuity_bound,
            checked_up_to,
            notes: Vec::new(),
        }
    }

    pub fn fail(identity: &str, failure: Failure, checked_up_to: usize, vacuity_bound: Option<usize>) -> Self {
        Report {
            identity: identity.to_string(),
            passed: false,
            first_failure: Some(failure),
            vacuity_bound,
            checked_up_to,
            notes: Vec::new(),
        }
    }

    /// Whether every non-vacuous arity was checked.
    pub fn complete(&self) -> bool {
        self.vacuity_bound.is_some_and(|b| self.checked_up_to >= b)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Combine several reports into one; the first failure wins.
    pub fn all(identity: &str, parts: Vec<Report>) -> Report {
        let checked = parts.iter().map(|r| r.checked_up_to).max().unwrap_or(0);
        let bound = parts.iter().map(|r| r.vacuity_bound).try_fold(0usize, |acc, b| b.map(|b| acc.max(b)));
        let mut notes: Vec<String> = parts.iter().flat_map(|r| r.notes.clone()).collect();
        let fail = parts.into_iter().find(|r| !r.passed);
        let mut out = match fail {
            Some(r) => {
                let mut f = r.first_failure.expect("failed report carries a failure");
                if f.detail.is_none() {
                    f.detail = Some(r.identity.clone());
                }
                Report::fail(identity, f, checked, bound)
            }
            None => Report::pass(identity, checked, bound),
        };
        out.notes.append(&mut notes);
        out
    }

    pub fn to_json(&self) -> Value {
        let ff = self.first_failure.as_ref().map(|f| {
            json!({
                "n": f.n,
                "tuple": tuple_json(&f.tuple),
                "residual": vector_json(&f.residual),
                "detail": f.detail,
            })
        });
        json!({
            "identity": self.identity,
            "status": if self.passed { "pass" } else { "fail" },
            "first_failure": ff,
            "vacuity_bound": self.vacuity_bound,
            "checked_up_to": self.checked_up_to,
            "complete": self.complete(),
            "notes": self.notes,
        })
    }

    pub fn summary(&self) -> String {
        let mut s = format!("{}: {}", self.identity, if self.passed { "pass" } else { "FAIL" });
        if let Some(f) = &self.first_failure {
            s.push_str(&format!(" at n={} on {:?}, residual {:?}", f.n, f.tuple, f.residual));
            if let Some(d) = &f.detail {
                s.push_str(&format!(" ({d})"));
            }
        }
        match self.vacuity_bound {
            Some(b) => s.push_str(&format!("; checked n<={}, vacuous above {b}", self.checked_up_to)),
            None => s.push_str(&format!("; checked n<={}, no finite vacuity bound", self.checked_up_to)),
        }
        for n in &self.notes {
            s.push_str(&format!("\n  note: {n}"));
        }
        s
    }
}
