//! Structured verification reports: per-claim, per-index outcomes.

use crate::rational::Rational;
use std::fmt::{self, Write as _};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail { expected: Rational, actual: Rational },
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub index: usize,
    pub outcome: Outcome,
}

/// One asserted identity checked at a range of indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub name: String,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl Claim {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn record(&mut self, index: usize, expected: Rational, actual: Rational) {
        let outcome = if expected == actual {
            Outcome::Pass
        } else {
            Outcome::Fail { expected, actual }
        };
        self.checks.push(Check { index, outcome });
    }

    pub fn skip(&mut self, index: usize, reason: impl Into<String>) {
        self.checks.push(Check {
            index,
            outcome: Outcome::Skipped(reason.into()),
        });
    }

    /// Compares two windows termwise from index `start`.
    pub fn compare(&mut self, start: usize, expected: &[Rational], actual: &[Rational]) {
        for (k, (e, a)) in expected.iter().zip(actual).enumerate() {
            self.record(start + k, e.clone(), a.clone());
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn passed(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks
            .iter()
            .find(|c| matches!(c.outcome, Outcome::Fail { .. }))
    }

    pub fn count(&self, pred: impl Fn(&Outcome) -> bool) -> usize {
        self.checks.iter().filter(|c| pred(&c.outcome)).count()
    }

    pub fn passes(&self) -> usize {
        self.count(|o| matches!(o, Outcome::Pass))
    }

    pub fn skips(&self) -> usize {
        self.count(|o| matches!(o, Outcome::Skipped(_)))
    }

    /// Indices checked before the first failure, as `(first, last)`.
    pub fn pass_window(&self) -> Option<(usize, usize)> {
        let first = self.checks.first()?.index;
        let mut last = None;
        for c in &self.checks {
            match c.outcome {
                Outcome::Fail { .. } => break,
                _ => last = Some(c.index),
            }
        }
        last.map(|l| (first, l))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureReport {
    pub conjecture: String,
    pub params: Vec<(String, Rational)>,
    pub claims: Vec<Claim>,
    pub notes: Vec<String>,
}

impl ConjectureReport {
    pub fn new(conjecture: impl Into<String>, params: Vec<(String, Rational)>) -> Self {
        Self {
            conjecture: conjecture.into(),
            params,
            claims: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, claim: Claim) {
        self.claims.push(claim);
    }

    pub fn claim(&self, name: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.name == name)
    }

    pub fn passed(&self) -> bool {
        self.claims.iter().all(Claim::passed)
    }

    /// First failing claim and check.
    pub fn first_failure(&self) -> Option<(&str, &Check)> {
        self.claims
            .iter()
            .find_map(|c| c.first_failure().map(|k| (c.name.as_str(), k)))
    }

    fn param_text(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Machine-readable `key=value` lines, one per check.
    pub fn to_records(&self) -> String {
        let mut out = String::new();
        let head = format!("conjecture={} {}", self.conjecture, self.param_text());
        for claim in &self.claims {
            for c in &claim.checks {
                let tail = match &c.outcome {
                    Outcome::Pass => "status=pass".to_string(),
                    Outcome::Fail { expected, actual } => {
                        format!("status=fail expected={expected} actual={actual}")
                    }
                    Outcome::Skipped(r) => format!("status=skip reason=\"{r}\""),
                };
                let _ = writeln!(out, "{} claim={} index={} {}", head.trim_end(), claim.name, c.index, tail);
            }
        }
        out
    }
}

impl fmt::Display for ConjectureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} [{}]", self.conjecture, self.param_text())?;
        for claim in &self.claims {
            let status = if claim.passed() { "PASS" } else { "FAIL" };
            let window = claim
                .pass_window()
                .map(|(a, b)| format!("{a}..={b}"))
                .unwrap_or_else(|| "-".into());
            write!(
                f,
                "  {status} {}: {} passed, {} skipped, window {window}",
                claim.name,
                claim.passes(),
                claim.skips()
            )?;
            if let Some(c) = claim.first_failure() {
                if let Outcome::Fail { expected, actual } = &c.outcome {
                    write!(f, "; first failure at {} (expected {expected}, got {actual})", c.index)?;
                }
            }
            writeln!(f)?;
            for n in &claim.notes {
                writeln!(f, "    note: {n}")?;
            }
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn failure_bookkeeping() {
        let mut c = Claim::new("demo");
        c.record(0, int(1), int(1));
        c.skip(1, "zero divisor");
        c.record(2, int(2), int(3));
        c.record(3, int(4), int(4));
        assert!(!c.passed());
        assert_eq!(c.first_failure().unwrap().index, 2);
        assert_eq!(c.pass_window(), Some((0, 1)));
        let mut r = ConjectureReport::new("demo", vec![("t".into(), int(1))]);
        r.push(c);
        assert_eq!(r.first_failure().unwrap().0, "demo");
        assert!(r.to_records().contains("index=2 status=fail expected=2 actual=3"));
        assert!(r.to_string().contains("FAIL demo"));
    }
}
