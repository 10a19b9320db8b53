//! Check records and the `CHECK <name> <indices> PASS|FAIL <lhs> <rhs>` report.

use std::fmt;

use crate::exact::scalar::to_pq;
use crate::exact::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub indices: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl Check {
    pub fn eq(name: &str, indices: impl Into<String>, lhs: &Scalar, rhs: &Scalar) -> Self {
        Check {
            name: name.to_string(),
            indices: indices.into(),
            lhs: to_pq(lhs),
            rhs: to_pq(rhs),
            pass: lhs == rhs,
        }
    }

    /// A check whose two sides are not scalars (vectors, statuses).
    pub fn text(name: &str, indices: impl Into<String>, lhs: impl Into<String>, rhs: impl Into<String>, pass: bool) -> Self {
        Check { name: name.to_string(), indices: indices.into(), lhs: lhs.into(), rhs: rhs.into(), pass }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        let indices = if self.indices.is_empty() { "-" } else { &self.indices };
        write!(f, "CHECK {} {} {} {} {}", self.name, indices, status, self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
    /// Extra `key value` lines for the summary block.
    pub notes: Vec<(String, String)>,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report { suite: suite.to_string(), ..Default::default() }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = Check>) {
        self.checks.extend(cs);
    }

    pub fn note(&mut self, key: &str, value: impl Into<String>) {
        self.notes.push((key.to_string(), value.into()));
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        writeln!(f, "SUMMARY BEGIN")?;
        writeln!(f, "suite {}", self.suite)?;
        writeln!(f, "checks {}", self.checks.len())?;
        writeln!(f, "passed {}", self.passed())?;
        writeln!(f, "failed {}", self.failed())?;
        for (k, v) in &self.notes {
            writeln!(f, "{k} {v}")?;
        }
        writeln!(f, "status {}", if self.all_passed() { "PASS" } else { "FAIL" })?;
        write!(f, "SUMMARY END")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::int;

    #[test]
    fn check_line_format() {
        let c = Check::eq("gamma", "3,-3", &int(-3), &int(-3));
        assert_eq!(c.to_string(), "CHECK gamma 3,-3 PASS -3/1 -3/1");
        let mut r = Report::new("demo");
        r.push(c);
        r.push(Check::eq("gamma", "2,5", &int(1), &int(0)));
        assert_eq!(r.failed(), 1);
        assert!(r.to_string().contains("status FAIL"));
    }
}
