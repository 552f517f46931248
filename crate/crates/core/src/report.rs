//! Pass/fail bookkeeping shared by the verification sweeps and the CLI.

use serde::{Deserialize, Serialize};

/// One verified formula or property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    /// Short name of the formula or property the check exercises.
    pub anchor: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckEntry {
    pub fn new(
        name: impl Into<String>,
        anchor: impl Into<String>,
        passed: bool,
        detail: impl Into<String>,
    ) -> Self {
        CheckEntry {
            name: name.into(),
            anchor: anchor.into(),
            passed,
            detail: detail.into(),
        }
    }

    /// Builds an entry from a list of failure messages; empty means pass.
    pub fn from_failures(
        name: impl Into<String>,
        anchor: impl Into<String>,
        checked: usize,
        failures: Vec<String>,
    ) -> Self {
        let passed = failures.is_empty();
        let detail = if passed {
            format!("{checked} cases")
        } else {
            let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
            format!(
                "{} of {checked} cases failed: {}",
                failures.len(),
                shown.join("; ")
            )
        };
        Self::new(name, anchor, passed, detail)
    }

    /// One aligned text line, `PASS name [anchor] detail`.
    pub fn line(&self) -> String {
        format!(
            "{} {} [{}] {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.anchor,
            self.detail
        )
    }
}

/// Ordered collection of checks.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub entries: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, entry: CheckEntry) {
        self.entries.push(entry);
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.entries.extend(other.entries);
    }

    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&e.line());
            out.push('\n');
        }
        out
    }
}

impl FromIterator<CheckEntry> for CheckReport {
    fn from_iter<I: IntoIterator<Item = CheckEntry>>(iter: I) -> Self {
        CheckReport {
            entries: iter.into_iter().collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failures_are_summarised() {
        let ok = CheckEntry::from_failures("a", "x", 3, vec![]);
        assert!(ok.passed);
        assert_eq!(ok.detail, "3 cases");
        let bad = CheckEntry::from_failures("b", "y", 4, vec!["one".into(), "two".into()]);
        assert!(!bad.passed);
        assert!(bad.line().starts_with("FAIL b [y] 2 of 4"));
        let report: CheckReport = vec![ok, bad].into_iter().collect();
        assert!(!report.all_passed());
        assert_eq!(report.failures().count(), 1);
    }
}
