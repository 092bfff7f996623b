//! Violation reports produced by the validators and predicate checks.
//!
//! Every exhaustive axiom scan reports each failing instance as a
//! [`Violation`]: the name of the law plus the witness tuple of ids that
//! falsifies it. Reports are deterministic: scan orders are fixed and the
//! final listing is sorted by law and witness.

use std::collections::BTreeMap;
use std::fmt;

/// Cap on recorded witnesses per law; further failures are only counted.
/// Exhaustive scans can touch billions of tuples, so an unbounded list
/// would dominate memory on a thoroughly corrupted table.
pub const MAX_WITNESSES_PER_LAW: usize = 64;

/// One falsified axiom instance.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Violation {
    /// Name of the violated law, e.g. `associativity` or `+2:interchange`.
    pub law: String,
    /// The ids of the witnessing tuple, in the law's argument order.
    pub witness: Vec<String>,
    /// Human-readable detail (expected vs. found).
    pub detail: String,
}

impl Violation {
    pub fn new(law: &str, witness: Vec<String>, detail: impl Into<String>) -> Self {
        Violation {
            law: law.to_owned(),
            witness,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.law, self.witness.join(", "))?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

/// Outcome of one validation run: every violation found, per-law counts.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct ValidationReport {
    /// What was validated (used only for rendering).
    pub context: String,
    violations: Vec<Violation>,
    /// Total number of failures per law, including unrecorded ones.
    counts: BTreeMap<String, usize>,
}

impl ValidationReport {
    pub fn new(context: impl Into<String>) -> Self {
        ValidationReport {
            context: context.into(),
            ..Default::default()
        }
    }

    pub fn push(&mut self, v: Violation) {
        let n = self.counts.entry(v.law.clone()).or_insert(0);
        *n += 1;
        if *n <= MAX_WITNESSES_PER_LAW {
            self.violations.push(v);
        }
    }

    pub fn is_clean(&self) -> bool {
        self.counts.is_empty()
    }

    /// Total number of violations found, including unrecorded ones.
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// Recorded violations, sorted by law then witness.
    pub fn violations(&self) -> Vec<Violation> {
        let mut v = self.violations.clone();
        v.sort();
        v
    }

    /// Number of failures of one particular law.
    pub fn count_of(&self, law: &str) -> usize {
        self.counts.get(law).copied().unwrap_or(0)
    }

    pub fn merge(&mut self, other: ValidationReport) {
        // Recorded violations re-enter through push(); add only the surplus
        // that the other report had already suppressed.
        let mut recorded: BTreeMap<String, usize> = BTreeMap::new();
        for v in &other.violations {
            *recorded.entry(v.law.clone()).or_insert(0) += 1;
        }
        for v in other.violations {
            self.push(v);
        }
        for (law, n) in other.counts {
            let r = recorded.get(&law).copied().unwrap_or(0);
            if n > r {
                *self.counts.entry(law).or_insert(0) += n - r;
            }
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        if self.is_clean() {
            out.push_str(&format!("{}: pass\n", self.context));
            return out;
        }
        out.push_str(&format!(
            "{}: FAIL ({} violation(s))\n",
            self.context,
            self.total()
        ));
        for v in self.violations() {
            out.push_str(&format!("  {v}\n"));
        }
        for (law, n) in &self.counts {
            if *n > MAX_WITNESSES_PER_LAW {
                out.push_str(&format!(
                    "  {law}: {} further instance(s) not listed\n",
                    n - MAX_WITNESSES_PER_LAW
                ));
            }
        }
        out
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A named pass/fail line of a larger check (CLI reports, equivalence
/// reports).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Aggregate of check lines with an overall verdict.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct Report {
    pub title: String,
    pub checks: Vec<CheckLine>,
    pub witnesses: Vec<Violation>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            ..Default::default()
        }
    }

    pub fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(CheckLine {
            name: name.to_owned(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn witness(&mut self, v: Violation) {
        self.witnesses.push(v);
    }

    pub fn verdict(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{}: {}\n",
            self.title,
            if self.verdict() { "pass" } else { "FAIL" }
        ));
        for c in &self.checks {
            out.push_str(&format!(
                "  {} {}",
                if c.pass { "ok  " } else { "FAIL" },
                c.name
            ));
            if !c.detail.is_empty() {
                out.push_str(&format!(" ({})", c.detail));
            }
            out.push('\n');
        }
        let mut ws = self.witnesses.clone();
        ws.sort();
        for w in ws {
            out.push_str(&format!("  witness: {w}\n"));
        }
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
