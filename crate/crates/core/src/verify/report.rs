use serde::Serialize;

use crate::scalar::Scalar;

/// Relative slack for float comparisons.
pub const FLOAT_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass,
    /// Passed only thanks to the float slack.
    Marginal,
    Fail,
    /// Not run because a size cap would be exceeded.
    Skipped,
    /// Exploratory result; never counts as a failure.
    Info,
}

impl Status {
    pub fn is_failure(self) -> bool {
        self == Status::Fail
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Marginal => "marginal",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::Info => "info",
        }
    }
}

/// One offending object: a lift (by signing index), an edge pair, a
/// sample number, depending on the suite.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub index: u64,
    pub detail: String,
    pub value: String,
}

/// Outcome of one check: a lift scan, an identity, a bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanReport {
    pub suite: String,
    pub graph: String,
    pub model: String,
    pub claim: String,
    pub scanned: u64,
    pub exhaustive: bool,
    /// Value of the claimed extremal object (or the left-hand side).
    pub claimed_value: String,
    /// Largest competing value (or the right-hand side).
    pub max_other: String,
    pub margin: String,
    pub violations: Vec<Violation>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ScanReport {
    pub fn skipped(suite: &str, graph: &str, model: &str, claim: &str, why: String) -> ScanReport {
        ScanReport {
            suite: suite.into(),
            graph: graph.into(),
            model: model.into(),
            claim: claim.into(),
            scanned: 0,
            exhaustive: false,
            claimed_value: String::new(),
            max_other: String::new(),
            margin: String::new(),
            violations: vec![],
            status: Status::Skipped,
            note: Some(why),
        }
    }

    pub const CSV_HEADER: &'static str = "suite,graph,model,claim,scanned,exhaustive,margin,status";

    pub fn csv_row(&self) -> String {
        [
            csv_field(&self.suite),
            csv_field(&self.graph),
            csv_field(&self.model),
            csv_field(&self.claim),
            self.scanned.to_string(),
            self.exhaustive.to_string(),
            csv_field(&self.margin),
            self.status.as_str().to_string(),
        ]
        .join(",")
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Result of comparing a claimed maximum against a competitor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    Holds,
    WithinSlack,
    Violated,
}

/// `claimed >= other`: exact for exact scalars, with relative slack
/// [`FLOAT_SLACK`] for floats.
pub fn compare_ge(claimed: &Scalar, other: &Scalar) -> Comparison {
    match (claimed, other) {
        (Scalar::Exact(a), Scalar::Exact(b)) => {
            if a >= b {
                Comparison::Holds
            } else {
                Comparison::Violated
            }
        }
        _ => {
            let (a, b) = (claimed.to_f64(), other.to_f64());
            if a >= b {
                Comparison::Holds
            } else if b - a <= FLOAT_SLACK * a.abs().max(b.abs()) {
                Comparison::WithinSlack
            } else {
                Comparison::Violated
            }
        }
    }
}

/// `claimed − other`, promoting to float when the kinds differ.
pub fn difference(claimed: &Scalar, other: &Scalar) -> Scalar {
    if claimed.is_exact() && other.is_exact() {
        claimed - other
    } else {
        &claimed.to_float() - &other.to_float()
    }
}

/// Summary of one suite.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub reports: Vec<ScanReport>,
    pub checks: usize,
    pub failures: usize,
    pub marginal: usize,
    pub skipped: usize,
}

impl SuiteReport {
    pub fn new(name: &str, reports: Vec<ScanReport>) -> SuiteReport {
        let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
        SuiteReport {
            name: name.into(),
            checks: reports.len(),
            failures: count(Status::Fail),
            marginal: count(Status::Marginal),
            skipped: count(Status::Skipped),
            reports,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Everything `run_all` produced.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MasterReport {
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
    pub checks: usize,
    pub failures: usize,
    pub passed: bool,
}

impl MasterReport {
    pub fn new(seed: u64, suites: Vec<SuiteReport>) -> MasterReport {
        let checks = suites.iter().map(|s| s.checks).sum();
        let failures = suites.iter().map(|s| s.failures).sum();
        MasterReport { seed, suites, checks, failures, passed: failures == 0 }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(ScanReport::CSV_HEADER);
        out.push('\n');
        for r in self.suites.iter().flat_map(|s| &s.reports) {
            out.push_str(&r.csv_row());
            out.push('\n');
        }
        out
    }

    /// Human-readable summary, one line per suite plus every failure.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            out.push_str(&format!(
                "{:<12} {:>5} checks  {:>3} failed  {:>3} marginal  {:>3} skipped\n",
                s.name, s.checks, s.failures, s.marginal, s.skipped
            ));
            for r in s.reports.iter().filter(|r| r.status.is_failure()) {
                out.push_str(&format!(
                    "  FAIL {} {} {}: {} violation(s), first {:?}\n",
                    r.graph,
                    r.model,
                    r.claim,
                    r.violations.len(),
                    r.violations.first()
                ));
            }
        }
        out.push_str(&format!(
            "{}: {} checks, {} failures\n",
            if self.passed { "PASS" } else { "FAIL" },
            self.checks,
            self.failures
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comparisons() {
        assert_eq!(compare_ge(&Scalar::int(3), &Scalar::int(3)), Comparison::Holds);
        assert_eq!(compare_ge(&Scalar::int(3), &Scalar::ratio(7, 2)), Comparison::Violated);
        let a = Scalar::float(1.0);
        assert_eq!(compare_ge(&a, &Scalar::float(1.0 + 1e-12)), Comparison::WithinSlack);
        assert_eq!(compare_ge(&a, &Scalar::float(1.0 + 1e-6)), Comparison::Violated);
        assert_eq!(difference(&Scalar::int(2), &Scalar::float(0.5)), Scalar::float(1.5));
    }

    #[test]
    fn csv_quoting() {
        let mut r = ScanReport::skipped("lifts", "K3,3", "wr", "UnionMax", "cap".into());
        r.margin = "0".into();
        assert_eq!(r.csv_row(), "lifts,\"K3,3\",wr,UnionMax,0,false,0,skipped");
    }
}
