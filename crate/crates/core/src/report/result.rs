//! Check outcomes and their JSON / markdown renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::anchors::anchor_group;
use super::config::{Format, SuiteConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Outcome of one check. `elapsed` is kept out of every report so that
/// reports are byte-stable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    /// Topic tag; see [`super::anchors::ANCHORS`].
    pub anchor: String,
    pub status: Status,
    /// `"0"` for a passing identity, otherwise an exact (or float with
    /// tolerance) rendering of the first nonzero residual.
    pub residual: String,
    pub details: String,
    /// A negative control passes when the corrupted input is rejected.
    pub negative_control: bool,
    /// Minimal failing instance, present whenever `status` is `fail`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CheckResult {
    pub fn new(id: &str, anchor: &str) -> Self {
        CheckResult {
            id: id.into(),
            anchor: anchor.into(),
            status: Status::Pass,
            residual: "0".into(),
            details: String::new(),
            negative_control: false,
            counterexample: None,
            elapsed: Duration::ZERO,
        }
    }

    pub fn pass(mut self, details: impl Into<String>) -> Self {
        self.status = Status::Pass;
        self.details = details.into();
        self
    }

    pub fn fail(mut self, residual: impl Into<String>, details: impl Into<String>, counterexample: Value) -> Self {
        self.status = Status::Fail;
        self.residual = residual.into();
        self.details = details.into();
        self.counterexample = Some(counterexample);
        self
    }

    pub fn skipped(mut self, reason: impl Into<String>) -> Self {
        self.status = Status::Skipped;
        self.residual = "-".into();
        self.details = reason.into();
        self
    }

    pub fn negative(mut self) -> Self {
        self.negative_control = true;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

pub fn summarize(results: &[CheckResult]) -> Summary {
    let mut s = Summary::default();
    for r in results {
        match r.status {
            Status::Pass => s.pass += 1,
            Status::Fail => s.fail += 1,
            Status::Skipped => s.skipped += 1,
        }
    }
    s
}

/// `0` when nothing failed, `1` otherwise.
pub fn exit_code(results: &[CheckResult]) -> i32 {
    i32::from(results.iter().any(|r| r.status == Status::Fail))
}

fn sorted(results: &[CheckResult]) -> Vec<&CheckResult> {
    let mut v: Vec<&CheckResult> = results.iter().collect();
    v.sort_by(|a, b| a.id.cmp(&b.id));
    v
}

/// The report document as JSON, checks sorted by id.
pub fn report_json(config: &SuiteConfig, results: &[CheckResult]) -> Value {
    json!({
        "suite": config.suite,
        "config": config,
        "checks": sorted(results),
        "summary": summarize(results),
    })
}

/// Reads back a document written by [`report_json`].
pub fn parse_report(doc: &Value) -> crate::error::Result<(SuiteConfig, Vec<CheckResult>)> {
    let bad = |what: &str, e: serde_json::Error| crate::error::Error::Parse(format!("report {what}: {e}"));
    let config = SuiteConfig::deserialize(doc.get("config").unwrap_or(&Value::Null)).map_err(|e| bad("config", e))?;
    let checks = Vec::<CheckResult>::deserialize(doc.get("checks").unwrap_or(&Value::Null)).map_err(|e| bad("checks", e))?;
    Ok((config, checks))
}

/// Renders the report; identical inputs give identical bytes.
pub fn emit_report(config: &SuiteConfig, results: &[CheckResult], format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report_json(config, results)).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Markdown => markdown(config, results),
    }
}

fn markdown(config: &SuiteConfig, results: &[CheckResult]) -> String {
    let mut groups: BTreeMap<&str, Vec<&CheckResult>> = BTreeMap::new();
    for r in sorted(results) {
        groups.entry(anchor_group(&r.anchor)).or_default().push(r);
    }
    let s = summarize(results);
    let mut out = String::new();
    let q = config.q_specialization.as_ref().map(|r| r.to_string()).unwrap_or_else(|| "none".into());
    let _ = writeln!(out, "# Verification report: suite `{}`\n", config.suite);
    let _ = writeln!(
        out,
        "N = {}, mode range = {}, points = {}, seed = {}, q = {}\n",
        config.n, config.mode_range, config.points, config.seed, q
    );
    let _ = writeln!(out, "**{} pass, {} fail, {} skipped**\n", s.pass, s.fail, s.skipped);
    for (group, rs) in groups {
        let _ = writeln!(out, "## {group}\n");
        let _ = writeln!(out, "| id | topic | status | residual | details |");
        let _ = writeln!(out, "|---|---|---|---|---|");
        for r in rs {
            let status = match (r.status, r.negative_control) {
                (Status::Pass, true) => "pass (control rejected)",
                (Status::Pass, false) => "pass",
                (Status::Fail, _) => "FAIL",
                (Status::Skipped, _) => "skipped",
            };
            let _ = writeln!(
                out,
                "| `{}` | {} | {} | `{}` | {} |",
                r.id,
                r.anchor,
                status,
                r.residual.replace('|', "\\|"),
                r.details.replace('|', "\\|")
            );
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_has_zero_summary() {
        let doc = report_json(&SuiteConfig::default(), &[]);
        assert_eq!(doc["summary"], json!({"pass": 0, "fail": 0, "skipped": 0}));
        assert_eq!(exit_code(&[]), 0);
    }

    #[test]
    fn failing_check_carries_exact_counterexample() {
        let r = CheckResult::new("lattice.jacobi", "lattice-jacobi").fail(
            "-3/7",
            "nonzero Jacobiator",
            json!({"triple": ["a_0", "b_1", "c_2"], "point": {"a_0": "2/3"}}),
        );
        let text = emit_report(&SuiteConfig::default(), &[r.clone()], Format::Json);
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(back["checks"][0]["residual"], "-3/7");
        assert_eq!(back["checks"][0]["counterexample"]["point"]["a_0"], "2/3");
        assert_eq!(back["summary"]["fail"], 1);
        assert_eq!(exit_code(&[r.clone()]), 1);
        let mut config = SuiteConfig::default();
        config.q_specialization = Some("3/2".parse().unwrap());
        let (c, rs) = parse_report(&report_json(&config, &[r.clone()])).unwrap();
        assert_eq!((c, rs), (config, vec![r]));
    }
}
