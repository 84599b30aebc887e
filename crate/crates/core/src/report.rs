use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::flagx::ExtResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
    SkippedOpaque,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Indeterminate => "indeterminate",
            Status::SkippedOpaque => "skipped-opaque",
        }
    }

    /// Status of a vanishing claim. Only `Zero` passes.
    pub fn of_vanishing(e: &ExtResult) -> Self {
        match e {
            ExtResult::Zero => Status::Pass,
            ExtResult::Exact { .. } => Status::Fail,
            ExtResult::Bounded { .. } => Status::Indeterminate,
        }
    }

    pub fn of_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub status: Status,
    pub statement: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<serde_json::Value>,
}

impl Claim {
    pub fn new(id: impl Into<String>, statement: impl Into<String>, status: Status) -> Self {
        Self { id: id.into(), statement: statement.into(), status, detail: None }
    }

    pub fn with_detail(mut self, detail: serde_json::Value) -> Self {
        self.detail = Some(detail);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunInfo {
    #[serde(rename = "N")]
    pub big_n: usize,
    pub parity: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub indeterminate: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub run: RunInfo,
    pub claims: Vec<Claim>,
    pub summary: Summary,
}

impl Report {
    pub fn new(big_n: usize, parity: impl Into<String>, claims: Vec<Claim>) -> Self {
        let mut r = Self { run: RunInfo { big_n, parity: parity.into() }, claims, summary: Summary::default() };
        r.retally();
        r
    }

    pub fn retally(&mut self) {
        let mut s = Summary::default();
        for c in &self.claims {
            match c.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Indeterminate => s.indeterminate += 1,
                Status::SkippedOpaque => s.skipped += 1,
            }
        }
        self.summary = s;
    }

    pub fn extend(&mut self, other: Report) {
        self.claims.extend(other.claims);
        self.retally();
    }

    /// 0 all pass, 1 any fail, 2 indeterminate without failures.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail > 0 {
            1
        } else if self.summary.indeterminate > 0 {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            let _ = write!(out, "{:<14} {}  {}", c.status.as_str(), c.id, c.statement);
            if c.status != Status::Pass {
                if let Some(d) = &c.detail {
                    let _ = write!(out, "  {d}");
                }
            }
            out.push('\n');
        }
        let s = self.summary;
        let _ = writeln!(
            out,
            "N={} parity={}: {} pass, {} fail, {} indeterminate, {} skipped",
            self.run.big_n, self.run.parity, s.pass, s.fail, s.indeterminate, s.skipped
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bwb::GradedDims;

    #[test]
    fn empty_report() {
        let r = Report::new(0, "all", vec![]);
        assert_eq!(r.exit_code(), 0);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["claims"], serde_json::json!([]));
        assert_eq!(v["summary"]["pass"], 0);
        assert_eq!(v["run"]["N"], 0);
    }

    #[test]
    fn tally_and_exit_codes() {
        let mut r = Report::new(7, "odd", vec![Claim::new("a", "x", Status::Pass)]);
        r.extend(Report::new(7, "odd", vec![Claim::new("b", "y", Status::Indeterminate)]));
        assert_eq!(r.exit_code(), 2);
        r.extend(Report::new(7, "odd", vec![Claim::new("c", "z", Status::Fail)]));
        assert_eq!(r.exit_code(), 1);
        assert_eq!(r.summary, Summary { pass: 1, fail: 1, indeterminate: 1, skipped: 0 });
    }

    #[test]
    fn status_from_ext() {
        assert_eq!(Status::of_vanishing(&ExtResult::Zero), Status::Pass);
        let d = GradedDims::single(0, 1);
        assert_eq!(Status::of_vanishing(&ExtResult::Exact { dims: d.clone() }), Status::Fail);
        let b = ExtResult::Bounded { front: d.clone(), back: d };
        assert_eq!(Status::of_vanishing(&b), Status::Indeterminate);
    }

    #[test]
    fn json_roundtrip_with_detail() {
        let d = serde_json::to_value(ExtResult::Exact { dims: GradedDims::single(1, 3) }).unwrap();
        let r = Report::new(
            5,
            "odd",
            vec![
                Claim::new("van.6/N=5/a=0/b=-3", "Ext•(O(0h), O(-3H)) = 0", Status::Fail).with_detail(d),
                Claim::new("x", "s", Status::SkippedOpaque),
            ],
        );
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_json().contains("\"skipped-opaque\""));
    }
}
