//! Check lists with text and JSON renderings.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: String,
    pub values: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

impl Check {
    pub fn new(name: impl Into<String>, holds: bool, details: impl Into<String>, values: Value) -> Self {
        Check {
            name: name.into(),
            status: if holds { Status::Pass } else { Status::Fail },
            details: details.into(),
            values,
            millis: None,
        }
    }

    pub fn skipped(name: impl Into<String>, details: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Skipped, details: details.into(), values: Value::Null, millis: None }
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn with_millis(mut self, start: Instant) -> Self {
        self.millis = Some(start.elapsed().as_millis() as u64);
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), checks: Vec::new(), notes: Vec::new() }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = Check>) {
        self.checks.extend(cs);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn summary(&self) -> Summary {
        let count = |s| self.checks.iter().filter(|c| c.status == s).count();
        Summary { pass: count(Status::Pass), fail: count(Status::Fail), skipped: count(Status::Skipped) }
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.failed())
    }

    pub fn strip_timings(&mut self) {
        for c in &mut self.checks {
            c.millis = None;
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{}", self.title).unwrap();
        let width = self.checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0);
        for c in &self.checks {
            let pad = width - c.name.chars().count();
            write!(out, "{}  {}{}  {}", c.status.label(), c.name, " ".repeat(pad), c.details).unwrap();
            if let Some(ms) = c.millis {
                write!(out, " ({ms} ms)").unwrap();
            }
            out.push('\n');
        }
        for n in &self.notes {
            writeln!(out, "note: {n}").unwrap();
        }
        let s = self.summary();
        writeln!(out, "{} passed, {} failed, {} skipped", s.pass, s.fail, s.skipped).unwrap();
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            #[serde(flatten)]
            report: &'a Report,
            summary: Summary,
        }
        let mut s = serde_json::to_string_pretty(&Out { report: self, summary: self.summary() }).expect("serializable");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_follows_failures() {
        let mut r = Report::new("t");
        r.push(Check::new("a", true, "", Value::Null));
        r.push(Check::skipped("b", "not requested"));
        assert_eq!(r.exit_code(), 0);
        r.push(Check::new("c", false, "3/8 != 1/8", Value::Null));
        assert_eq!(r.exit_code(), 1);
        let text = r.to_text();
        assert!(text.contains("FAIL  c"));
        assert!(text.ends_with("1 passed, 1 failed, 1 skipped\n"));
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["summary"]["fail"], 1);
        assert_eq!(v["checks"][1]["status"], "skipped");
        assert!(v["checks"][0].get("millis").is_none());
    }
}
