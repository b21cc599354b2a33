//! Command output: titled sections of key/value lines followed by named
//! checks. Text output adds the elapsed time; the JSON form never does, so it
//! is byte-for-byte reproducible.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Undecided,
}

impl Status {
    fn tag(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Undecided => "undecided",
        }
    }
}

impl From<pargal_core::harrison::Status> for Status {
    fn from(s: pargal_core::harrison::Status) -> Self {
        use pargal_core::harrison::Status as S;
        match s {
            S::Pass => Status::Pass,
            S::Fail => Status::Fail,
            S::Undecided => Status::Undecided,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Item {
    pub key: String,
    pub value: String,
}

#[derive(Debug, Serialize)]
pub struct Section {
    pub title: String,
    pub items: Vec<Item>,
}

#[derive(Debug, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<String>,
    pub sections: Vec<Section>,
    pub checks: Vec<CheckLine>,
    pub verdict: Status,
    #[serde(skip)]
    pub written: Vec<String>,
}

impl Report {
    pub fn new(command: &str, inputs: Vec<String>) -> Self {
        Report {
            command: command.to_string(),
            inputs,
            sections: Vec::new(),
            checks: Vec::new(),
            verdict: Status::Pass,
            written: Vec::new(),
        }
    }

    pub fn section(&mut self, title: impl Into<String>) -> &mut Section {
        self.sections.push(Section {
            title: title.into(),
            items: Vec::new(),
        });
        self.sections.last_mut().expect("just pushed")
    }

    pub fn check(&mut self, name: impl Into<String>, status: Status, detail: Option<String>) {
        self.checks.push(CheckLine {
            name: name.into(),
            status,
            detail,
        });
    }

    /// A check that passes when `failure` is `None`.
    pub fn expect(&mut self, name: impl Into<String>, failure: Option<String>) {
        let status = if failure.is_some() { Status::Fail } else { Status::Pass };
        self.check(name, status, failure);
    }

    pub fn certificate(&mut self, prefix: &str, cert: &pargal_core::envelope::Certificate) {
        for c in &cert.checks {
            self.expect(format!("{prefix}{}", c.name), (!c.passed).then(|| c.detail.clone().unwrap_or_default()));
        }
    }

    /// Fail beats undecided beats pass.
    pub fn finish(&mut self) {
        let worst = |s: Status| self.checks.iter().any(|c| c.status == s);
        self.verdict = if worst(Status::Fail) {
            Status::Fail
        } else if worst(Status::Undecided) {
            Status::Undecided
        } else {
            Status::Pass
        };
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization") + "\n"
    }

    /// `argv` is echoed as the first line.
    pub fn to_text(&self, argv: &[String], elapsed: Duration) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "pargal {}", argv.join(" "));
        for s in &self.sections {
            let _ = writeln!(out, "\n{}", s.title);
            let width = s.items.iter().map(|i| i.key.chars().count()).max().unwrap_or(0);
            for i in &s.items {
                let pad = width - i.key.chars().count();
                let _ = writeln!(out, "  {}{} : {}", i.key, " ".repeat(pad), i.value);
            }
        }
        if !self.checks.is_empty() {
            out.push_str("\nchecks\n");
            for c in &self.checks {
                let _ = write!(out, "  [{}] {}", c.status.tag(), c.name);
                match &c.detail {
                    Some(d) if c.status != Status::Pass => {
                        let _ = write!(out, ": {d}");
                    }
                    _ => {}
                }
                out.push('\n');
            }
        }
        for w in &self.written {
            let _ = writeln!(out, "\nwrote {w}");
        }
        let count = |s: Status| self.checks.iter().filter(|c| c.status == s).count();
        let _ = writeln!(
            out,
            "\nverdict: {} ({} passed, {} failed, {} undecided)",
            self.verdict.tag(),
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Undecided)
        );
        let _ = writeln!(out, "time: {:.3} s", elapsed.as_secs_f64());
        out
    }
}

impl Section {
    pub fn item(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.items.push(Item {
            key: key.into(),
            value: value.to_string(),
        });
        self
    }
}
