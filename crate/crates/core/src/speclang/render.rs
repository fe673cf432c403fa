//! Report rendering.
//!
//! Text mode prints a header line `PASS <name> (<n> laws, <m> assignments)`
//! (or `FAIL ...`), then one line per violated law with its witness, one
//! line per alarm and one per fact.
//!
//! Machine mode is line oriented. A line `key [` opens a nested record that
//! runs until a line `]`; every other line is `key=value`. Keys never contain
//! `=`, spaces or `[`; values escape `\` as `\\` and newline as `\n`. Leading
//! indentation is ignored by the reader. A check report looks like
//!
//! ```text
//! report [
//!   name=rdsa
//!   status=FAIL
//!   laws=12
//!   assignments=1234
//!   mode=exhaustive
//!   violation [
//!     law=rdsa.M
//!     witness [
//!       a=a
//!       b=b
//!     ]
//!   ]
//!   facts [
//!   ]
//! ]
//! ```
//!
//! with `alarm=<text>` lines after the violations. A roundtrip report is a
//! `roundtrip [` record with `name`, `status`, `iso`, a `sizes [` record and
//! the embedding `report [`. A verification summary is a `summary [` record
//! with `theorem`, `max_n`, `status`, `checked`, `failed`, `alarms` and one
//! `tally [` record per property.

use std::fmt::Write;
use std::str::FromStr;

use thiserror::Error;

use crate::enumerate::{Tally, VerificationSummary};
use crate::report::{CheckReport, DualityRoundtripReport, EvalMode, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Machine,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "machine" => Ok(Format::Machine),
            _ => Err(format!("unknown format `{s}` (expected text or machine)")),
        }
    }
}

/// Anything with a rendering in both formats.
pub enum Renderable<'a> {
    Check(&'a CheckReport),
    Roundtrip(&'a DualityRoundtripReport),
    Summary(&'a VerificationSummary),
}

pub fn render_report(r: Renderable<'_>, format: Format) -> String {
    match (r, format) {
        (Renderable::Check(c), Format::Text) => check_text(c),
        (Renderable::Check(c), Format::Machine) => {
            let mut w = Writer::default();
            check_machine(&mut w, c);
            w.out
        }
        (Renderable::Roundtrip(r), Format::Text) => roundtrip_text(r),
        (Renderable::Roundtrip(r), Format::Machine) => roundtrip_machine(r),
        (Renderable::Summary(s), Format::Text) => summary_text(s),
        (Renderable::Summary(s), Format::Machine) => summary_machine(s),
    }
}

fn status(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn witness_text(w: &[(String, String)]) -> String {
    if w.is_empty() {
        return String::new();
    }
    let parts: Vec<String> = w.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!(" witness {}", parts.join(" "))
}

fn check_text(r: &CheckReport) -> String {
    let mut out = String::new();
    let mode = match r.mode {
        EvalMode::Exhaustive => String::new(),
        m => format!(", {m}"),
    };
    let _ = writeln!(out, "{} {} ({} laws, {} assignments{mode})", status(r.passed()), r.name, r.laws, r.assignments);
    for v in &r.violations {
        let _ = writeln!(out, "FAIL {}{}", v.law, witness_text(&v.witness));
    }
    for a in &r.alarms {
        let _ = writeln!(out, "ALARM {a}");
    }
    for (k, v) in &r.facts {
        let _ = writeln!(out, "  {k}={v}");
    }
    out
}

fn roundtrip_text(r: &DualityRoundtripReport) -> String {
    let sizes: Vec<String> = r.sizes.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let mut out = format!("{} {} iso={} {}\n", status(r.passed()), r.name, r.iso, sizes.join(" "));
    out.push_str(&check_text(&r.embedding));
    out
}

fn summary_text(s: &VerificationSummary) -> String {
    let st = if s.alarms() > 0 { "ALARM" } else { status(s.failed() == 0) };
    let mut out = format!(
        "{st} {} max-n={} (checked={}, failed={}, alarms={})\n",
        s.theorem,
        s.max_n,
        s.checked(),
        s.failed(),
        s.alarms()
    );
    for t in &s.tallies {
        let _ = write!(out, "  {}: checked={} passed={} failed={}", t.property, t.checked, t.passed, t.failed);
        if t.undefined > 0 {
            let _ = write!(out, " undefined={}", t.undefined);
        }
        if t.alarms > 0 {
            let _ = write!(out, " alarms={}", t.alarms);
        }
        out.push('\n');
        if let Some(c) = &t.counterexample {
            let _ = writeln!(out, "    counterexample: {c}");
        }
        if let Some(n) = &t.note {
            let _ = writeln!(out, "    note: {n}");
        }
    }
    out
}

pub fn escape(v: &str) -> String {
    let mut out = String::with_capacity(v.len());
    for c in v.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out
}

pub fn unescape(v: &str) -> Result<String, MachineError> {
    let mut out = String::with_capacity(v.len());
    let mut chars = v.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('\\') => out.push('\\'),
            Some('n') => out.push('\n'),
            other => return Err(MachineError::BadEscape(format!("\\{}", other.map(String::from).unwrap_or_default()))),
        }
    }
    Ok(out)
}

#[derive(Default)]
struct Writer {
    out: String,
    depth: usize,
}

impl Writer {
    fn open(&mut self, key: &str) {
        let _ = writeln!(self.out, "{}{key} [", "  ".repeat(self.depth));
        self.depth += 1;
    }

    fn close(&mut self) {
        self.depth -= 1;
        let _ = writeln!(self.out, "{}]", "  ".repeat(self.depth));
    }

    fn value(&mut self, key: &str, v: impl ToString) {
        let _ = writeln!(self.out, "{}{key}={}", "  ".repeat(self.depth), escape(&v.to_string()));
    }
}

fn check_machine(w: &mut Writer, r: &CheckReport) {
    w.open("report");
    w.value("name", &r.name);
    w.value("status", status(r.passed()));
    w.value("laws", r.laws);
    w.value("assignments", r.assignments);
    w.value("mode", r.mode);
    for v in &r.violations {
        w.open("violation");
        w.value("law", &v.law);
        w.open("witness");
        for (k, x) in &v.witness {
            w.value(k, x);
        }
        w.close();
        w.close();
    }
    for a in &r.alarms {
        w.value("alarm", a);
    }
    w.open("facts");
    for (k, v) in &r.facts {
        w.value(k, v);
    }
    w.close();
    w.close();
}

fn roundtrip_machine(r: &DualityRoundtripReport) -> String {
    let mut w = Writer::default();
    w.open("roundtrip");
    w.value("name", &r.name);
    w.value("status", status(r.passed()));
    w.value("iso", r.iso);
    w.open("sizes");
    for (k, v) in &r.sizes {
        w.value(k, v);
    }
    w.close();
    check_machine(&mut w, &r.embedding);
    w.close();
    w.out
}

fn tally_machine(w: &mut Writer, t: &Tally) {
    w.open("tally");
    w.value("property", &t.property);
    w.value("checked", t.checked);
    w.value("passed", t.passed);
    w.value("failed", t.failed);
    w.value("undefined", t.undefined);
    w.value("alarms", t.alarms);
    if let Some(c) = &t.counterexample {
        w.value("counterexample", c);
    }
    if let Some(n) = &t.note {
        w.value("note", n);
    }
    w.close();
}

fn summary_machine(s: &VerificationSummary) -> String {
    let mut w = Writer::default();
    w.open("summary");
    w.value("theorem", &s.theorem);
    w.value("max_n", s.max_n);
    w.value("status", if s.alarms() > 0 { "ALARM" } else { status(s.failed() == 0) });
    w.value("checked", s.checked());
    w.value("failed", s.failed());
    w.value("alarms", s.alarms());
    for t in &s.tallies {
        tally_machine(&mut w, t);
    }
    w.close();
    w.out
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MachineError {
    #[error("line {0}: expected `key=value`, `key [` or `]`")]
    BadLine(usize),
    #[error("line {0}: `]` without an open record")]
    UnbalancedClose(usize),
    #[error("unclosed record `{0}`")]
    Unclosed(String),
    #[error("bad escape `{0}`")]
    BadEscape(String),
    #[error("missing or malformed field `{0}`")]
    Field(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Field {
    Value(String, String),
    Record(Record),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub key: String,
    pub fields: Vec<Field>,
}

impl Record {
    pub fn value(&self, key: &str) -> Option<&str> {
        self.fields.iter().find_map(|f| match f {
            Field::Value(k, v) if k == key => Some(v.as_str()),
            _ => None,
        })
    }

    pub fn values<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.fields.iter().filter_map(move |f| match f {
            Field::Value(k, v) if k == key => Some(v.as_str()),
            _ => None,
        })
    }

    pub fn records<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a Record> + 'a {
        self.fields.iter().filter_map(move |f| match f {
            Field::Record(r) if r.key == key => Some(r),
            _ => None,
        })
    }

    /// All `key=value` pairs in order.
    pub fn pairs(&self) -> Vec<(String, String)> {
        self.fields
            .iter()
            .filter_map(|f| match f {
                Field::Value(k, v) => Some((k.clone(), v.clone())),
                Field::Record(_) => None,
            })
            .collect()
    }
}

/// Reads machine-format output into top-level records.
pub fn parse_machine(text: &str) -> Result<Vec<Record>, MachineError> {
    let mut stack: Vec<Record> = vec![Record { key: String::new(), fields: vec![] }];
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim_start();
        if line.is_empty() {
            continue;
        }
        if line == "]" {
            if stack.len() < 2 {
                return Err(MachineError::UnbalancedClose(i + 1));
            }
            let done = stack.pop().expect("checked depth");
            stack.last_mut().expect("root").fields.push(Field::Record(done));
        } else if let Some((k, v)) = line.split_once('=') {
            if k.is_empty() || k.contains(' ') {
                return Err(MachineError::BadLine(i + 1));
            }
            stack.last_mut().expect("root").fields.push(Field::Value(k.to_string(), unescape(v)?));
        } else if let Some(k) = line.strip_suffix(" [") {
            if k.is_empty() || k.contains(' ') {
                return Err(MachineError::BadLine(i + 1));
            }
            stack.push(Record { key: k.to_string(), fields: vec![] });
        } else {
            return Err(MachineError::BadLine(i + 1));
        }
    }
    if stack.len() > 1 {
        return Err(MachineError::Unclosed(stack.pop().expect("nonempty").key));
    }
    Ok(stack.pop().expect("root").fields.into_iter().filter_map(|f| match f {
        Field::Record(r) => Some(r),
        Field::Value(..) => None,
    }).collect())
}

fn field<T: FromStr>(r: &Record, key: &str) -> Result<T, MachineError> {
    r.value(key).and_then(|v| v.parse().ok()).ok_or_else(|| MachineError::Field(key.to_string()))
}

/// Rebuilds a check report from its `report [` record.
pub fn check_report_from_record(r: &Record) -> Result<CheckReport, MachineError> {
    let mut out = CheckReport::new(r.value("name").ok_or_else(|| MachineError::Field("name".into()))?);
    out.laws = field(r, "laws")?;
    out.assignments = field(r, "assignments")?;
    out.mode = match r.value("mode") {
        Some("exhaustive") => EvalMode::Exhaustive,
        Some(m) => {
            let n = m
                .strip_prefix("sampled(")
                .and_then(|s| s.strip_suffix(')'))
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| MachineError::Field("mode".into()))?;
            EvalMode::Sampled { samples: n }
        }
        None => return Err(MachineError::Field("mode".into())),
    };
    for v in r.records("violation") {
        let law = v.value("law").ok_or_else(|| MachineError::Field("law".into()))?;
        let witness = v.records("witness").next().map(Record::pairs).unwrap_or_default();
        out.violations.push(Violation::new(law, witness));
    }
    out.alarms = r.values("alarm").map(String::from).collect();
    out.facts = r.records("facts").next().map(Record::pairs).unwrap_or_default();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> CheckReport {
        let mut r = CheckReport::new("rdsa");
        r.record("rdsa.stone", 16, None);
        r.record("rdsa.M", 16, Some(vec![("a".into(), "a".into()), ("b".into(), "b".into())]));
        r
    }

    #[test]
    fn text_fixtures() {
        let mut ok = CheckReport::new("monadic");
        ok.record("monadic.T", 4, None);
        ok.record("monadic.4", 4, None);
        assert_eq!(render_report(Renderable::Check(&ok), Format::Text), "PASS monadic (2 laws, 8 assignments)\n");
        let t = render_report(Renderable::Check(&sample()), Format::Text);
        assert_eq!(t, "FAIL rdsa (2 laws, 32 assignments)\nFAIL rdsa.M witness a=a b=b\n");
    }

    #[test]
    fn machine_roundtrip() {
        let mut r = sample();
        r.alarms.push("line one\nline two \\ end".into());
        r.fact("surjective", true);
        r.mode = EvalMode::Sampled { samples: 20000 };
        let text = render_report(Renderable::Check(&r), Format::Machine);
        let recs = parse_machine(&text).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(check_report_from_record(&recs[0]).unwrap(), r);
    }

    #[test]
    fn machine_reader_rejects_garbage() {
        assert_eq!(parse_machine("a [\n"), Err(MachineError::Unclosed("a".into())));
        assert_eq!(parse_machine("]\n"), Err(MachineError::UnbalancedClose(1)));
        assert_eq!(parse_machine("nothing here\n"), Err(MachineError::BadLine(1)));
        assert!(parse_machine("k=\\q\n").is_err());
    }
}
