//! Text and JSON rendering, and the exit code policy.

use std::process::ExitCode;

use fibercone::corpus::{RunReport, Status};
use fibercone::{Error, RingRef};
use serde::Serialize;
use serde_json::{Map, Value};

/// A report plus the verdict; `false` maps to exit code 1.
pub type Outcome = Result<(Report, bool), Error>;

pub struct Report {
    input: Vec<(String, String)>,
    fields: Vec<(&'static str, Value, String)>,
    corpus: Option<RunReport>,
    falsified: bool,
}

impl Report {
    pub fn empty() -> Report {
        Report {
            input: Vec::new(),
            fields: Vec::new(),
            corpus: None,
            falsified: false,
        }
    }

    /// Starts a report whose input echoes the canonical ring.
    pub fn new(ring: &RingRef) -> Report {
        let mut r = Report::empty();
        r.input("ring", ring.vars().join(", "));
        r
    }

    pub fn input(&mut self, key: &str, value: String) {
        self.input.push((key.to_string(), value));
    }

    pub fn field(&mut self, key: &'static str, value: impl Serialize, text: String) {
        let v = serde_json::to_value(value).expect("report values serialize");
        self.fields.push((key, v, text));
    }

    fn to_json(&self) -> Value {
        if let Some(run) = &self.corpus {
            return serde_json::to_value(run).expect("run report serializes");
        }
        let mut out = Map::new();
        let input = self
            .input
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        out.insert("input".into(), Value::Object(input));
        for (k, v, _) in &self.fields {
            out.insert((*k).into(), v.clone());
        }
        Value::Object(out)
    }

    fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(run) = &self.corpus {
            for c in &run.cases {
                let tag = match c.status {
                    Status::Pass => "pass",
                    Status::Fail => "FAIL",
                    Status::Falsification => "FALSIFICATION",
                    Status::Error => "ERROR",
                };
                s.push_str(&format!("{tag:<13} {} ({} ms)\n", c.name, c.wall_ms));
                for ch in c.checks.iter().filter(|ch| !ch.ok) {
                    s.push_str(&format!(
                        "    {}: expected {}, computed {}\n",
                        ch.field, ch.expected, ch.computed
                    ));
                }
                if let Some(m) = &c.message {
                    if c.status != Status::Pass {
                        s.push_str(&format!("    {m}\n"));
                    }
                }
            }
            s.push_str(&format!(
                "{} passed, {} failed, {} falsifications, {} errors ({} ms)\n",
                run.passed, run.failed, run.falsifications, run.errors, run.wall_ms
            ));
            return s;
        }
        for (k, v) in &self.input {
            s.push_str(&format!("{k}: {v}\n"));
        }
        for (k, _, text) in &self.fields {
            s.push_str(&format!("{}: {text}\n", label(k)));
        }
        s
    }
}

pub fn corpus(run: RunReport) -> Report {
    Report {
        corpus: Some(run),
        ..Report::empty()
    }
}

pub fn corpus_falsified(run: RunReport) -> (Report, bool) {
    (
        Report {
            corpus: Some(run),
            falsified: true,
            ..Report::empty()
        },
        false,
    )
}

/// `analyticSpread` -> `analytic spread`, `isCM` -> `is CM`.
fn label(key: &str) -> String {
    let mut words: Vec<String> = Vec::new();
    let mut prev_lower = false;
    for ch in key.chars() {
        if ch.is_ascii_uppercase() && prev_lower {
            words.push(String::new());
        }
        words
            .last_mut()
            .map(|w| w.push(ch))
            .unwrap_or_else(|| words.push(ch.to_string()));
        prev_lower = ch.is_ascii_lowercase();
    }
    words
        .into_iter()
        .map(|w| {
            if w.chars().any(|c| c.is_ascii_lowercase()) {
                w.to_lowercase()
            } else {
                w
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn exit_code(err: &Error) -> u8 {
    if err.is_falsification() {
        4
    } else if err.is_budget() {
        3
    } else {
        2
    }
}

pub fn emit(outcome: Outcome, json: bool) -> ExitCode {
    match outcome {
        Ok((report, verdict)) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("json"));
            } else {
                print!("{}", report.to_text());
            }
            ExitCode::from(match (report.falsified, verdict) {
                (true, _) => 4,
                (false, true) => 0,
                (false, false) => 1,
            })
        }
        Err(err) => {
            let code = exit_code(&err);
            if json {
                let body = serde_json::json!({ "error": err.to_string(), "exitCode": code });
                println!("{}", serde_json::to_string_pretty(&body).expect("json"));
            }
            eprintln!("error: {err}");
            if code == 3 {
                eprintln!("hint: raise --max-n (or --grid-cap / --cell-budget) and retry");
            }
            ExitCode::from(code)
        }
    }
}
