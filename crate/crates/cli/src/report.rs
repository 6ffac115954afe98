use std::fmt::Write;
use std::time::Instant;

use serde::Serialize;
use serde_json::{Map, Value};

pub enum Outcome {
    Report(Box<RunReport>),
    Usage(String),
    BadGraph(String),
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub params: Map<String, Value>,
    pub trials: u64,
    pub failures: Vec<Value>,
    pub elapsed_ms: u64,
    pub seed: Option<u64>,
    pub notes: Vec<String>,
    /// Human-readable lines for the text report only.
    #[serde(skip)]
    pub details: Vec<String>,
    #[serde(skip)]
    started: Option<Instant>,
}

impl RunReport {
    pub fn start(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            params: Map::new(),
            trials: 0,
            failures: Vec::new(),
            elapsed_ms: 0,
            seed: None,
            notes: Vec::new(),
            details: Vec::new(),
            started: Some(Instant::now()),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn note(&mut self, note: &str) {
        if !self.notes.iter().any(|n| n == note) {
            self.notes.push(note.to_string());
        }
    }

    pub fn detail(&mut self, line: String) {
        self.details.push(line);
    }

    pub fn finish(mut self) -> Outcome {
        if let Some(t) = self.started.take() {
            self.elapsed_ms = t.elapsed().as_millis() as u64;
        }
        Outcome::Report(Box::new(self))
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        writeln!(out, "{} [{}]", self.command, params.join(" ")).unwrap();
        if let Some(seed) = self.seed {
            writeln!(out, "seed: {seed}").unwrap();
        }
        for line in &self.details {
            writeln!(out, "  {line}").unwrap();
        }
        for note in &self.notes {
            writeln!(out, "note: {note}").unwrap();
        }
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(
            out,
            "{verdict}: {} trial(s), {} failure(s), {} ms",
            self.trials,
            self.failures.len(),
            self.elapsed_ms
        )
        .unwrap();
        for f in &self.failures {
            writeln!(out, "  failure: {f}").unwrap();
        }
        out
    }
}
