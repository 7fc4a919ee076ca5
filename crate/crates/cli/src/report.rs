//! Command results and their text and JSON renderings.

use serde::Serialize;
use serde_json::{Map, Value};
use wgfam_core::{GroundSet, SetFamily, StateSet, VerificationReport};

use crate::format::{format_set, serialize_family};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessLine {
    pub set: Vec<String>,
    pub reason: String,
}

impl WitnessLine {
    pub fn new(ground: &GroundSet, set: &StateSet, reason: impl Into<String>) -> Self {
        WitnessLine {
            set: names(ground, set),
            reason: reason.into(),
        }
    }
}

/// The outcome of one command.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub verdict: bool,
    pub witnesses: Vec<WitnessLine>,
    /// Body printed in text mode after the verdict line, if any.
    pub text: String,
    /// Whether text mode starts with a `holds`/`fails` line.
    pub show_verdict: bool,
    /// Command-specific JSON fields.
    pub extra: Map<String, Value>,
    pub timing_ms: f64,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    verdict: bool,
    witnesses: &'a [WitnessLine],
    timing_ms: f64,
    #[serde(flatten)]
    extra: &'a Map<String, Value>,
}

impl Report {
    /// A successful command whose output is `text`.
    pub fn success(text: String) -> Self {
        Report {
            verdict: true,
            text,
            ..Report::default()
        }
    }

    /// A verdict with its witnesses.
    pub fn verification(ground: &GroundSet, report: &VerificationReport) -> Self {
        Report {
            verdict: report.verdict(),
            witnesses: report
                .witnesses()
                .iter()
                .map(|w| WitnessLine::new(ground, &w.set, w.reason.describe(ground)))
                .collect(),
            show_verdict: true,
            ..Report::default()
        }
    }

    /// A successful command that outputs a family.
    pub fn family(f: &SetFamily) -> Self {
        let mut report = Report::success(serialize_family(f));
        report.extra.insert("ground".into(), Value::from(f.ground().names().to_vec()));
        report.extra.insert("sets".into(), sets_value(f.ground(), f.sets()));
        report
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.extra.insert(key.into(), value.into());
        self
    }

    /// 0 when the property holds or the command succeeded, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        u8::from(!self.verdict)
    }

    /// The report as printed. With `timing` off, `timing_ms` is written as 0
    /// so repeated runs are byte-identical.
    pub fn render(&self, format: OutputFormat, timing: bool) -> String {
        match format {
            OutputFormat::Text => {
                let mut out = String::new();
                if self.show_verdict {
                    out.push_str(if self.verdict { "holds\n" } else { "fails\n" });
                }
                for w in &self.witnesses {
                    let set = format!("{{{}}}", w.set.join(" "));
                    out.push_str(&format!("witness {set}: {}\n", w.reason));
                }
                out.push_str(&self.text);
                out
            }
            OutputFormat::Json => {
                let json = JsonReport {
                    verdict: self.verdict,
                    witnesses: &self.witnesses,
                    timing_ms: if timing { self.timing_ms } else { 0.0 },
                    extra: &self.extra,
                };
                let mut s = serde_json::to_string_pretty(&json).expect("reports serialize");
                s.push('\n');
                s
            }
        }
    }
}

pub fn names(ground: &GroundSet, set: &StateSet) -> Vec<String> {
    ground.names_of(set).map(str::to_owned).collect()
}

pub fn sets_value(ground: &GroundSet, sets: &[StateSet]) -> Value {
    Value::from(sets.iter().map(|s| Value::from(names(ground, s))).collect::<Vec<_>>())
}

/// `{a b}` or `{}`.
pub fn braced(ground: &GroundSet, set: &StateSet) -> String {
    if set.is_empty() {
        "{}".into()
    } else {
        format!("{{{}}}", format_set(ground, set))
    }
}
