use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

use super::config::{ConfigEcho, RunConfig};
use super::tally::Tally;
use crate::error::Result;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ConfirmedAtScale,
    Counterexample,
    Error,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::ConfirmedAtScale => 0,
            Verdict::Counterexample => 2,
            Verdict::Error => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Statistic {
    pub name: String,
    /// Exact rationals as `p/q`, floating values in shortest round-trip form.
    pub value: String,
}

/// Outcome of one run. Field order is the serialization order.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub config: ConfigEcho,
    pub trials_attempted: u64,
    pub trials_completed: u64,
    pub statistic: Statistic,
    pub bound: String,
    pub verdict: Verdict,
    pub counterexamples: u64,
    pub witnesses: Vec<String>,
    pub errors: BTreeMap<String, u64>,
    pub details: BTreeMap<String, Value>,
    #[serde(skip)]
    pub wall_clock: Duration,
    /// Human-readable lines shown in text mode only.
    #[serde(skip)]
    pub notes: Vec<String>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.verdict.exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        for line in &self.notes {
            let _ = writeln!(s, "{line}");
        }
        let _ = writeln!(
            s,
            "{}: {} (bound {})",
            self.statistic.name, self.statistic.value, self.bound
        );
        let _ = writeln!(
            s,
            "trials: {} attempted, {} completed",
            self.trials_attempted, self.trials_completed
        );
        for (k, v) in &self.details {
            let shown = match v {
                Value::String(t) => t.clone(),
                other => other.to_string(),
            };
            let _ = writeln!(s, "  {k}: {shown}");
        }
        for (k, v) in &self.errors {
            let _ = writeln!(s, "  error {k}: {v}");
        }
        if self.counterexamples > 0 {
            let _ = writeln!(s, "counterexamples: {}", self.counterexamples);
        }
        for w in &self.witnesses {
            let _ = writeln!(s, "  witness {w}");
        }
        let verdict = match self.verdict {
            Verdict::ConfirmedAtScale => "confirmed-at-scale",
            Verdict::Counterexample => "counterexample",
            Verdict::Error => "error",
        };
        let _ = writeln!(s, "verdict: {verdict}");
        let _ = writeln!(s, "wall-clock: {:.3}s", self.wall_clock.as_secs_f64());
        s
    }
}

/// Turns a merged tally into a report, writing witness files.
pub fn build_report(
    cfg: &RunConfig,
    tally: Tally,
    statistic: (&str, String),
    bound: String,
    mut details: BTreeMap<String, Value>,
) -> Result<Report> {
    for (k, v) in &tally.maxima {
        details.insert((*k).to_string(), Value::String(v.render()));
    }
    for (k, v) in &tally.counts {
        details.insert((*k).to_string(), Value::from(*v));
    }
    let mut witnesses = Vec::new();
    if !tally.witnesses.is_empty() {
        let dir = cfg.witness_dir();
        std::fs::create_dir_all(&dir)?;
        for w in &tally.witnesses {
            let path = dir.join(format!("{}-{}.txt", cfg.command.name(), w.stem));
            std::fs::write(&path, &w.text)?;
            witnesses.push(path_string(&path));
        }
    }
    let verdict = if !witnesses.is_empty() {
        Verdict::Counterexample
    } else if !tally.errors.is_empty() {
        Verdict::Error
    } else {
        Verdict::ConfirmedAtScale
    };
    Ok(Report {
        schema: SCHEMA_VERSION,
        command: cfg.command.name().to_string(),
        config: cfg.echo(),
        trials_attempted: tally.attempted,
        trials_completed: tally.completed,
        statistic: Statistic {
            name: statistic.0.to_string(),
            value: statistic.1,
        },
        bound,
        verdict,
        counterexamples: tally.counterexamples,
        witnesses,
        errors: tally.errors,
        details,
        wall_clock: Duration::ZERO,
        notes: Vec::new(),
    })
}

fn path_string(p: &Path) -> String {
    p.display().to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiment::config::Command;
    use crate::experiment::tally::Witness;

    fn cfg(dir: &Path) -> RunConfig {
        RunConfig {
            witness_dir: Some(dir.to_path_buf()),
            ..RunConfig::new(Command::ConjI)
        }
    }

    #[test]
    fn verdict_follows_witnesses_then_errors() {
        let dir = tempfile::tempdir().unwrap();
        let c = cfg(dir.path());
        let r = build_report(&c, Tally::default(), ("s", "0".into()), "1".into(), BTreeMap::new()).unwrap();
        assert_eq!(r.verdict, Verdict::ConfirmedAtScale);
        assert_eq!(r.exit_code(), 0);

        let mut t = Tally::default();
        t.error_named("x");
        let r = build_report(&c, t.clone(), ("s", "0".into()), "1".into(), BTreeMap::new()).unwrap();
        assert_eq!((r.verdict, r.exit_code()), (Verdict::Error, 1));

        t.counterexample(Witness { key: 7, stem: "trial-7".into(), text: "x1 = 1\n".into() });
        let r = build_report(&c, t, ("s", "0".into()), "1".into(), BTreeMap::new()).unwrap();
        assert_eq!((r.verdict, r.exit_code()), (Verdict::Counterexample, 2));
        assert_eq!(r.witnesses.len(), 1);
        assert_eq!(std::fs::read_to_string(&r.witnesses[0]).unwrap(), "x1 = 1\n");
    }

    #[test]
    fn json_field_order_is_fixed() {
        let dir = tempfile::tempdir().unwrap();
        let r = build_report(&cfg(dir.path()), Tally::default(), ("s", "0".into()), "1".into(), BTreeMap::new()).unwrap();
        let j = r.to_json();
        let keys = ["\"schema\"", "\"command\"", "\"config\"", "\"trials_attempted\"", "\"statistic\"", "\"verdict\"", "\"witnesses\"", "\"details\""];
        let pos: Vec<usize> = keys.iter().map(|k| j.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
        assert!(!j.contains("wall"));
        assert!(!j.contains("threads"));
    }
}
