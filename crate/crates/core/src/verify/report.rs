use std::fmt::{Display, Write as _};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// `dim == det`
    Eq,
    /// `dim >= det`
    Geq,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Geq => ">=",
        }
    }
}

/// One checked instance. `dim` and `det` hold the two sides of the relation
/// (for identities between determinants or between dimensions, the left and
/// right hand sides), as decimal strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trial {
    pub id: u64,
    pub instance: Value,
    pub dim: String,
    pub det: String,
    pub formula: Option<String>,
    pub relation: Relation,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: u64,
    pub failed: u64,
    /// Generated instances that were discarded or inapplicable.
    pub skipped: u64,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub params: Value,
    pub seed: u64,
    pub trials: Vec<Trial>,
    pub summary: Summary,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Trial> {
        self.trials.iter().filter(|t| !t.pass)
    }

    /// Concatenates reports of several suites into one.
    pub fn combine(suite: &str, params: Value, seed: u64, parts: Vec<Report>) -> Report {
        let mut trials = Vec::new();
        let (mut skipped, mut elapsed) = (0, 0);
        for part in parts {
            skipped += part.summary.skipped;
            elapsed += part.summary.elapsed_ms;
            for mut t in part.trials {
                if let Value::Object(map) = &mut t.instance {
                    map.insert("suite".into(), Value::String(part.suite.clone()));
                }
                trials.push(t);
            }
        }
        for (i, t) in trials.iter_mut().enumerate() {
            t.id = i as u64;
        }
        let failed = trials.iter().filter(|t| !t.pass).count() as u64;
        Report {
            suite: suite.into(),
            params,
            seed,
            summary: Summary {
                total: trials.len() as u64,
                failed,
                skipped,
                elapsed_ms: elapsed,
            },
            trials,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,relation,dim,det,formula,pass,error,instance\n");
        for t in &self.trials {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                t.id,
                match t.relation {
                    Relation::Eq => "eq",
                    Relation::Geq => "geq",
                },
                csv_field(&t.dim),
                csv_field(&t.det),
                csv_field(t.formula.as_deref().unwrap_or("")),
                t.pass,
                csv_field(t.error.as_deref().unwrap_or("")),
                csv_field(&t.instance.to_string()),
            );
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in &self.trials {
            let status = if t.pass { "PASS" } else { "FAIL" };
            let _ = write!(
                out,
                "#{:<4} [{status}] {} {} {}",
                t.id,
                t.dim,
                t.relation.symbol(),
                t.det
            );
            if let Some(f) = &t.formula {
                let _ = write!(out, " (formula {f})");
            }
            if let Some(e) = &t.error {
                let _ = write!(out, " error: {e}");
            }
            let _ = writeln!(out, "  {}", t.instance);
        }
        let _ = writeln!(
            out,
            "suite {}: {} trials, {} failed, {} skipped, {} ms",
            self.suite,
            self.summary.total,
            self.summary.failed,
            self.summary.skipped,
            self.summary.elapsed_ms
        );
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Result of evaluating one job.
pub(crate) struct Outcome {
    pub dim: String,
    pub det: String,
    pub formula: Option<String>,
    pub pass: bool,
    /// Extra fields merged into the trial's instance record.
    pub notes: Vec<(&'static str, Value)>,
}

impl Outcome {
    pub fn compare<A: Display + PartialOrd<B>, B: Display>(
        relation: Relation,
        dim: &A,
        det: &B,
    ) -> Self {
        let pass = match relation {
            Relation::Eq => dim == det,
            Relation::Geq => dim >= det,
        };
        Outcome {
            dim: dim.to_string(),
            det: det.to_string(),
            formula: None,
            pass,
            notes: Vec::new(),
        }
    }

    pub fn formula(mut self, value: impl Display, agrees: bool) -> Self {
        self.formula = Some(value.to_string());
        self.pass &= agrees;
        self
    }

    pub fn require(mut self, cond: bool) -> Self {
        self.pass &= cond;
        self
    }

    pub fn note(mut self, key: &'static str, value: impl Into<Value>) -> Self {
        self.notes.push((key, value.into()));
        self
    }
}

type JobFn = Box<dyn Fn() -> Result<Outcome> + Send + Sync>;

/// A trial waiting to run: its description and the check itself.
pub(crate) struct Job {
    instance: Value,
    relation: Relation,
    run: JobFn,
}

impl Job {
    pub fn new(
        instance: Value,
        relation: Relation,
        run: impl Fn() -> Result<Outcome> + Send + Sync + 'static,
    ) -> Self {
        Job {
            instance,
            relation,
            run: Box::new(run),
        }
    }

    pub fn instance(&self) -> &Value {
        &self.instance
    }
}

/// Runs jobs in parallel and assembles the report in job order.
pub(crate) fn run_suite(
    suite: &str,
    params: Value,
    seed: u64,
    jobs: Vec<Job>,
    skipped: u64,
    started: Instant,
) -> Report {
    let trials: Vec<Trial> = jobs
        .into_par_iter()
        .enumerate()
        .map(|(id, job)| {
            let mut instance = job.instance;
            match (job.run)() {
                Ok(o) => {
                    if let Value::Object(map) = &mut instance {
                        for (k, v) in o.notes {
                            map.insert(k.to_string(), v);
                        }
                    }
                    Trial {
                        id: id as u64,
                        instance,
                        dim: o.dim,
                        det: o.det,
                        formula: o.formula,
                        relation: job.relation,
                        pass: o.pass,
                        error: None,
                    }
                }
                Err(e) => Trial {
                    id: id as u64,
                    instance,
                    dim: String::new(),
                    det: String::new(),
                    formula: None,
                    relation: job.relation,
                    pass: false,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    let failed = trials.iter().filter(|t| !t.pass).count() as u64;
    Report {
        suite: suite.into(),
        params,
        seed,
        summary: Summary {
            total: trials.len() as u64,
            failed,
            skipped,
            elapsed_ms: started.elapsed().as_millis() as u64,
        },
        trials,
    }
}
