use std::fmt::Write as _;

use serde::Serialize;

use crate::gcs::{Prop2Report, ValidationReport};
use crate::logic::{represent, PointSet, Universe};
use crate::revision::PostulateReport;

/// A proposition as printed in reports: the point set is authoritative,
/// the formula (over the declared atoms) is for reading.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prop {
    pub points: String,
    pub formula: Option<String>,
}

impl Prop {
    pub fn new(u: &Universe, set: PointSet) -> Prop {
        Prop { points: u.describe(set), formula: represent(set, u) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessOut {
    pub propositions: Vec<Prop>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub info: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessOut>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Check {
        Check { name: name.into(), holds: true, info: None, witness: None }
    }

    pub fn fail(name: impl Into<String>, witness: WitnessOut) -> Check {
        Check { name: name.into(), holds: false, info: None, witness: Some(witness) }
    }

    pub fn flag(name: impl Into<String>, holds: bool) -> Check {
        Check { name: name.into(), holds, info: None, witness: None }
    }

    pub fn with_info(mut self, info: impl Into<String>) -> Check {
        self.info = Some(info.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: impl Into<String>, notes: Vec<String>, checks: Vec<Check>) -> Report {
        let verdict = if checks.iter().all(|c| c.holds) { "pass" } else { "fail" };
        Report { command: command.into(), verdict, notes, checks }
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}: {}", self.command, self.verdict.to_uppercase());
        for note in &self.notes {
            let _ = writeln!(out, "  {note}");
        }
        for c in &self.checks {
            let _ = write!(out, "  [{}] {}", if c.holds { "ok" } else { "FAIL" }, c.name);
            if let Some(info) = &c.info {
                let _ = write!(out, " ({info})");
            }
            out.push('\n');
            if let Some(w) = &c.witness {
                for p in &w.propositions {
                    let _ = writeln!(out, "      at {} [{}]", p.points, p.formula.as_deref().unwrap_or("not expressible"));
                }
                let _ = writeln!(out, "      {}", w.detail);
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

pub fn witness(u: &Universe, sets: &[PointSet], detail: impl Into<String>) -> WitnessOut {
    WitnessOut { propositions: sets.iter().map(|&s| Prop::new(u, s)).collect(), detail: detail.into() }
}

pub fn postulate_checks(u: &Universe, report: &PostulateReport) -> Vec<Check> {
    report
        .verdicts
        .iter()
        .map(|v| match &v.witness {
            None => Check::pass(v.postulate.to_string()),
            Some(w) => Check::fail(v.postulate.to_string(), witness(u, &w.propositions, w.detail.clone())),
        })
        .collect()
}

pub fn prop2_checks(u: &Universe, report: &Prop2Report) -> Vec<Check> {
    report
        .findings
        .iter()
        .map(|f| {
            let name = match f.clause {
                Some(clause) => format!("clause {clause} at {} ({})", u.describe(f.event), f.family),
                None => format!("no clause at {} ({})", u.describe(f.event), f.family),
            };
            match &f.violation {
                Some(v) => Check::fail(name, witness(u, &[f.event], v.clone())),
                None => {
                    let check = Check::pass(name);
                    match f.added {
                        Some(added) => check.with_info(format!("E' = {}", u.describe(added))),
                        None => check,
                    }
                }
            }
        })
        .collect()
}

pub fn validation_checks(u: &Universe, report: &ValidationReport) -> Vec<Check> {
    use crate::gcs::Clause;
    [
        Clause::Families,
        Clause::Domain,
        Clause::InitialNonempty,
        Clause::RejectedKeepsInitial,
        Clause::CredibleSuccess,
        Clause::AllowablePossible,
    ]
    .into_iter()
    .map(|clause| {
        let name = format!("clause {clause}");
        match report.violations.iter().find(|v| v.clause == clause) {
            None => Check::pass(name),
            Some(v) => Check::fail(name, witness(u, &v.event.into_iter().collect::<Vec<_>>(), v.detail.clone())),
        }
    })
    .collect()
}
