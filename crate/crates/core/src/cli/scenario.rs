//! Scenario files: the JSON interchange format and its conversion into
//! domain values.
//!
//! An event key is the sorted, comma-joined list of member state ids; the
//! empty event has key `""`. Id lists inside the file are written in the
//! same sorted order by [`save_scenario`].

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gcs::{Gcs, GcsError};
use crate::logic::{AtomSet, LogicError, PointSet, Universe};
use crate::revision::{Credibility, CredibilityLabeling, PlausibilityOrder, RevisionError, RevisionTable};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub comments: Vec<String>,
    pub atoms: Vec<String>,
    pub states: Vec<StateSpec>,
    pub gcs: GcsSpec,
    /// Rank per state id, lower is more plausible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preorder: Option<BTreeMap<String, usize>>,
    /// Label overrides by event key, applied after the labels the families force.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labeling: Option<BTreeMap<String, Credibility>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<TableSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSpec {
    pub id: String,
    pub true_atoms: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GcsSpec {
    pub credible: Vec<Vec<String>>,
    pub allowable: Vec<Vec<String>>,
    pub rejected: Vec<Vec<String>>,
    pub f: BTreeMap<String, Vec<String>>,
}

/// A full revision table over the states: one entry per event key.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableSpec {
    pub initial: Vec<String>,
    pub entries: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("{field}: {message}")]
    Schema { field: String, message: String },
    #[error("{field}: unknown state id `{id}`")]
    DanglingId { field: String, id: String },
    #[error("{field}: event key `{key}` is not canonical; write `{suggestion}`")]
    EventKey { field: String, key: String, suggestion: String },
    #[error("{field}: {source}")]
    Logic { field: String, source: LogicError },
    #[error(transparent)]
    Gcs(#[from] GcsError),
    #[error("{field}: {source}")]
    Revision { field: String, source: RevisionError },
}

fn schema(field: impl Into<String>, message: impl Into<String>) -> ScenarioError {
    ScenarioError::Schema { field: field.into(), message: message.into() }
}

impl From<serde_json::Error> for ScenarioError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends " at line L column C"; keep only the message
        let message = message.split(" at line ").next().unwrap_or(&message).to_string();
        ScenarioError::Json { line: e.line(), column: e.column(), message }
    }
}

/// A scenario together with the domain values it denotes.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub scenario: Scenario,
    pub universe: Arc<Universe>,
    pub gcs: Gcs,
}

pub fn parse_scenario(text: &str) -> Result<Loaded, ScenarioError> {
    let scenario: Scenario = serde_json::from_str(text)?;
    Loaded::resolve(scenario)
}

pub fn load_scenario(path: &Path) -> Result<Loaded, ScenarioError> {
    let text =
        std::fs::read_to_string(path).map_err(|source| ScenarioError::Io { path: path.to_path_buf(), source })?;
    parse_scenario(&text)
}

/// Pretty JSON with a trailing newline.
pub fn scenario_to_string(s: &Scenario) -> String {
    let mut text = serde_json::to_string_pretty(s).expect("scenario serializes");
    text.push('\n');
    text
}

pub fn save_scenario(s: &Scenario, path: &Path) -> Result<(), ScenarioError> {
    std::fs::write(path, scenario_to_string(s)).map_err(|source| ScenarioError::Io { path: path.to_path_buf(), source })
}

impl Loaded {
    pub fn resolve(scenario: Scenario) -> Result<Loaded, ScenarioError> {
        if scenario.states.is_empty() {
            return Err(schema("states", "at least one state is required"));
        }
        let atoms = AtomSet::new(scenario.atoms.iter().map(String::as_str))
            .map_err(|source| ScenarioError::Logic { field: "atoms".into(), source })?;
        let states: Vec<(&str, Vec<&str>)> = scenario
            .states
            .iter()
            .map(|s| (s.id.as_str(), s.true_atoms.iter().map(String::as_str).collect()))
            .collect();
        let universe = Arc::new(
            Universe::from_true_atoms(atoms, &states)
                .map_err(|source| ScenarioError::Logic { field: "states".into(), source })?,
        );
        let lists = |name: &str, lists: &[Vec<String>]| -> Result<Vec<PointSet>, ScenarioError> {
            lists.iter().enumerate().map(|(i, ids)| id_list(&universe, &format!("gcs.{name}[{i}]"), ids)).collect()
        };
        let credible = lists("credible", &scenario.gcs.credible)?;
        let allowable = lists("allowable", &scenario.gcs.allowable)?;
        let rejected = lists("rejected", &scenario.gcs.rejected)?;
        let mut choice = Vec::new();
        for (key, ids) in &scenario.gcs.f {
            let e = event_key(&universe, "gcs.f", key)?;
            choice.push((e, id_list(&universe, &format!("gcs.f[\"{key}\"]"), ids)?));
        }
        let gcs = Gcs::new(universe.clone(), credible, allowable, rejected, choice)?;
        Ok(Loaded { scenario, universe, gcs })
    }

    pub fn preorder(&self) -> Result<Option<PlausibilityOrder>, ScenarioError> {
        let Some(ranks) = &self.scenario.preorder else { return Ok(None) };
        let mut by_point = vec![None; self.universe.len()];
        for (id, &rank) in ranks {
            let i = self.point(id, "preorder")?;
            by_point[i] = Some(rank);
        }
        let ranks = by_point
            .into_iter()
            .enumerate()
            .map(|(i, r)| r.ok_or_else(|| schema("preorder", format!("no rank for state `{}`", self.universe.points()[i].id))))
            .collect::<Result<Vec<_>, _>>()?;
        PlausibilityOrder::new(self.universe.clone(), ranks)
            .map(Some)
            .map_err(|source| ScenarioError::Revision { field: "preorder".into(), source })
    }

    /// Labels over the state propositions: forced by the families, then
    /// overridden, with `C` for the full set and `R` elsewhere by default.
    pub fn labeling(&self) -> Result<CredibilityLabeling, ScenarioError> {
        let mut overrides = BTreeMap::new();
        for (key, &label) in self.scenario.labeling.iter().flatten() {
            overrides.insert(event_key(&self.universe, "labeling", key)?, label);
        }
        CredibilityLabeling::from_fn(self.universe.clone(), |e| {
            overrides.get(&e).copied().or_else(|| self.gcs.family(e)).unwrap_or(if e.is_full() {
                Credibility::Credible
            } else {
                Credibility::Rejected
            })
        })
        .map_err(|source| ScenarioError::Revision { field: "labeling".into(), source })
    }

    pub fn table(&self) -> Result<Option<RevisionTable>, ScenarioError> {
        let Some(spec) = &self.scenario.table else { return Ok(None) };
        let u = &self.universe;
        let initial = id_list(u, "table.initial", &spec.initial)?;
        if u.len() > crate::revision::MAX_TABLE_POINTS {
            return Err(schema("table", "too many states for a full table"));
        }
        let mut entries: Vec<Option<PointSet>> = vec![None; 1 << u.len()];
        for (key, ids) in &spec.entries {
            let e = event_key(u, "table.entries", key)?;
            entries[e.index()] = Some(id_list(u, &format!("table.entries[\"{key}\"]"), ids)?);
        }
        let entries = entries
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                s.ok_or_else(|| {
                    schema("table.entries", format!("missing entry for event `{}`", u.event_key(PointSet::from_bits(i as u64, u.len()))))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        RevisionTable::new(u.clone(), initial, entries)
            .map(Some)
            .map_err(|source| ScenarioError::Revision { field: "table".into(), source })
    }

    fn point(&self, id: &str, field: &str) -> Result<usize, ScenarioError> {
        self.universe
            .point_index(id)
            .ok_or_else(|| ScenarioError::DanglingId { field: field.into(), id: id.into() })
    }
}

fn id_list(u: &Universe, field: &str, ids: &[String]) -> Result<PointSet, ScenarioError> {
    let mut set = u.empty();
    for id in ids {
        let i = u.point_index(id).ok_or_else(|| ScenarioError::DanglingId { field: field.into(), id: id.clone() })?;
        if set.contains(i) {
            return Err(schema(field, format!("state `{id}` listed twice")));
        }
        set.insert(i);
    }
    Ok(set)
}

/// Parses a canonical event key.
pub fn event_key(u: &Universe, field: &str, key: &str) -> Result<PointSet, ScenarioError> {
    if key.is_empty() {
        return Ok(u.empty());
    }
    let ids: Vec<String> = key.split(',').map(str::to_string).collect();
    let set = id_list(u, &format!("{field}[\"{key}\"]"), &ids)?;
    let canonical = u.event_key(set);
    if canonical != key {
        return Err(ScenarioError::EventKey { field: field.into(), key: key.into(), suggestion: canonical });
    }
    Ok(set)
}

/// Member ids in event-key order.
pub fn ids_of(u: &Universe, set: PointSet) -> Vec<String> {
    let key = u.event_key(set);
    if key.is_empty() {
        Vec::new()
    } else {
        key.split(',').map(str::to_string).collect()
    }
}

pub fn table_spec(t: &RevisionTable) -> TableSpec {
    let u = t.universe();
    TableSpec {
        initial: ids_of(u, t.initial()),
        entries: t.entries().map(|(e, b)| (u.event_key(e), ids_of(u, b))).collect(),
    }
}

/// Scenario for a structure; the universe's atoms and states are written
/// in declaration order.
pub fn scenario_of(g: &Gcs) -> Scenario {
    let u = g.universe();
    let fam = |set: &BTreeSet<PointSet>| set.iter().map(|&e| ids_of(u, e)).collect();
    Scenario {
        comments: Vec::new(),
        atoms: u.atoms().names().to_vec(),
        states: u
            .points()
            .iter()
            .map(|p| StateSpec {
                id: p.id.clone(),
                true_atoms: u.atoms().iter().enumerate().filter(|(a, _)| p.assignment >> a & 1 == 1).map(|(_, n)| n.to_string()).collect(),
            })
            .collect(),
        gcs: GcsSpec {
            credible: fam(g.credible()),
            allowable: fam(g.allowable()),
            rejected: fam(g.rejected()),
            f: g.choice_map().iter().map(|(&e, &fe)| (u.event_key(e), ids_of(u, fe))).collect(),
        },
        preorder: None,
        labeling: None,
        table: None,
    }
}

pub const DETECTIVE: &str = include_str!("../../scenarios/detective.json");
